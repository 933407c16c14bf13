#include "rlnc/cli/sweep.hpp"

#include "rlnc/cli/rows.hpp"
#include "rlnc/field.hpp"
#include "rlnc/sim.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>

namespace rlnc::cli {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, std::size_t line)
{
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw SweepSpecError(line, "expected a number, got '" + s + "'");
  return v;
}

std::int64_t to_int(const std::string& s, std::size_t line)
{
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw SweepSpecError(line, "expected an integer, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& s, std::size_t line)
{
  if (s == "true" || s == "yes" || s == "1")
    return true;
  if (s == "false" || s == "no" || s == "0")
    return false;
  throw SweepSpecError(line, "expected true or false, got '" + s + "'");
}

SweepAxis to_axis(const std::string& s, std::size_t line)
{
  if (s == "epsilon")
    return SweepAxis::Epsilon;
  if (s == "Omega" || s == "omega")
    return SweepAxis::Omega;
  if (s == "K")
    return SweepAxis::K;
  if (s == "q")
    return SweepAxis::Q;
  throw SweepSpecError(line, "unknown axis '" + s + "' (expected epsilon, Omega, K or q)");
}

bool integer_axis(SweepAxis a)
{
  return a != SweepAxis::Epsilon;
}

void check_value(SweepAxis axis, double v, std::size_t line)
{
  switch (axis) {
    case SweepAxis::Epsilon:
      if (!(v >= 0.0 && v <= 1.0))
        throw SweepSpecError(line, "epsilon value out of [0, 1]");
      break;
    case SweepAxis::Omega:
      if (v < 0)
        throw SweepSpecError(line, "Omega value must be >= 0");
      break;
    case SweepAxis::K:
      if (v < 1)
        throw SweepSpecError(line, "K value must be >= 1");
      break;
    case SweepAxis::Q:
      if (v < 2)
        throw SweepSpecError(line, "q value must be >= 2");
      break;
  }
}

}  // namespace

SweepSpecError::SweepSpecError(std::size_t line, const std::string& what)
  : std::runtime_error("sweep spec line " + std::to_string(line) + ": " + what)
  , line_(line)
{}

SweepSpec parse_sweep_spec(std::istream& in)
{
  SweepSpec spec;
  std::optional<SweepAxis> axis;
  std::size_t axis_line = 0;
  struct PendingValues
  {
    std::string kind;
    std::string text;
    std::size_t line;
  };
  std::vector<PendingValues> pending;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw SweepSpecError(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (value.empty())
      throw SweepSpecError(line, "empty value for '" + key + "'");

    if (key == "axis") {
      if (axis)
        throw SweepSpecError(line, "axis given more than once");
      axis = to_axis(value, line);
      axis_line = line;
    } else if (key == "values" || key == "range" || key == "point") {
      pending.push_back({key, value, line});
    } else if (key == "K") {
      spec.fixed.K = static_cast<int>(to_int(value, line));
      if (spec.fixed.K < 1)
        throw SweepSpecError(line, "K must be >= 1");
    } else if (key == "q") {
      const auto q = to_int(value, line);
      if (q < 2)
        throw SweepSpecError(line, "q must be >= 2");
      spec.fixed.q = static_cast<std::uint64_t>(q);
    } else if (key == "Omega" || key == "omega") {
      spec.fixed.Omega = static_cast<int>(to_int(value, line));
      if (spec.fixed.Omega < 0)
        throw SweepSpecError(line, "Omega must be >= 0");
    } else if (key == "epsilon") {
      spec.epsilon = to_double(value, line);
      check_value(SweepAxis::Epsilon, spec.epsilon, line);
    } else if (key == "schemes") {
      spec.schemes.clear();
      for (const auto& s : split(value, ',')) {
        try {
          spec.schemes.push_back(parse_scheme(s));
        } catch (const std::invalid_argument& e) {
          throw SweepSpecError(line, e.what());
        }
      }
    } else if (key == "simulate") {
      spec.simulate = to_bool(value, line);
    } else if (key == "generations") {
      const auto g = to_int(value, line);
      if (g < 1)
        throw SweepSpecError(line, "generations must be >= 1");
      spec.generations = static_cast<std::uint64_t>(g);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(to_int(value, line));
    } else {
      throw SweepSpecError(line, "unknown key '" + key + "'");
    }
  }

  if (!axis)
    throw SweepSpecError(line, "missing 'axis' directive");
  spec.axis = *axis;
  if (pending.empty())
    throw SweepSpecError(axis_line, "no axis values (use values, range or point)");

  const std::string kind = pending.front().kind;
  for (const auto& p : pending) {
    if (p.kind != kind || (kind != "point" && &p != &pending.front()))
      throw SweepSpecError(p.line, "axis values given more than once");
    const std::size_t first_new = spec.points.size();
    if (kind == "values") {
      for (const auto& v : split(p.text, ','))
        spec.points.push_back({integer_axis(spec.axis) ? static_cast<double>(to_int(v, p.line)) : to_double(v, p.line), {}});
    } else if (kind == "range") {
      const auto parts = split(p.text, ':');
      if (parts.size() != 3)
        throw SweepSpecError(p.line, "range must be start:stop:step");
      const double start = to_double(parts[0], p.line);
      const double stop = to_double(parts[1], p.line);
      const double step = to_double(parts[2], p.line);
      if (!(step > 0.0) || stop < start)
        throw SweepSpecError(p.line, "range needs step > 0 and stop >= start");
      const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (long i = 0; i < count; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (integer_axis(spec.axis))
          v = std::round(v);
        spec.points.push_back({v, {}});
      }
    } else {
      if (spec.axis != SweepAxis::Epsilon)
        throw SweepSpecError(p.line, "point lines require axis = epsilon");
      const auto sp = p.text.find_last_of(" \t");
      if (sp == std::string::npos)
        throw SweepSpecError(p.line, "point must be '<label> <epsilon>'");
      spec.points.push_back({to_double(trim(p.text.substr(sp + 1)), p.line), trim(p.text.substr(0, sp))});
    }
    for (std::size_t i = first_new; i < spec.points.size(); ++i)
      check_value(spec.axis, spec.points[i].value, p.line);
  }
  if (spec.points.empty())
    throw SweepSpecError(pending.front().line, "axis values are empty");
  if (spec.schemes.empty())
    throw SweepSpecError(line, "no schemes selected");
  return spec;
}

report::ResultTable run_sweep(const SweepSpec& spec, unsigned threads)
{
  report::ResultTable table(report::summary_columns());
  for (const auto& point : spec.points) {
    for (Scheme scheme : spec.schemes) {
      CodeConfig cfg = spec.fixed;
      cfg.scheme = scheme;
      ChannelSpec ch{spec.epsilon};
      switch (spec.axis) {
        case SweepAxis::Epsilon: ch.epsilon = point.value; break;
        case SweepAxis::Omega: cfg.Omega = static_cast<int>(point.value); break;
        case SweepAxis::K: cfg.K = static_cast<int>(point.value); break;
        case SweepAxis::Q: cfg.q = static_cast<std::uint64_t>(point.value); break;
      }
      add_theory_summary(table, cfg, ch, point.label);
      if (spec.simulate) {
        const FieldSpec field = FieldSpec::of_order(cfg.q);
        sim::SimOptions opts;
        opts.threads = threads;
        const auto res = sim::run_campaign(cfg, ch, field, spec.generations, spec.seed, opts);
        add_simulation_summary(table, cfg, ch, res, std::int64_t{0}, point.label);
      }
    }
  }
  return table;
}

}  // namespace rlnc::cli

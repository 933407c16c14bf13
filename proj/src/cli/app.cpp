#include "rlnc/cli/app.hpp"

#include "rlnc/cli/figures.hpp"
#include "rlnc/cli/rows.hpp"
#include "rlnc/cli/sweep.hpp"
#include "rlnc/field.hpp"
#include "rlnc/sim.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace rlnc::cli {

namespace {

struct CommonFlags
{
  int K = 0;
  std::uint64_t q = 2;
  double epsilon = 0.0;
  int omega_max = 0;
  std::string scheme = "both";
  std::string out;
  std::string format = "csv";
};

struct SimFlags
{
  std::uint64_t generations = 10000;
  std::uint64_t seed = 1;
  int receivers = 1;
  std::vector<double> receiver_epsilons;
  unsigned threads = 1;
  bool distribution = false;
  bool with_theory = false;
};

unsigned default_threads()
{
  if (const char* env = std::getenv("RLNC_DELAY_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1)
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void add_common(CLI::App* cmd, CommonFlags& f)
{
  cmd->add_option("--K", f.K, "Generation size")->required();
  cmd->add_option("--q", f.q, "Field order")->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "Packet erasure probability")->required();
  cmd->add_option("--omega-max", f.omega_max, "Permissible overhead Omega (deadline N = K + Omega)")->required();
  cmd->add_option("--scheme", f.scheme, "nonsys, sys or both")->capture_default_str();
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--format", f.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
}

std::vector<Scheme> schemes_from(const std::string& s)
{
  if (s == "both")
    return {Scheme::NonSystematic, Scheme::Systematic};
  return {parse_scheme(s)};
}

void emit(const report::ResultTable& t, const std::string& format, std::ostream& out)
{
  if (format == "json")
    t.write_json(out);
  else
    t.write_csv(out);
}

void emit_to(const report::ResultTable& t, const std::string& format, const std::string& path, std::ostream& out)
{
  if (path.empty()) {
    emit(t, format, out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::invalid_argument("cannot open output file '" + path + "'");
  emit(t, format, file);
  if (!file)
    throw std::runtime_error("failed writing '" + path + "'");
}

CodeConfig config_from(const CommonFlags& f, Scheme s)
{
  CodeConfig cfg{f.K, f.omega_max, f.q, s};
  cfg.validate();
  return cfg;
}

void cmd_theory(const CommonFlags& f, bool distribution, bool oracle, std::ostream& out)
{
  const ChannelSpec ch{f.epsilon};
  ch.validate();
  report::ResultTable t(distribution ? report::distribution_columns() : report::summary_columns());
  for (Scheme s : schemes_from(f.scheme)) {
    const CodeConfig cfg = config_from(f, s);
    if (distribution) {
      add_theory_distribution(t, cfg, ch);
      if (oracle)
        add_oracle_distribution(t, cfg, ch);
    } else {
      add_theory_summary(t, cfg, ch);
      if (oracle)
        add_oracle_summary(t, cfg, ch);
    }
  }
  emit_to(t, f.format, f.out, out);
}

void cmd_simulate(const CommonFlags& f, const SimFlags& s, std::ostream& out)
{
  if (s.generations < 1)
    throw std::invalid_argument("--generations must be >= 1");
  if (s.receivers < 1)
    throw std::invalid_argument("--receivers must be >= 1");
  const FieldSpec field = FieldSpec::of_order(f.q);

  std::vector<ChannelSpec> channels;
  if (!s.receiver_epsilons.empty()) {
    for (double e : s.receiver_epsilons)
      channels.push_back({e});
  } else {
    channels.assign(static_cast<std::size_t>(s.receivers), ChannelSpec{f.epsilon});
  }
  for (const auto& ch : channels)
    ch.validate();
  ChannelSpec{f.epsilon}.validate();

  sim::SimOptions opts;
  opts.threads = s.threads;
  report::ResultTable t(s.distribution ? report::distribution_columns() : report::summary_columns());
  for (Scheme scheme : schemes_from(f.scheme)) {
    const CodeConfig cfg = config_from(f, scheme);
    const auto res = sim::run_multi_receiver(cfg, channels, field, s.generations, s.seed, opts);
    for (std::size_t r = 0; r < channels.size(); ++r) {
      const report::Cell tag = static_cast<std::int64_t>(r);
      if (s.distribution) {
        add_simulation_distribution(t, cfg, channels[r], res.receivers[r], tag);
      } else {
        if (s.with_theory)
          add_theory_summary(t, cfg, channels[r]);
        add_simulation_summary(t, cfg, channels[r], res.receivers[r], tag);
      }
    }
    if (channels.size() > 1) {
      bool same = true;
      for (const auto& ch : channels)
        same = same && ch.epsilon == channels.front().epsilon;
      const ChannelSpec sys_ch{same ? channels.front().epsilon : std::numeric_limits<double>::quiet_NaN()};
      if (s.distribution)
        add_simulation_distribution(t, cfg, sys_ch, res.system, std::string("system"));
      else
        add_simulation_summary(t, cfg, sys_ch, res.system, std::string("system"));
    }
  }
  emit_to(t, f.format, f.out, out);
}

void cmd_figure(const std::string& name, const FigureOptions& opts, const std::string& out_dir,
                const std::string& format, std::ostream& out)
{
  const auto panels = make_figure(name, opts);
  std::filesystem::create_directories(out_dir);
  for (const auto& p : panels) {
    const auto path = (std::filesystem::path(out_dir) / (p.name + "." + format)).string();
    emit_to(p.table, format, path, out);
    out << path << '\n';
  }
}

void cmd_sweep(const std::string& spec_path, unsigned threads, const std::string& out_path, const std::string& format,
               std::ostream& out)
{
  std::ifstream in(spec_path);
  if (!in)
    throw std::invalid_argument("cannot open sweep spec '" + spec_path + "'");
  const SweepSpec spec = parse_sweep_spec(in);
  emit_to(run_sweep(spec, threads), format, out_path, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Delay and outage statistics of deadline-constrained random linear network coding", "rlnc-delay"};
  app.require_subcommand(1);

  CommonFlags theory_flags;
  bool distribution = false;
  bool oracle = false;
  auto* theory = app.add_subcommand("theory", "Closed-form overhead law, outage, average transmissions and bounds");
  add_common(theory, theory_flags);
  theory->add_flag("--distribution", distribution, "Emit the per-omega pmf/cdf table instead of summaries");
  theory->add_flag("--oracle", oracle, "Add rows from the Markov-chain oracle");

  CommonFlags sim_common;
  SimFlags sim_flags;
  sim_flags.threads = default_threads();
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo campaign");
  add_common(simulate, sim_common);
  simulate->add_option("--generations", sim_flags.generations, "Generations to simulate")->capture_default_str();
  simulate->add_option("--seed", sim_flags.seed, "Master seed")->capture_default_str();
  simulate->add_option("--receivers", sim_flags.receivers, "Receivers sharing --epsilon")->capture_default_str();
  simulate->add_option("--receiver-epsilons", sim_flags.receiver_epsilons, "Per-receiver erasure probabilities")
    ->delimiter(',');
  simulate->add_option("--threads", sim_flags.threads, "Worker threads (default: RLNC_DELAY_THREADS or 1)");
  simulate->add_flag("--distribution", sim_flags.distribution, "Emit empirical pmf/cdf tables");
  simulate->add_flag("--with-theory", sim_flags.with_theory, "Interleave theory rows");

  std::string figure_name;
  std::string figure_dir = ".";
  std::string figure_format = "csv";
  FigureOptions figure_opts;
  figure_opts.threads = default_threads();
  auto* figure = app.add_subcommand("figure", "Write the data behind one figure, one file per panel");
  figure->add_option("name", figure_name, "fig2, fig3, fig4, fig5 or fig6")->required();
  figure->add_option("--out-dir", figure_dir, "Output directory")->capture_default_str();
  figure->add_option("--format", figure_format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  figure->add_option("--K", figure_opts.K, "Override generation sizes")->delimiter(',');
  figure->add_option("--q", figure_opts.q, "Override field orders")->delimiter(',');
  figure->add_option("--epsilon", figure_opts.epsilon, "Override erasure probabilities")->delimiter(',');
  figure->add_option("--N", figure_opts.N, "Override deadlines (fig4)")->delimiter(',');
  figure->add_option("--generations", figure_opts.generations, "Simulated generations per point (fig4)")->capture_default_str();
  figure->add_option("--seed", figure_opts.seed, "Master seed (fig4)")->capture_default_str();
  figure->add_option("--threads", figure_opts.threads, "Worker threads");

  std::string sweep_path;
  std::string sweep_out;
  std::string sweep_format = "csv";
  unsigned sweep_threads = default_threads();
  auto* sweep = app.add_subcommand("sweep", "Evaluate a sweep spec file");
  sweep->add_option("spec", sweep_path, "Sweep spec file")->required();
  sweep->add_option("--out", sweep_out, "Output file (default: stdout)");
  sweep->add_option("--format", sweep_format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--threads", sweep_threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*theory)
      cmd_theory(theory_flags, distribution, oracle, out);
    else if (*simulate)
      cmd_simulate(sim_common, sim_flags, out);
    else if (*figure)
      cmd_figure(figure_name, figure_opts, figure_dir, figure_format, out);
    else if (*sweep)
      cmd_sweep(sweep_path, sweep_threads, sweep_out, sweep_format, out);
  } catch (const SweepSpecError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace rlnc::cli

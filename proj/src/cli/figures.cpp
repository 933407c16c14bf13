#include "rlnc/cli/figures.hpp"

#include "rlnc/field.hpp"
#include "rlnc/sim.hpp"
#include "rlnc/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace rlnc::cli {

namespace {

using report::ResultTable;

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback)
{
  return given.empty() ? fallback : given;
}

std::vector<double> epsilon_grid(double stop, double step)
{
  std::vector<double> out;
  const int count = static_cast<int>(std::lround(stop / step));
  for (int i = 0; i <= count; ++i)
    out.push_back(std::round(i * step * 1e12) / 1e12);
  return out;
}

std::string panel_name(const char* fig, std::size_t index, std::size_t total)
{
  return total == 1 ? std::string(fig) : std::string(fig) + static_cast<char>('a' + index);
}

std::vector<FigurePanel> fig2(const FigureOptions& o)
{
  const auto Ks = or_default(o.K, {30});
  std::vector<std::uint64_t> qs = o.q;
  if (qs.empty()) {
    for (std::uint64_t q = 2; q <= 256; ++q)
      qs.push_back(q);
  }
  ResultTable t({"q", "K", "tight_bound", "lucani_first", "lucani_second", "source"});
  for (int K : Ks) {
    for (auto q : qs) {
      const auto b = theory::bound_brackets(q, K);
      t.add_row()
        .set("q", static_cast<std::int64_t>(q))
        .set("K", std::int64_t{K})
        .set("tight_bound", b.tight)
        .set("lucani_first", b.lucani_first)
        .set("lucani_second", b.lucani_second)
        .set("source", std::string("bound"));
    }
  }
  return {{"fig2", std::move(t)}};
}

std::vector<FigurePanel> fig3(const FigureOptions& o)
{
  const auto qs = or_default<std::uint64_t>(o.q, {2, 4});
  const auto Ks = or_default(o.K, {20, 25, 30});
  const auto eps = or_default(o.epsilon, epsilon_grid(0.6, 0.05));
  std::vector<FigurePanel> panels;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    ResultTable t({"q", "K", "epsilon", "lower_bound", "upper_bound", "delay_nonsys", "delay_sys", "source"});
    for (int K : Ks) {
      for (double e : eps) {
        if (e >= 1.0)
          continue;
        const auto b = theory::decoding_delay_bounds(qs[i], K, e);
        CodeConfig cfg{K, 0, qs[i], Scheme::NonSystematic};
        const double ns = theory::avg_decoding_delay(cfg, {e}, 1e-12);
        cfg.scheme = Scheme::Systematic;
        const double s = theory::avg_decoding_delay(cfg, {e}, 1e-12);
        t.add_row()
          .set("q", static_cast<std::int64_t>(qs[i]))
          .set("K", std::int64_t{K})
          .set("epsilon", e)
          .set("lower_bound", b.lower)
          .set("upper_bound", b.upper)
          .set("delay_nonsys", ns)
          .set("delay_sys", s)
          .set("source", std::string("theory"));
      }
    }
    panels.push_back({panel_name("fig3", i, qs.size()), std::move(t)});
  }
  return panels;
}

std::vector<FigurePanel> fig4(const FigureOptions& o)
{
  const auto qs = or_default<std::uint64_t>(o.q, {2, 4});
  const auto Ks = or_default(o.K, {30});
  const auto Ns = or_default(o.N, {36, 40, 45});
  const auto eps = or_default(o.epsilon, epsilon_grid(0.5, 0.05));
  std::vector<FigurePanel> panels;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const FieldSpec field = FieldSpec::of_order(qs[i]);
    ResultTable t({"q", "K", "N", "epsilon", "scheme", "theory_avg_transmissions", "theory_outage", "upper_bound",
                   "sim_avg_transmissions", "sim_std_error", "sim_outage", "generations", "seed"});
    for (int K : Ks) {
      for (int N : Ns) {
        if (N < K)
          throw std::invalid_argument("fig4 needs N >= K");
        for (double e : eps) {
          for (Scheme scheme : {Scheme::NonSystematic, Scheme::Systematic}) {
            const CodeConfig cfg{K, N - K, qs[i], scheme};
            const auto s = theory::avg_transmissions(cfg, {e});
            sim::SimOptions opts;
            opts.threads = o.threads;
            const auto r = sim::run_campaign(cfg, {e}, field, o.generations, o.seed, opts);
            auto row = t.add_row();
            row.set("q", static_cast<std::int64_t>(qs[i]))
              .set("K", std::int64_t{K})
              .set("N", std::int64_t{N})
              .set("epsilon", e)
              .set("scheme", std::string(to_string(scheme)))
              .set("theory_avg_transmissions", s.avg_transmissions)
              .set("theory_outage", s.outage)
              .set("sim_avg_transmissions", r.empirical_avg_transmissions)
              .set("sim_std_error", r.std_error)
              .set("sim_outage", r.empirical_outage)
              .set("generations", static_cast<std::int64_t>(r.generations))
              .set("seed", static_cast<std::int64_t>(r.master_seed));
            if (e < 1.0)
              row.set("upper_bound", s.upper_bound);
          }
        }
      }
    }
    panels.push_back({panel_name("fig4", i, qs.size()), std::move(t)});
  }
  return panels;
}

std::vector<FigurePanel> fig5(const FigureOptions& o)
{
  const auto qs = or_default<std::uint64_t>(o.q, {2, 4});
  std::vector<int> Ks = o.K;
  if (Ks.empty()) {
    for (int K = 10; K <= 30; ++K)
      Ks.push_back(K);
  }
  const auto eps = or_default(o.epsilon, {0.1});
  std::vector<FigurePanel> panels;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    ResultTable t({"q", "K", "N", "epsilon", "avg_nonsys", "avg_sys", "gap", "source"});
    for (double e : eps) {
      for (int K : Ks) {
        const int N = (3 * K) / 2;
        CodeConfig cfg{K, N - K, qs[i], Scheme::NonSystematic};
        const double ns = theory::avg_transmissions(cfg, {e}).avg_transmissions;
        cfg.scheme = Scheme::Systematic;
        const double s = theory::avg_transmissions(cfg, {e}).avg_transmissions;
        t.add_row()
          .set("q", static_cast<std::int64_t>(qs[i]))
          .set("K", std::int64_t{K})
          .set("N", std::int64_t{N})
          .set("epsilon", e)
          .set("avg_nonsys", ns)
          .set("avg_sys", s)
          .set("gap", ns - s)
          .set("source", std::string("theory"));
      }
    }
    panels.push_back({panel_name("fig5", i, qs.size()), std::move(t)});
  }
  return panels;
}

std::vector<FigurePanel> fig6(const FigureOptions& o)
{
  const auto qs = or_default<std::uint64_t>(o.q, {2, 4, 16});
  const auto Ks = or_default(o.K, {20, 60, 100});
  const auto eps = or_default(o.epsilon, {0.1});
  ResultTable t({"q", "K", "epsilon", "Omega", "omega_ratio", "avg_overhead", "outage", "overhead_bound", "source"});
  for (double e : eps) {
    for (int K : Ks) {
      for (auto q : qs) {
        // Incremental in Omega: avg_overhead(Omega) = sum_{v<Omega} (1 - F(v)).
        const CodeConfig full{K, K / 2, q, Scheme::NonSystematic};
        const auto d = theory::overhead_distribution(full, {e});
        const double bound = e < 1.0 ? theory::overhead_upper_bound(q, K, e) : INFINITY;
        double overhead = 0.0;
        for (int Omega = 0; Omega <= full.Omega; ++Omega) {
          auto row = t.add_row();
          row.set("q", static_cast<std::int64_t>(q))
            .set("K", std::int64_t{K})
            .set("epsilon", e)
            .set("Omega", std::int64_t{Omega})
            .set("omega_ratio", static_cast<double>(Omega) / K)
            .set("avg_overhead", overhead)
            .set("outage", 1.0 - d.cdf[static_cast<std::size_t>(Omega)])
            .set("source", std::string("theory"));
          if (std::isfinite(bound))
            row.set("overhead_bound", bound);
          overhead += 1.0 - d.cdf[static_cast<std::size_t>(Omega)];
        }
      }
    }
  }
  return {{"fig6", std::move(t)}};
}

}  // namespace

const std::vector<std::string>& figure_names()
{
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6"};
  return names;
}

std::vector<FigurePanel> make_figure(std::string_view name, const FigureOptions& options)
{
  if (name == "fig2")
    return fig2(options);
  if (name == "fig3")
    return fig3(options);
  if (name == "fig4")
    return fig4(options);
  if (name == "fig5")
    return fig5(options);
  if (name == "fig6")
    return fig6(options);
  throw std::invalid_argument("unknown figure '" + std::string(name) + "' (expected fig2..fig6)");
}

}  // namespace rlnc::cli

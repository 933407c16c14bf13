#include "rlnc/config.hpp"
#include "rlnc/field.hpp"
#include "rlnc/rank.hpp"
#include "rlnc/sim.hpp"
#include "rlnc/theory.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rlnc;

namespace {

CodeConfig make_config(int K, std::uint64_t q, int omega_max, const std::string& scheme)
{
  CodeConfig cfg{K, omega_max, q, parse_scheme(scheme)};
  cfg.validate();
  return cfg;
}

ChannelSpec make_channel(double epsilon)
{
  ChannelSpec ch{epsilon};
  ch.validate();
  return ch;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Deadline-constrained RLNC delay and outage statistics";

  py::register_exception<UnboundedDelayError>(m, "UnboundedDelayError", PyExc_ValueError);

  m.def("full_rank_prob", &rank::full_rank_prob, py::arg("q"), py::arg("K"), py::arg("m"));
  m.def(
    "rank_distribution",
    [](std::uint64_t q, int K, int m) { return rank::rank_distribution(q, K, m).probabilities; },
    py::arg("q"), py::arg("K"), py::arg("m"));
  m.def("systematic_full_rank_prob", &rank::systematic_full_rank_prob, py::arg("q"), py::arg("K"), py::arg("m"),
        py::arg("omega_prime"));

  m.def(
    "overhead_distribution",
    [](int K, std::uint64_t q, double epsilon, int omega_max, const std::string& scheme) {
      const auto d = theory::overhead_distribution(make_config(K, q, omega_max, scheme), make_channel(epsilon));
      py::dict out;
      out["pmf"] = d.pmf;
      out["cdf"] = d.cdf;
      out["outage"] = d.outage;
      return out;
    },
    py::arg("K"), py::arg("q"), py::arg("epsilon"), py::arg("omega_max"), py::arg("scheme") = "nonsys");

  m.def(
    "avg_transmissions",
    [](int K, std::uint64_t q, double epsilon, int omega_max, const std::string& scheme) {
      const auto s = theory::avg_transmissions(make_config(K, q, omega_max, scheme), make_channel(epsilon));
      py::dict out;
      out["avg_transmissions"] = s.avg_transmissions;
      out["avg_overhead"] = s.avg_overhead;
      out["outage"] = s.outage;
      out["lower_bound"] = s.lower_bound;
      out["upper_bound"] = s.upper_bound;
      return out;
    },
    py::arg("K"), py::arg("q"), py::arg("epsilon"), py::arg("omega_max"), py::arg("scheme") = "nonsys");

  m.def(
    "decoding_delay_bounds",
    [](std::uint64_t q, int K, double epsilon) {
      const auto b = theory::decoding_delay_bounds(q, K, epsilon);
      return py::make_tuple(b.lower, b.upper);
    },
    py::arg("q"), py::arg("K"), py::arg("epsilon"));
  m.def("lucani_upper_bound", &theory::lucani_upper_bound, py::arg("q"), py::arg("K"), py::arg("epsilon"));
  m.def("overhead_upper_bound", &theory::overhead_upper_bound, py::arg("q"), py::arg("K"), py::arg("epsilon"));

  m.def(
    "simulate",
    [](int K, std::uint64_t q, double epsilon, int omega_max, const std::string& scheme, std::uint64_t generations,
       std::uint64_t seed, unsigned threads) {
      const auto cfg = make_config(K, q, omega_max, scheme);
      const auto ch = make_channel(epsilon);
      const FieldSpec field = FieldSpec::of_order(q);
      sim::SimOptions opts;
      opts.threads = threads;
      sim::SimCampaignResult r;
      {
        py::gil_scoped_release release;
        r = sim::run_campaign(cfg, ch, field, generations, seed, opts);
      }
      py::dict out;
      out["histogram"] = r.histogram;
      out["outage_count"] = r.outage_count;
      out["empirical_pmf"] = r.empirical_pmf;
      out["empirical_outage"] = r.empirical_outage;
      out["avg_transmissions"] = r.empirical_avg_transmissions;
      out["avg_overhead"] = r.empirical_avg_overhead;
      out["std_error"] = r.std_error;
      return out;
    },
    py::arg("K"), py::arg("q"), py::arg("epsilon"), py::arg("omega_max"), py::arg("scheme") = "nonsys",
    py::arg("generations") = 10000, py::arg("seed") = 1, py::arg("threads") = 1);
}

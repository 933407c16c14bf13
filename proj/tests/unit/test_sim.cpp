#include "rlnc/sim.hpp"
#include "rlnc/theory.hpp"

#include <doctest.h>

#ifdef RLNC_HAVE_BOOST_MATH
#include <boost/math/distributions/chi_squared.hpp>
#endif

#include <cmath>
#include <vector>

using namespace rlnc;
using namespace rlnc::sim;

namespace {

FieldElement e(unsigned v) { return {static_cast<std::uint8_t>(v)}; }

double chi2_critical(int dof, double alpha)
{
#ifdef RLNC_HAVE_BOOST_MATH
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
#else
  // Wilson-Hilferty approximation
  const double z = alpha <= 0.001 ? 3.0902 : 2.3263;
  const double k = dof;
  return k * std::pow(1 - 2 / (9 * k) + z * std::sqrt(2 / (9 * k)), 3);
#endif
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("coding vector storage")
{
  for (unsigned n : {1u, 2u, 4u, 8u})
    for (int len : {1, 5, 64, 65, 130}) {
      CodingVector v(n, len);
      CHECK(v.is_zero());
      std::vector<FieldElement> elems(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        elems[static_cast<std::size_t>(i)] = e(static_cast<unsigned>((i * 37 + 11) % (1 << n)));
      const auto w = CodingVector::from_elements(n, elems);
      CHECK(w.to_elements() == elems);
      const auto u = CodingVector::unit(n, len, len - 1);
      CHECK(u.get(len - 1).value == 1);
      CHECK_FALSE(u.is_zero());
    }
}

TEST_CASE("systematic encoder emits identity rows first")
{
  const auto field = FieldSpec::of_order(4);
  Encoder enc({5, 3, 4, Scheme::Systematic}, field);
  RandomStream rng(1, 0);
  enc.next_coding_vector(rng);
  enc.next_coding_vector(rng);
  const auto third = enc.next_coding_vector(rng).to_elements();
  CHECK(third == std::vector<FieldElement>{e(0), e(0), e(1), e(0), e(0)});
  for (int j = 4; j <= 8; ++j)
    enc.next_coding_vector(rng);
  CHECK_THROWS_AS(enc.next_coding_vector(rng), DeadlineExhausted);
}

TEST_CASE("non-systematic encoder is reproducible")
{
  const auto field = FieldSpec::of_order(16);
  const CodeConfig cfg{10, 5, 16};
  Encoder a(cfg, field), b(cfg, field);
  RandomStream ra(5, 9), rb(5, 9);
  for (int j = 0; j < 15; ++j)
    CHECK(a.next_coding_vector(ra) == b.next_coding_vector(rb));
  // skipping leaves later steps unchanged
  Encoder c(cfg, field), d(cfg, field);
  RandomStream rc(5, 9), rd(5, 9);
  c.next_coding_vector(rc);
  const auto second = c.next_coding_vector(rc);
  d.skip();
  CHECK(d.next_coding_vector(rd) == second);
}

TEST_CASE("zero vectors have mass q^-K")
{
  const auto field = FieldSpec::of_order(2);
  const int draws = 100000;
  int zeros = 0;
  for (int g = 0; g < draws / 4; ++g) {
    Encoder enc({2, 2, 2}, field);
    RandomStream rng(17, static_cast<std::uint64_t>(g));
    for (int j = 0; j < 4; ++j)
      zeros += enc.next_coding_vector(rng).is_zero();
  }
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  CHECK(std::abs(zeros - draws * 0.25) < 3 * sigma);
}

TEST_CASE("receiver ingest")
{
  const auto field = FieldSpec::of_order(4);
  ReceiverState rx(field, 3, true);
  CHECK_FALSE(rx.ingest(CodingVector(2, 3)));
  CHECK(rx.rank() == 0);
  CHECK(rx.ingest(CodingVector::unit(2, 3, 0)));
  CHECK_FALSE(rx.ingest(CodingVector::unit(2, 3, 0)));
  CHECK(rx.rank() == 1);
  std::vector<FieldElement> mix{e(3), e(2), e(0)};
  CHECK(rx.ingest(CodingVector::from_elements(2, mix)));
  // e_1 and 3e_1 + 2e_2 span e_2
  CHECK_FALSE(rx.ingest(CodingVector::unit(2, 3, 1)));
  CHECK(rx.ingest(CodingVector::unit(2, 3, 2), 6));
  CHECK(rx.decoded());
  CHECK(rx.done_at() == 6);
  CHECK(rx.received_count() == 6);

  for (int K : {1, 7, 64, 100}) {
    ReceiverState id(FieldSpec::of_order(256), K);
    for (int i = 0; i < K; ++i)
      REQUIRE(id.ingest(CodingVector::unit(8, K, i)));
    CHECK(id.rank() == K);
  }
}

TEST_CASE("incremental rank agrees with batch elimination")
{
  for (std::uint64_t q : {2u, 4u, 16u, 256u}) {
    const auto field = FieldSpec::of_order(q);
    for (int K : {3, 10, 70}) {
      const CodeConfig cfg{K, 8, q};
      SimOptions opt;
      opt.verify_rank = true;
      for (std::uint64_t g = 0; g < 30; ++g)
        CHECK_NOTHROW(run_generation(cfg, {0.3}, field, 4, g, opt));
    }
  }
  const auto gf2 = FieldSpec::of_order(2);
  CHECK(batch_rank(gf2, {{e(1), e(1)}, {e(1), e(1)}, {e(0), e(0)}}) == 1);
}

TEST_CASE("trivial channels")
{
  const auto field = FieldSpec::of_order(2);
  for (std::uint64_t g = 0; g < 100; ++g) {
    CHECK_FALSE(run_generation({6, 4, 2}, {1.0}, field, 1, g).has_value());
    CHECK(run_generation({6, 4, 2, Scheme::Systematic}, {0.0}, field, 1, g) == 6);
  }
  const auto r = run_campaign({6, 4, 2}, {1.0}, field, 50, 3);
  CHECK(r.empirical_outage == 1.0);
  CHECK(r.empirical_avg_transmissions == 10.0);
}

TEST_CASE("P(n <= 3) for K=2, eps=0.5 over 10^6 generations")
{
  const auto field = FieldSpec::of_order(2);
  const auto r = run_campaign({2, 1, 2}, {0.5}, field, 1000000, 21);
  const double p = 0.22265625;
  const double hit = 1.0 - r.empirical_outage;
  CHECK(std::abs(hit - p) < 3 * std::sqrt(p * (1 - p) / 1e6));
}

TEST_CASE("campaign means agree with theory; systematic is lower")
{
  const auto field = FieldSpec::of_order(2);
  const CodeConfig ns{30, 15, 2}, sy{30, 15, 2, Scheme::Systematic};
  const auto a = run_campaign(ns, {0.1}, field, 100000, 7);
  const auto b = run_campaign(sy, {0.1}, field, 100000, 7);
  CHECK(std::abs(a.empirical_avg_transmissions - theory::avg_transmissions(ns, {0.1}).avg_transmissions) <
        3 * a.std_error);
  CHECK(std::abs(b.empirical_avg_transmissions - theory::avg_transmissions(sy, {0.1}).avg_transmissions) <
        3 * b.std_error);
  CHECK(b.empirical_avg_transmissions < a.empirical_avg_transmissions);
}

TEST_CASE("overhead histogram passes chi-square")
{
  for (std::uint64_t q : {2u, 4u})
    for (int K : {10, 30})
      for (double eps : {0.05, 0.2}) {
        const CodeConfig c{K, K / 2, q};
        const auto field = FieldSpec::of_order(q);
        const std::uint64_t n = 100000;
        const auto r = run_campaign(c, {eps}, field, n, 1000 + q + static_cast<std::uint64_t>(K));
        const auto d = theory::overhead_distribution(c, {eps});

        // cells: omega = 0..Omega plus outage; merge left to right until the
        // expected count reaches 5
        std::vector<double> expected, observed;
        double ex = 0, ob = 0;
        for (int w = 0; w <= c.Omega; ++w) {
          ex += d.pmf[w] * n;
          ob += static_cast<double>(r.histogram[w]);
          if (ex >= 5) {
            expected.push_back(ex);
            observed.push_back(ob);
            ex = ob = 0;
          }
        }
        ex += d.outage * n;
        ob += static_cast<double>(r.outage_count);
        if (ex >= 5 || expected.empty()) {
          expected.push_back(ex);
          observed.push_back(ob);
        } else {
          expected.back() += ex;
          observed.back() += ob;
        }
        double stat = 0;
        for (std::size_t i = 0; i < expected.size(); ++i)
          stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        const int dof = static_cast<int>(expected.size()) - 1;
        INFO("q=" << q << " K=" << K << " eps=" << eps << " stat=" << stat << " dof=" << dof);
        CHECK(stat < chi2_critical(dof, 0.001));
      }
}

TEST_CASE("results do not depend on thread count")
{
  const auto field = FieldSpec::of_order(4);
  const CodeConfig c{20, 10, 4};
  SimOptions one, many;
  many.threads = 8;
  const auto a = run_campaign(c, {0.2}, field, 5000, 99, one);
  const auto b = run_campaign(c, {0.2}, field, 5000, 99, many);
  CHECK(a.histogram == b.histogram);
  CHECK(a.outage_count == b.outage_count);
  CHECK(a.empirical_avg_transmissions == b.empirical_avg_transmissions);
  CHECK(a.std_error == b.std_error);

  const auto single = run_campaign(c, {0.2}, field, 1, 99);
  CHECK(single.histogram == run_campaign(c, {0.2}, field, 1, 99).histogram);
}

TEST_CASE("multi-receiver reductions")
{
  const auto field = FieldSpec::of_order(2);
  const CodeConfig c{8, 4, 2};
  const std::vector<ChannelSpec> one{{0.2}};
  const auto m = run_multi_receiver(c, one, field, 2000, 5);
  const auto r = run_campaign(c, {0.2}, field, 2000, 5);
  CHECK(m.receivers.front().histogram == r.histogram);
  CHECK(m.system.histogram == r.histogram);

  const std::vector<ChannelSpec> clean(3, ChannelSpec{0.0});
  const auto s = run_multi_receiver({5, 4, 2, Scheme::Systematic}, clean, field, 100, 5);
  CHECK(s.system.empirical_avg_transmissions == 5.0);
  CHECK(s.system.empirical_outage == 0.0);

  // three receivers, K=5, N=9
  const std::vector<ChannelSpec> three{{0.1}, {0.2}, {0.3}};
  const auto f = run_multi_receiver({5, 4, 2}, three, field, 5000, 8);
  CHECK(f.receivers.size() == 3);
  for (const auto& rx : f.receivers) {
    CHECK(f.system.empirical_avg_transmissions >= rx.empirical_avg_transmissions);
    CHECK(f.system.empirical_outage >= rx.empirical_outage);
  }
}

}

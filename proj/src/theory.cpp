#include "rlnc/theory.hpp"

#include "rlnc/numeric.hpp"
#include "rlnc/rank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rlnc::theory {

namespace {

void validate(const CodeConfig& cfg, const ChannelSpec& ch)
{
  cfg.validate();
  ch.validate();
}

void check_omega(const CodeConfig& cfg, int omega)
{
  if (omega < 0 || omega > cfg.Omega)
    throw std::invalid_argument("overhead " + std::to_string(omega) + " outside [0, Omega=" + std::to_string(cfg.Omega) + "]");
}

void check_epsilon(double epsilon)
{
  ChannelSpec{epsilon}.validate();
}

// Full-rank probability of the decoding matrix after m deliveries out of
// K + omega transmissions.
double decodable(const CodeConfig& cfg, int m, int omega)
{
  if (cfg.scheme == Scheme::Systematic)
    return rank::systematic_full_rank_prob(cfg.q, cfg.K, m, omega);
  return rank::full_rank_prob(cfg.q, cfg.K, m);
}

double undecodable(const CodeConfig& cfg, int m, int omega)
{
  if (cfg.scheme == Scheme::Systematic)
    return rank::systematic_full_rank_deficit(cfg.q, cfg.K, m, omega);
  return rank::full_rank_deficit(cfg.q, cfg.K, m);
}

// 1 - F(omega) as a sum of non-negative terms: fewer than K deliveries, or K
// or more deliveries that do not span.
double survival(const CodeConfig& cfg, double eps, int omega)
{
  if (eps >= 1.0)
    return 1.0;
  const int n = cfg.K + omega;
  KahanSum sum;
  for (int m = 0; m < cfg.K; ++m)
    sum += binomial_weight(n, m, eps);
  for (int m = cfg.K; m <= n; ++m)
    sum += binomial_weight(n, m, eps) * undecodable(cfg, m, omega);
  return std::clamp(sum.value(), 0.0, 1.0);
}

// F(omega) = sum_{m=K}^{K+omega} C(K+omega, m) eps^(K+omega-m) (1-eps)^m P(m).
// Once F passes 1/2 the complement is used instead, so that both F and 1 - F
// keep full relative precision.
double direct_cdf(const CodeConfig& cfg, double eps, int omega)
{
  if (eps >= 1.0)
    return 0.0;
  const int n = cfg.K + omega;
  KahanSum sum;
  for (int m = cfg.K; m <= n; ++m)
    sum += binomial_weight(n, m, eps) * decodable(cfg, m, omega);
  return std::clamp(sum.value(), 0.0, 1.0);
}

double cdf_unchecked(const CodeConfig& cfg, double eps, int omega)
{
  const double f = direct_cdf(cfg, eps, omega);
  return f < 0.5 ? f : 1.0 - survival(cfg, eps, omega);
}

double outage_unchecked(const CodeConfig& cfg, double eps, int omega)
{
  const double s = survival(cfg, eps, omega);
  return s < 0.5 ? s : 1.0 - direct_cdf(cfg, eps, omega);
}

// Non-systematic PMF as a sum over the rank-(K-1) state one step earlier:
//   f(w) = C(t, K-1) eps^w (1-eps)^K P(K)
//        + sum_{m=K}^{t} C(t, m) eps^(t-m) (1-eps)^(m+1) [P(m+1) - P(m)],  t = K + w - 1.
double nonsystematic_pmf(const CodeConfig& cfg, double eps, int omega)
{
  if (eps >= 1.0)
    return 0.0;
  const int K = cfg.K;
  const int t = K + omega - 1;
  KahanSum sum;
  sum += binomial_weight(t, K - 1, eps) * (1.0 - eps) * rank::full_rank_prob(cfg.q, K, K);
  for (int m = K; m <= t; ++m) {
    // P(m+1) - P(m) as a difference of deficits keeps precision when both are near 1.
    const double step = rank::full_rank_deficit(cfg.q, K, m) - rank::full_rank_deficit(cfg.q, K, m + 1);
    sum += binomial_weight(t, m, eps) * (1.0 - eps) * step;
  }
  return std::max(0.0, sum.value());
}

double pmf_unchecked(const CodeConfig& cfg, double eps, int omega)
{
  if (cfg.scheme == Scheme::NonSystematic)
    return nonsystematic_pmf(cfg, eps, omega);
  // The systematic full-rank probability depends on how many coded packets
  // were sent, so the PMF is the increment of the CDF between budgets.
  const double prev = omega == 0 ? 0.0 : cdf_unchecked(cfg, eps, omega - 1);
  return std::max(0.0, cdf_unchecked(cfg, eps, omega) - prev);
}

}  // namespace

double overhead_pmf(const CodeConfig& cfg, const ChannelSpec& ch, int omega)
{
  validate(cfg, ch);
  check_omega(cfg, omega);
  return pmf_unchecked(cfg, ch.epsilon, omega);
}

double overhead_cdf(const CodeConfig& cfg, const ChannelSpec& ch, int omega)
{
  validate(cfg, ch);
  check_omega(cfg, omega);
  return cdf_unchecked(cfg, ch.epsilon, omega);
}

OverheadDistribution overhead_distribution(const CodeConfig& cfg, const ChannelSpec& ch)
{
  validate(cfg, ch);
  OverheadDistribution d;
  d.pmf.reserve(static_cast<std::size_t>(cfg.Omega) + 1);
  d.cdf.reserve(static_cast<std::size_t>(cfg.Omega) + 1);
  for (int w = 0; w <= cfg.Omega; ++w) {
    d.cdf.push_back(cdf_unchecked(cfg, ch.epsilon, w));
    if (cfg.scheme == Scheme::Systematic)
      d.pmf.push_back(std::max(0.0, d.cdf[w] - (w == 0 ? 0.0 : d.cdf[w - 1])));
    else
      d.pmf.push_back(nonsystematic_pmf(cfg, ch.epsilon, w));
  }
  d.outage = outage_unchecked(cfg, ch.epsilon, cfg.Omega);
  return d;
}

double outage_probability(const CodeConfig& cfg, const ChannelSpec& ch)
{
  validate(cfg, ch);
  return outage_unchecked(cfg, ch.epsilon, cfg.Omega);
}

DelaySummary avg_transmissions(const CodeConfig& cfg, const ChannelSpec& ch)
{
  validate(cfg, ch);
  DelaySummary s;
  // omega_bar = Omega - sum_{v<Omega} F(v) = sum_{v<Omega} (1 - F(v))
  KahanSum overhead;
  for (int v = 0; v < cfg.Omega; ++v)
    overhead += outage_unchecked(cfg, ch.epsilon, v);
  s.avg_overhead = overhead.value();
  s.avg_transmissions = cfg.K + s.avg_overhead;
  s.outage = outage_unchecked(cfg, ch.epsilon, cfg.Omega);
  if (ch.epsilon < 1.0) {
    const DelayBounds b = decoding_delay_bounds(cfg.q, cfg.K, ch.epsilon);
    s.lower_bound = b.lower;
    s.upper_bound = b.upper;
  } else {
    s.lower_bound = s.upper_bound = std::numeric_limits<double>::infinity();
  }
  return s;
}

DelayBounds decoding_delay_bounds(std::uint64_t q, int K, double epsilon)
{
  check_epsilon(epsilon);
  if (epsilon >= 1.0)
    throw UnboundedDelayError("average decoding delay is unbounded for epsilon = 1");
  const BoundBrackets b = bound_brackets(q, K);
  return {K / (1.0 - epsilon), b.tight / (1.0 - epsilon)};
}

double overhead_upper_bound(std::uint64_t q, int K, double epsilon)
{
  check_epsilon(epsilon);
  if (epsilon >= 1.0)
    throw UnboundedDelayError("average overhead is unbounded for epsilon = 1");
  if (q < 2 || K < 1)
    throw std::invalid_argument("overhead_upper_bound needs q >= 2 and K >= 1");
  const double qd = static_cast<double>(q);
  const double inv_q = 1.0 / qd;
  const double c = inv_q * -std::expm1(-K * std::log(qd)) / ((1.0 - inv_q) * (1.0 - inv_q));
  return (epsilon * K + c) / (1.0 - epsilon);
}

BoundBrackets bound_brackets(std::uint64_t q, int K)
{
  if (q < 2 || K < 1)
    throw std::invalid_argument("bounds need q >= 2 and K >= 1");
  const double qd = static_cast<double>(q);
  const double lq = std::log(qd);
  BoundBrackets b;
  b.tight = K + qd * -std::expm1(-K * lq) / ((qd - 1.0) * (qd - 1.0));
  b.lucani_first = K * qd / (qd - 1.0);
  b.lucani_second = K + 1.0 + -std::expm1((1 - K) * lq) / (qd - 1.0);
  return b;
}

double lucani_upper_bound(std::uint64_t q, int K, double epsilon)
{
  check_epsilon(epsilon);
  if (K < 2)
    throw std::invalid_argument("lucani_upper_bound requires K >= 2");
  if (epsilon >= 1.0)
    throw UnboundedDelayError("average decoding delay is unbounded for epsilon = 1");
  const BoundBrackets b = bound_brackets(q, K);
  return std::min(b.lucani_first, b.lucani_second) / (1.0 - epsilon);
}

double large_q_avg_transmissions(int K, double epsilon, int Omega)
{
  check_epsilon(epsilon);
  if (K < 1 || Omega < 0)
    throw std::invalid_argument("large_q_avg_transmissions needs K >= 1 and Omega >= 0");
  if (epsilon >= 1.0)
    return K + Omega;
  KahanSum overhead;
  // every K deliveries decode, so 1 - F(v) is the chance of fewer than K
  for (int v = 0; v < Omega; ++v) {
    KahanSum short_of_k;
    for (int m = 0; m < K; ++m)
      short_of_k += binomial_weight(K + v, m, epsilon);
    overhead += std::min(1.0, short_of_k.value());
  }
  return K + overhead.value();
}

double avg_decoding_delay(const CodeConfig& cfg, const ChannelSpec& ch, double tol)
{
  validate(cfg, ch);
  if (ch.epsilon >= 1.0)
    throw UnboundedDelayError("average decoding delay is unbounded for epsilon = 1");
  KahanSum overhead;
  for (int v = 0;; ++v) {
    const double tail = outage_unchecked(cfg, ch.epsilon, v);
    if (tail < tol)
      break;
    overhead += tail;
    if (v > 1000000)
      throw std::runtime_error("avg_decoding_delay did not converge");
  }
  return cfg.K + overhead.value();
}

double ptp_exact_delay_pmf(int kappa, double epsilon, int delta)
{
  check_epsilon(epsilon);
  if (kappa < 1 || delta < 0)
    throw std::invalid_argument("ptp_exact_delay_pmf needs kappa >= 1 and delta >= 0");
  return binomial_weight(kappa + delta - 1, kappa - 1, epsilon) * (1.0 - epsilon);
}

OverheadDistribution markov_oracle(const CodeConfig& cfg, const ChannelSpec& ch)
{
  validate(cfg, ch);
  const int K = cfg.K;
  const double eps = ch.epsilon;
  const double q = static_cast<double>(cfg.q);

  // state[r] = Pr(rank r and not yet decoded) after the current step.
  std::vector<double> state(static_cast<std::size_t>(K), 0.0);
  std::vector<double> next(state.size());
  state[0] = 1.0;

  OverheadDistribution d;
  KahanSum decoded;
  for (int step = 1; step <= cfg.N(); ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    double completed = 0.0;
    for (int r = 0; r < K; ++r) {
      const double p = state[static_cast<std::size_t>(r)];
      if (p == 0.0)
        continue;
      const bool systematic_row = cfg.scheme == Scheme::Systematic && step <= K;
      const double innovative = systematic_row ? 1.0 : 1.0 - std::pow(q, r - K);
      const double up = p * (1.0 - eps) * innovative;
      next[static_cast<std::size_t>(r)] += p - up;
      if (r + 1 == K)
        completed += up;
      else
        next[static_cast<std::size_t>(r) + 1] += up;
    }
    state.swap(next);
    if (step >= K) {
      decoded += completed;
      d.pmf.push_back(completed);
      d.cdf.push_back(decoded.value());
    }
  }
  KahanSum remaining;
  for (double p : state)
    remaining += p;
  d.outage = remaining.value();
  return d;
}

}  // namespace rlnc::theory

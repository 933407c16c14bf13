#pragma once

#include "rlnc/config.hpp"

#include <cstdint>
#include <vector>

/// Closed-form overhead distributions, outage probabilities, average
/// transmission counts and decoding-delay bounds for deadline-constrained
/// random linear network coding over an erasure channel.
///
/// Throughout, omega is the overhead: decoding completes at time step
/// n = K + omega. Probabilities are per receiver.
namespace rlnc::theory {

/// Overhead law on 0..Omega plus the mass beyond the deadline.
struct OverheadDistribution
{
  std::vector<double> pmf;
  std::vector<double> cdf;
  double outage = 0.0;
};

struct DelaySummary
{
  /// E[min(n, N)]; outage realisations count as N.
  double avg_transmissions = 0.0;
  /// E[min(omega, Omega)].
  double avg_overhead = 0.0;
  double outage = 0.0;
  /// Bounds on the unconstrained average decoding delay; +inf when epsilon = 1.
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

struct DelayBounds
{
  double lower = 0.0;
  double upper = 0.0;
};

/// Upper-bound brackets with the common 1/(1-epsilon) factor removed.
struct BoundBrackets
{
  /// K + q(1 - q^-K)/(q-1)^2
  double tight = 0.0;
  /// K q/(q-1)
  double lucani_first = 0.0;
  /// K + 1 + (1 - q^(1-K))/(q-1)
  double lucani_second = 0.0;
};

/// Probability that decoding completes at exactly K + omega.
double overhead_pmf(const CodeConfig& cfg, const ChannelSpec& ch, int omega);

/// Probability that decoding completes within K + omega steps.
double overhead_cdf(const CodeConfig& cfg, const ChannelSpec& ch, int omega);

/// pmf and cdf on 0..Omega in one pass.
OverheadDistribution overhead_distribution(const CodeConfig& cfg, const ChannelSpec& ch);

/// 1 - cdf(Omega).
double outage_probability(const CodeConfig& cfg, const ChannelSpec& ch);

/// Capped average transmissions and overhead, outage and delay bounds.
DelaySummary avg_transmissions(const CodeConfig& cfg, const ChannelSpec& ch);

/// K/(1-eps) <= d < [K + q(1-q^-K)/(q-1)^2]/(1-eps).
/// Throws UnboundedDelayError for eps = 1.
DelayBounds decoding_delay_bounds(std::uint64_t q, int K, double epsilon);

/// Upper bound on the unconstrained average overhead,
/// [eps K + q^-1 (1-q^-K)/(1-q^-1)^2] / (1-eps).
double overhead_upper_bound(std::uint64_t q, int K, double epsilon);

/// min{Kq/(q-1), K+1+(1-q^(1-K))/(q-1)} / (1-eps). Requires K >= 2.
double lucani_upper_bound(std::uint64_t q, int K, double epsilon);

BoundBrackets bound_brackets(std::uint64_t q, int K);

/// Average transmissions in the q -> infinity limit, where every K received
/// packets decode.
double large_q_avg_transmissions(int K, double epsilon, int Omega);

/// Unconstrained average decoding delay, lim_{Omega->inf} avg_transmissions,
/// truncated once the residual outage falls below tol.
double avg_decoding_delay(const CodeConfig& cfg, const ChannelSpec& ch, double tol = 1e-13);

/// Point-to-point uncoded retransmission: probability that kappa packets are
/// delivered in exactly kappa + delta steps, C(kappa+delta-1, kappa-1)(1-eps)^kappa eps^delta.
double ptp_exact_delay_pmf(int kappa, double epsilon, int delta);

/// Independent forward recursion over (time step, rank). Only uses the fact
/// that a uniform row is innovative at rank r with probability 1 - q^(r-K),
/// and that systematic rows are always innovative.
OverheadDistribution markov_oracle(const CodeConfig& cfg, const ChannelSpec& ch);

}  // namespace rlnc::theory

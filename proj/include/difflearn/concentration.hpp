#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "difflearn/environment.hpp"
#include "difflearn/estimator.hpp"

namespace difflearn {

enum class WeightDistribution {
  KernelWeights,  // box-kernel weights of a synthetic design around a query
  UniformUnit,    // v_n ~ U[0,1]
};

struct SelfNormTrial {
  double s = 0.0;      // sum v_n * eta_n
  double v = 0.0;      // sum v_n^2
  double bound = 0.0;  // selfnorm_bound(v, sigma, delta)

  bool violated() const noexcept { return std::abs(s) > bound; }
};

struct RateEstimate {
  double rate = 0.0;
  double std_error = 0.0;  // binomial, sqrt(rate*(1-rate)/trials)
  std::uint64_t violations = 0;
  std::uint64_t trials = 0;
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// sqrt(2 sigma^2 ln(sqrt(1+V)/delta) (1+V)).
double selfnorm_bound(double v_sum, double sigma, double delta) noexcept;

SelfNormTrial selfnorm_trial(std::size_t t, double sigma, double delta,
                             WeightDistribution weights, Rng& rng);

/// Fraction of R independent trials in which |S_t| exceeds the self-normalized
/// bound. Trial i draws from its own stream derived from (seed, i), so the
/// result does not depend on the worker count. Requires R >= 100.
RateEstimate selfnorm_violation_rate(std::size_t t, double sigma, double delta,
                                     WeightDistribution weights, std::size_t replications,
                                     std::uint64_t seed, int workers = 0);

// exp(sum lambda*eta_n*v_n/sigma - lambda^2 v_n^2 / 2), Gaussian eta, v_n ~ U[0,1].
double martingale_trial(std::size_t t, double lambda, double sigma, Rng& rng);

/// Monte-Carlo mean of the exponential supermartingale. Requires R >= 1000.
MeanEstimate martingale_mean(std::size_t t, double lambda, double sigma,
                             std::size_t replications, std::uint64_t seed, int workers = 0);

/// Violation rate of the local confidence bound at x over R replications of
/// Gaussian noise on a fixed design, with a fixed bandwidth h. The Lipschitz
/// constant is taken from `truth`. Throws ZeroMass when the design puts no
/// kernel mass at x.
RateEstimate local_bound_coverage(double x, std::span<const double> design, double h,
                                  const Phenomenon& truth, double sigma, double delta,
                                  std::size_t replications, std::uint64_t seed,
                                  int workers = 0);

// `count` design points i.i.d. U[lo, hi] from the design stream of `seed`.
std::vector<double> uniform_design(std::size_t count, double lo, double hi, std::uint64_t seed);

// Three-sigma binomial allowance used by the acceptance thresholds.
inline double binomial_slack(double p, std::size_t replications) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

}  // namespace difflearn

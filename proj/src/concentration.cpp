#include "difflearn/concentration.hpp"

#include <cmath>

#include "difflearn/errors.hpp"
#include "difflearn/parallel.hpp"

namespace difflearn {

namespace {

RateEstimate rate_from(const std::vector<char>& violated) {
  RateEstimate out;
  out.trials = violated.size();
  for (char v : violated) out.violations += v ? 1 : 0;
  out.rate = static_cast<double>(out.violations) / static_cast<double>(out.trials);
  out.std_error = std::sqrt(out.rate * (1.0 - out.rate) / static_cast<double>(out.trials));
  return out;
}

}  // namespace

double selfnorm_bound(double v_sum, double sigma, double delta) noexcept {
  const double widened = 1.0 + v_sum;
  return std::sqrt(2.0 * sigma * sigma * std::log(std::sqrt(widened) / delta) * widened);
}

SelfNormTrial selfnorm_trial(std::size_t t, double sigma, double delta,
                             WeightDistribution weights, Rng& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Synthetic design on [-2h, 2h] around a query at 0 with h = 1: about half
  // the points fall in the window.
  std::uniform_real_distribution<double> design(-2.0, 2.0);
  SelfNormTrial trial;
  for (std::size_t n = 0; n < t; ++n) {
    const double v = weights == WeightDistribution::UniformUnit ? unit(rng)
                                                                : kernel_eval(design(rng));
    trial.s += v * noise(rng);
    trial.v += v * v;
  }
  trial.bound = selfnorm_bound(trial.v, sigma, delta);
  return trial;
}

RateEstimate selfnorm_violation_rate(std::size_t t, double sigma, double delta,
                                     WeightDistribution weights, std::size_t replications,
                                     std::uint64_t seed, int workers) {
  if (replications < 100) throw InvalidRange("selfnorm test needs at least 100 replications");
  if (!(sigma > 0.0)) throw InvalidRange("sigma must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidRange("delta must lie in (0,1)");
  std::vector<char> violated(replications, 0);
  parallel_for(replications, workers, [&](std::size_t i) {
    Rng rng = make_stream(seed, StreamTag::MonteCarlo, i);
    violated[i] = selfnorm_trial(t, sigma, delta, weights, rng).violated() ? 1 : 0;
  });
  return rate_from(violated);
}

double martingale_trial(std::size_t t, double lambda, double sigma, Rng& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double exponent = 0.0;
  for (std::size_t n = 0; n < t; ++n) {
    const double v = unit(rng);
    const double eta = noise(rng);
    exponent += lambda * eta * v / sigma - 0.5 * lambda * lambda * v * v;
  }
  return std::exp(exponent);
}

MeanEstimate martingale_mean(std::size_t t, double lambda, double sigma,
                             std::size_t replications, std::uint64_t seed, int workers) {
  if (replications < 1000) throw InvalidRange("martingale test needs at least 1000 replications");
  if (!(sigma > 0.0)) throw InvalidRange("sigma must be positive");
  std::vector<double> values(replications);
  parallel_for(replications, workers, [&](std::size_t i) {
    Rng rng = make_stream(seed, StreamTag::MonteCarlo, i);
    values[i] = martingale_trial(t, lambda, sigma, rng);
  });

  // Serial reduction keeps the sum independent of the worker count.
  MeanEstimate out;
  out.trials = replications;
  const double count = static_cast<double>(replications);
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / count;
  double squares = 0.0;
  for (double v : values) squares += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(squares / (count - 1.0) / count);
  return out;
}

std::vector<double> uniform_design(std::size_t count, double lo, double hi,
                                  std::uint64_t seed) {
  if (!(lo <= hi)) throw InvalidRange("design range must satisfy lo <= hi");
  Rng rng = make_stream(seed, StreamTag::Design);
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<double> design(count);
  for (auto& x : design) x = uniform(rng);
  return design;
}

RateEstimate local_bound_coverage(double x, std::span<const double> design, double h,
                                  const Phenomenon& truth, double sigma, double delta,
                                  std::size_t replications, std::uint64_t seed, int workers) {
  if (replications < 1) throw InvalidRange("coverage test needs at least one replication");
  const BoundParams params{truth.lipschitz, sigma, delta};
  params.validate();
  if (!(h > 0.0)) throw InvalidRange("bandwidth must be positive");

  std::vector<Sample> base(design.size());
  for (std::size_t n = 0; n < design.size(); ++n) base[n] = {design[n], truth(design[n])};
  if (kappa(x, base, h) == 0.0) throw ZeroMass("design puts no kernel mass at the query");

  const double target = truth(x);
  std::vector<char> violated(replications, 0);
  parallel_for(replications, workers, [&](std::size_t i) {
    Rng rng = make_stream(seed, StreamTag::MonteCarlo, i);
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<Sample> samples = base;
    for (auto& s : samples) s.y += noise(rng);
    const double estimate = *nw_estimate(x, samples, h);
    const double beta = beta_bound(x, samples, h, params);
    violated[i] = std::abs(estimate - target) > beta ? 1 : 0;
  });
  return rate_from(violated);
}

}  // namespace difflearn

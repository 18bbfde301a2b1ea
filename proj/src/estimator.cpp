#include "difflearn/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "difflearn/errors.hpp"

namespace difflearn {

void KernelConfig::validate() const {
  if (const auto* fixed = std::get_if<FixedBandwidth>(&bandwidth)) {
    if (!(fixed->h > 0.0) || !std::isfinite(fixed->h))
      throw InvalidRange("bandwidth h must be positive and finite");
    return;
  }
  const auto& opt = std::get<OptimalBandwidth>(bandwidth);
  if (!(opt.h_min > 0.0)) throw InvalidRange("h_min must be positive");
  if (!(opt.h_min < opt.h_max) || !std::isfinite(opt.h_max))
    throw InvalidRange("h_min must be smaller than a finite h_max");
}

double KernelConfig::default_bandwidth() const {
  if (const auto* fixed = std::get_if<FixedBandwidth>(&bandwidth)) return fixed->h;
  return std::get<OptimalBandwidth>(bandwidth).h_min;
}

void BoundParams::validate() const {
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
    throw InvalidRange("lipschitz constant must be finite and non-negative");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidRange("sigma must be positive and finite");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidRange("delta must lie in (0,1)");
}

double kernel_eval(double v) noexcept { return std::abs(v) <= 1.0 ? 1.0 : 0.0; }

double kappa(double x, std::span<const Sample> samples, double h) noexcept {
  double mass = 0.0;
  for (const auto& s : samples) mass += kernel_eval((x - s.xi) / h);
  return mass;
}

std::optional<double> nw_estimate(double x, std::span<const Sample> samples,
                                  double h) noexcept {
  double mass = 0.0;
  double weighted = 0.0;
  for (const auto& s : samples) {
    const double w = kernel_eval((x - s.xi) / h);
    mass += w;
    weighted += w * s.y;
  }
  if (mass == 0.0) return std::nullopt;
  return weighted / mass;
}

double alpha(double kappa, double delta) noexcept {
  if (kappa <= 1.0) return std::sqrt(std::log(std::sqrt(2.0) / delta));
  return std::sqrt(kappa * std::log(std::sqrt(1.0 + kappa) / delta));
}

double bound_from_kappa(double kappa, double h, const BoundParams& params) noexcept {
  if (kappa == 0.0) return kInfinity;
  return params.lipschitz * h + 2.0 * params.sigma * alpha(kappa, params.delta) / kappa;
}

double beta_bound(double x, std::span<const Sample> samples, double h,
                  const BoundParams& params) noexcept {
  return bound_from_kappa(kappa(x, samples, h), h, params);
}

namespace {

void check_range(double h_min, double h_max) {
  if (!(h_min > 0.0)) throw InvalidRange("h_min must be positive");
  if (!(h_min < h_max))
    throw InvalidRange("h_min (" + std::to_string(h_min) +
                       ") must be smaller than h_max (" + std::to_string(h_max) + ")");
}

// Contiguous run of a sorted sample list lying within `reach` of x.
std::span<const Sample> window(double x, std::span<const Sample> sorted, double reach) {
  // fl(x - xi) is monotone in xi, so both predicates partition the list.
  auto first = std::partition_point(sorted.begin(), sorted.end(), [&](const Sample& s) {
    return s.xi < x && (x - s.xi) > reach;
  });
  auto last = std::partition_point(first, sorted.end(), [&](const Sample& s) {
    return s.xi <= x || (s.xi - x) <= reach;
  });
  return {first, last};
}

}  // namespace

BandwidthChoice optimize_bandwidth(double x, std::span<const Sample> samples,
                                   const BoundParams& params, double h_min,
                                   double h_max) {
  check_range(h_min, h_max);

  std::vector<double> distances;
  distances.reserve(samples.size());
  for (const auto& s : samples) {
    const double d = std::abs(x - s.xi);
    if (d <= h_max) distances.push_back(d);
  }
  std::sort(distances.begin(), distances.end());

  auto it = std::upper_bound(distances.begin(), distances.end(), h_min);
  double mass = static_cast<double>(it - distances.begin());
  BandwidthChoice best{h_min, bound_from_kappa(mass, h_min, params)};

  while (it != distances.end()) {
    const double h = *it;
    // Every sample at exactly this distance enters together.
    auto next = std::upper_bound(it, distances.end(), h);
    mass = static_cast<double>(next - distances.begin());
    const double beta = bound_from_kappa(mass, h, params);
    if (beta < best.beta) best = {h, beta};
    it = next;
  }
  return best;
}

BandwidthChoice golden_section_bandwidth(double x, std::span<const Sample> samples,
                                         const BoundParams& params, double h_min,
                                         double h_max) {
  check_range(h_min, h_max);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto beta_at = [&](double h) { return beta_bound(x, samples, h, params); };

  BandwidthChoice best{h_min, beta_at(h_min)};
  auto consider = [&](double h, double beta) {
    if (beta < best.beta || (beta == best.beta && h < best.h)) best = {h, beta};
  };
  consider(h_max, beta_at(h_max));

  double lo = h_min;
  double hi = h_max;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = beta_at(c);
  double fd = beta_at(d);
  consider(c, fc);
  consider(d, fd);
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * h_max; ++iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = beta_at(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = beta_at(d);
      consider(d, fd);
    }
  }
  return best;
}

LocalEvaluation evaluate(double x, std::span<const Sample> samples,
                         const KernelConfig& kernel, const BoundParams& params) {
  double h = kernel.default_bandwidth();
  if (const auto* opt = std::get_if<OptimalBandwidth>(&kernel.bandwidth)) {
    h = opt->search == BandwidthSearch::Breakpoint
            ? optimize_bandwidth(x, samples, params, opt->h_min, opt->h_max).h
            : golden_section_bandwidth(x, samples, params, opt->h_min, opt->h_max).h;
  }
  LocalEvaluation out;
  out.h_used = h;
  out.kappa = kappa(x, samples, h);
  out.mu_hat = nw_estimate(x, samples, h);
  out.beta = bound_from_kappa(out.kappa, h, params);
  return out;
}

LocalEvaluation evaluate_sorted(double x, std::span<const Sample> sorted_samples,
                                const KernelConfig& kernel, const BoundParams& params) {
  double reach = kernel.default_bandwidth();
  if (const auto* opt = std::get_if<OptimalBandwidth>(&kernel.bandwidth)) reach = opt->h_max;
  // Samples outside the reach carry zero weight for every admissible h, and
  // skipping them leaves the in-window summation order unchanged.
  return evaluate(x, window(x, sorted_samples, reach), kernel, params);
}

}  // namespace difflearn

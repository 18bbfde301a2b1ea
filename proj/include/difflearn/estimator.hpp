#pragma once

#include <limits>
#include <optional>
#include <span>
#include <variant>

namespace difflearn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Sample {
  double xi = 0.0;  // explanatory value in D
  double y = 0.0;   // noisy output
};

enum class KernelKind { Box };

enum class BandwidthSearch {
  Breakpoint,     // exact enumeration of the kernel-mass jumps
  GoldenSection,  // numeric search, kept as an alternative
};

struct FixedBandwidth {
  double h = 1.0;
};

struct OptimalBandwidth {
  double h_min = 0.01;
  double h_max = 1.0;
  BandwidthSearch search = BandwidthSearch::Breakpoint;
};

struct KernelConfig {
  KernelKind kind = KernelKind::Box;
  std::variant<FixedBandwidth, OptimalBandwidth> bandwidth = FixedBandwidth{};

  static KernelConfig fixed(double h) { return {KernelKind::Box, FixedBandwidth{h}}; }
  static KernelConfig optimal(double h_min, double h_max,
                              BandwidthSearch search = BandwidthSearch::Breakpoint) {
    return {KernelKind::Box, OptimalBandwidth{h_min, h_max, search}};
  }

  // Throws InvalidRange unless h > 0 (fixed) or 0 < h_min < h_max (optimal).
  void validate() const;
  // Bandwidth reported when no search takes place (fixed h, or h_min).
  double default_bandwidth() const;
};

struct BoundParams {
  double lipschitz = 1.0;  // L
  double sigma = 1.0;      // sub-Gaussian variance proxy of the noise
  double delta = 0.01;     // confidence parameter in (0,1)

  void validate() const;
};

struct LocalEvaluation {
  std::optional<double> mu_hat;  // empty iff kappa == 0
  double kappa = 0.0;
  double beta = kInfinity;  // infinite iff kappa == 0
  double h_used = 0.0;
};

struct BandwidthChoice {
  double h = 0.0;
  double beta = kInfinity;
};

// Box kernel with a closed window: 1 on [-1, 1], 0 elsewhere.
double kernel_eval(double v) noexcept;

double kappa(double x, std::span<const Sample> samples, double h) noexcept;

std::optional<double> nw_estimate(double x, std::span<const Sample> samples,
                                  double h) noexcept;

// Confidence radius multiplier; natural logarithms, branch at kappa = 1.
double alpha(double kappa, double delta) noexcept;

// L*h + 2*sigma*alpha(kappa, delta)/kappa, or infinity when kappa == 0.
double bound_from_kappa(double kappa, double h, const BoundParams& params) noexcept;

double beta_bound(double x, std::span<const Sample> samples, double h,
                  const BoundParams& params) noexcept;

/// Minimizes beta over h in [h_min, h_max].
///
/// For the box kernel the mass is a right-continuous step function of h that
/// jumps exactly at the sample distances |x - xi|, and beta is affine
/// increasing between jumps. The minimizer is therefore one of h_min or a
/// sample distance inside the range. Ties resolve to the smallest h.
/// Throws InvalidRange when the range is empty or h_min <= 0.
BandwidthChoice optimize_bandwidth(double x, std::span<const Sample> samples,
                                   const BoundParams& params, double h_min,
                                   double h_max);

/// Golden-section search on beta(h). Not exact for the box kernel since beta
/// is not unimodal; returns the best point it evaluated.
BandwidthChoice golden_section_bandwidth(double x, std::span<const Sample> samples,
                                         const BoundParams& params, double h_min,
                                         double h_max);

LocalEvaluation evaluate(double x, std::span<const Sample> samples,
                         const KernelConfig& kernel, const BoundParams& params);

/// Same result as evaluate() on the same list, for samples sorted ascending
/// by xi. Cost is logarithmic in the sample count plus the window size.
LocalEvaluation evaluate_sorted(double x, std::span<const Sample> sorted_samples,
                                const KernelConfig& kernel, const BoundParams& params);

}  // namespace difflearn

#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "difflearn/rng.hpp"
#include "difflearn/tuple_store.hpp"

namespace difflearn {

// a*sin(x)*exp(b*x) + c
struct SinExpOffset {
  double a = 1.0;
  double b = -0.2;
  double c = 3.0;
};

// Piecewise-linear through (x, m) points sorted by x; constant outside.
struct TabulatedLipschitz {
  std::vector<std::pair<double, double>> points;
};

/// Latent phenomenon with a declared Lipschitz constant.
struct Phenomenon {
  std::variant<SinExpOffset, TabulatedLipschitz> shape = SinExpOffset{};
  double lipschitz = 1.0;

  double operator()(double x) const;

  // Largest finite-difference slope on a uniform grid over the domain.
  double empirical_lipschitz(const Domain& domain, std::size_t grid = 100001) const;

  // Throws InvalidRange when the declared constant is below the measured
  // slope (up to floating-point resolution) or the table is malformed.
  void validate(const Domain& domain) const;
};

struct GaussianNoise {
  double sigma = 1.0;
};

struct UniformBoundedNoise {
  double a = -1.0;
  double b = 1.0;
};

struct NoiseSpec {
  std::variant<GaussianNoise, UniformBoundedNoise> kind = GaussianNoise{};

  // sigma for Gaussian; sqrt of the Hoeffding proxy (b-a)^2/4 for bounded.
  double variance_proxy_sigma() const;
  void validate() const;
};

/// Per-agent data source: truncated-Gaussian inputs and additive noise, each
/// agent owning its own generator.
class AgentEnvironment {
 public:
  static constexpr std::size_t kMaxRedraws = 10000;

  AgentEnvironment(Domain domain, double input_mean, double input_std, NoiseSpec noise,
                   Rng rng);

  // Redraws until inside the domain; throws TruncationExhausted.
  double sample_input();
  double sample_noise();

  double input_mean() const noexcept { return input_mean_; }
  double input_std() const noexcept { return input_std_; }
  const NoiseSpec& noise() const noexcept { return noise_; }

 private:
  Domain domain_;
  double input_mean_;
  double input_std_;
  NoiseSpec noise_;
  Rng rng_;
  std::normal_distribution<double> standard_normal_{0.0, 1.0};
};

}  // namespace difflearn

#include "difflearn/environment.hpp"

#include <algorithm>
#include <cmath>

#include "difflearn/errors.hpp"

namespace difflearn {

double Phenomenon::operator()(double x) const {
  if (const auto* s = std::get_if<SinExpOffset>(&shape))
    return s->a * std::sin(x) * std::exp(s->b * x) + s->c;

  const auto& pts = std::get<TabulatedLipschitz>(shape).points;
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  auto hi = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  auto lo = std::prev(hi);
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

double Phenomenon::empirical_lipschitz(const Domain& domain, std::size_t grid) const {
  double slope = 0.0;
  const double step = domain.width() / static_cast<double>(grid - 1);
  double prev_x = domain.lo;
  double prev_m = (*this)(prev_x);
  for (std::size_t i = 1; i < grid; ++i) {
    const double x = i + 1 == grid ? domain.hi : domain.lo + step * static_cast<double>(i);
    const double m = (*this)(x);
    slope = std::max(slope, std::abs(m - prev_m) / (x - prev_x));
    prev_x = x;
    prev_m = m;
  }
  if (const auto* table = std::get_if<TabulatedLipschitz>(&shape)) {
    // Exact for piecewise-linear shapes.
    const auto& pts = table->points;
    for (std::size_t i = 1; i < pts.size(); ++i)
      slope = std::max(slope, std::abs(pts[i].second - pts[i - 1].second) /
                                  (pts[i].first - pts[i - 1].first));
  }
  return slope;
}

void Phenomenon::validate(const Domain& domain) const {
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
    throw InvalidRange("phenomenon lipschitz constant must be finite and non-negative");
  if (const auto* table = std::get_if<TabulatedLipschitz>(&shape)) {
    const auto& pts = table->points;
    if (pts.size() < 2) throw InvalidRange("tabulated phenomenon needs two points");
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (!(pts[i].first > pts[i - 1].first))
        throw InvalidRange("tabulated points must be strictly increasing in x");
  }
  // Slack only covers rounding in the finite differences.
  const double measured = empirical_lipschitz(domain);
  if (measured > lipschitz * (1.0 + 1e-9) + 1e-12)
    throw InvalidRange("phenomenon slope " + std::to_string(measured) +
                       " exceeds declared lipschitz constant " + std::to_string(lipschitz));
}

double NoiseSpec::variance_proxy_sigma() const {
  if (const auto* g = std::get_if<GaussianNoise>(&kind)) return g->sigma;
  const auto& u = std::get<UniformBoundedNoise>(kind);
  return (u.b - u.a) / 2.0;
}

void NoiseSpec::validate() const {
  if (const auto* g = std::get_if<GaussianNoise>(&kind)) {
    if (!(g->sigma > 0.0) || !std::isfinite(g->sigma))
      throw InvalidRange("gaussian noise sigma must be positive");
    return;
  }
  const auto& u = std::get<UniformBoundedNoise>(kind);
  if (!(u.a < u.b) || !std::isfinite(u.a) || !std::isfinite(u.b))
    throw InvalidRange("bounded noise needs a < b");
}

AgentEnvironment::AgentEnvironment(Domain domain, double input_mean, double input_std,
                                   NoiseSpec noise, Rng rng)
    : domain_(domain),
      input_mean_(input_mean),
      input_std_(input_std),
      noise_(std::move(noise)),
      rng_(std::move(rng)) {
  if (!(input_std >= 0.0) || !std::isfinite(input_std))
    throw InvalidRange("input dispersion must be finite and non-negative");
  noise_.validate();
}

double AgentEnvironment::sample_input() {
  if (input_std_ == 0.0) {
    if (domain_.contains(input_mean_)) return input_mean_;
    throw TruncationExhausted("degenerate input distribution lies outside the domain");
  }
  for (std::size_t i = 0; i < kMaxRedraws; ++i) {
    const double x = input_mean_ + input_std_ * standard_normal_(rng_);
    if (domain_.contains(x)) return x;
  }
  throw TruncationExhausted("input distribution rarely hits the domain");
}

double AgentEnvironment::sample_noise() {
  if (const auto* g = std::get_if<GaussianNoise>(&noise_.kind))
    return g->sigma * standard_normal_(rng_);
  const auto& u = std::get<UniformBoundedNoise>(noise_.kind);
  std::uniform_real_distribution<double> uniform(u.a, u.b);
  return uniform(rng_);
}

}  // namespace difflearn

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "difflearn/environment.hpp"
#include "difflearn/errors.hpp"
#include "difflearn/estimator.hpp"
#include "oracles.hpp"

using namespace difflearn;

namespace {

std::vector<Sample> at(std::initializer_list<double> xs) {
  std::vector<Sample> out;
  for (double x : xs) out.push_back({x, 0.0});
  return out;
}

std::vector<Sample> random_samples(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<Sample> out(n);
  for (auto& s : out) {
    s.xi = u(rng);
    s.y = std::sin(s.xi) + noise(rng);
  }
  return out;
}

}  // namespace

TEST_CASE("box kernel has a closed unit window") {
  CHECK(kernel_eval(0.0) == 1.0);
  CHECK(kernel_eval(1.0) == 1.0);
  CHECK(kernel_eval(-1.0) == 1.0);
  CHECK(kernel_eval(1.5) == 0.0);
  CHECK(kernel_eval(std::nextafter(1.0, 2.0)) == 0.0);
}

TEST_CASE("kernel mass counts in-window samples") {
  CHECK(kappa(1.1, at({1.0, 1.2, 3.0}), 0.2) == 2.0);
  CHECK(kappa(5.0, {}, 1.0) == 0.0);
  CHECK(kappa(1.0, at({0.5, 1.0, 3.0}), 1.0) == 2.0);
}

TEST_CASE("Nadaraya-Watson estimate is the in-window mean") {
  const std::vector<Sample> s{{1.0, 2.0}, {1.2, 4.0}, {3.0, 10.0}};
  REQUIRE(nw_estimate(1.1, s, 0.2).has_value());
  CHECK(*nw_estimate(1.1, s, 0.2) == 3.0);
  CHECK_FALSE(nw_estimate(0.0, std::vector<Sample>{{10.0, 7.0}}, 0.5).has_value());
}

TEST_CASE("noise-free estimate stays inside the Lipschitz envelope") {
  const Phenomenon m{SinExpOffset{}, 1.0};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.5, 2.5);
  std::vector<Sample> s(50);
  for (auto& e : s) {
    e.xi = u(rng);
    e.y = m(e.xi);
  }
  // Brute-force mean of m over the in-window arguments.
  double sum = 0.0, count = 0.0;
  for (const auto& e : s)
    if (std::abs(2.0 - e.xi) <= 0.5) {
      sum += m(e.xi);
      count += 1.0;
    }
  const double brute = sum / count;
  const auto est = nw_estimate(2.0, s, 0.5);
  REQUIRE(est.has_value());
  CHECK(*est == doctest::Approx(brute).epsilon(1e-14));
  CHECK(std::abs(*est - m(2.0)) <= 1.0 * 0.5);
}

TEST_CASE("alpha matches high-precision closed form values") {
  // Frozen from a 30-digit evaluation of sqrt(ln(sqrt(2)/0.01)) and
  // sqrt(4 ln(sqrt(5)/0.1)).
  CHECK(alpha(1.0, 0.01) == doctest::Approx(2.22525139619506003).epsilon(1e-15));
  CHECK(alpha(4.0, 0.1) == doctest::Approx(3.52550935282327445).epsilon(1e-15));
  // Both branch formulas agree at kappa = 1.
  CHECK(alpha(1.0, 0.01) == std::sqrt(1.0 * std::log(std::sqrt(2.0) / 0.01)));
  CHECK(alpha(0.5, 0.01) == alpha(1.0, 0.01));
}

TEST_CASE("alpha is continuous at the branch point and non-decreasing above it") {
  for (double delta : {0.1, 0.01, 1e-4}) {
    const double at_one = alpha(1.0, delta);
    const double above = alpha(std::nextafter(1.0, 2.0), delta);
    CHECK(above == doctest::Approx(at_one).epsilon(1e-12));
    double prev = at_one;
    for (double k = 1.0; k <= 5000.0; k *= 1.37) {
      const double a = alpha(k, delta);
      CHECK(a >= prev);
      prev = a;
    }
  }
}

TEST_CASE("beta bound closed form") {
  const BoundParams p{1.0, 0.3, 0.01};
  // kappa = 2: 0.5 + 2*0.3*sqrt(2 ln(sqrt(3)/0.01))/2, frozen from mpmath.
  const auto s = at({2.0, 2.1});
  CHECK(beta_bound(2.0, s, 0.5, p) == doctest::Approx(1.46322673315164292).epsilon(1e-15));
  CHECK(std::isinf(beta_bound(9.0, s, 0.5, p)));
  CHECK(std::isinf(bound_from_kappa(0.0, 0.5, p)));
  // Vanishing noise leaves only the bias term.
  const BoundParams tiny{1.0, 1e-15, 0.01};
  CHECK(beta_bound(2.0, s, 0.5, tiny) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("beta is strictly increasing in h while the mass is constant") {
  const BoundParams p{1.0, 0.4, 0.05};
  const auto s = at({0.0, 0.3, 2.0});
  // Mass stays 2 for h in [0.3, 2).
  double prev = beta_bound(0.0, s, 0.3, p);
  for (double h = 0.35; h < 1.99; h += 0.05) {
    const double b = beta_bound(0.0, s, h, p);
    CHECK(kappa(0.0, s, h) == 2.0);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("kernel mass is non-decreasing in h") {
  std::mt19937_64 rng(3);
  const auto s = random_samples(rng, 300, 0.0, 10.0);
  double prev = 0.0;
  for (double h = 0.001; h < 6.0; h *= 1.1) {
    const double k = kappa(4.2, s, h);
    CHECK(k == oracle::window_count(4.2, s, h));
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("estimate is invariant under permutation of the samples") {
  std::mt19937_64 rng(5);
  auto s = random_samples(rng, 200, 0.0, 10.0);
  const double ref = *nw_estimate(5.0, s, 1.0);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(s.begin(), s.end(), rng);
    CHECK(*nw_estimate(5.0, s, 1.0) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(kappa(5.0, s, 1.0) == kappa(5.0, s, 1.0));
  }
}

TEST_CASE("optimize_bandwidth picks the only finite candidate") {
  const BoundParams p{1.0, 0.3, 0.01};
  const auto choice = optimize_bandwidth(5.0, at({5.3}), p, 0.01, 1.0);
  CHECK(choice.h == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(choice.beta == oracle::closed_form_beta(1, choice.h, 1.0, 0.3, 0.01));
}

TEST_CASE("optimize_bandwidth without reachable samples") {
  const BoundParams p{1.0, 0.3, 0.01};
  const auto none = optimize_bandwidth(5.0, at({0.0, 9.0}), p, 0.05, 1.0);
  CHECK(none.h == 0.05);
  CHECK(std::isinf(none.beta));
  const auto empty = optimize_bandwidth(5.0, {}, p, 0.05, 1.0);
  CHECK(empty.h == 0.05);
  CHECK(std::isinf(empty.beta));
}

TEST_CASE("optimize_bandwidth rejects an empty range") {
  const BoundParams p;
  CHECK_THROWS_AS(optimize_bandwidth(0.0, {}, p, 1.0, 1.0), InvalidRange);
  CHECK_THROWS_AS(optimize_bandwidth(0.0, {}, p, 2.0, 1.0), InvalidRange);
  CHECK_THROWS_AS(optimize_bandwidth(0.0, {}, p, 0.0, 1.0), InvalidRange);
}

TEST_CASE("optimize_bandwidth ties resolve to the smallest h") {
  // L = 0 makes beta depend on the mass only, so every h after the last jump
  // ties; the first jump that reaches the final mass must win.
  const BoundParams p{0.0, 0.3, 0.01};
  const auto s = at({1.0, 1.5});
  const auto choice = optimize_bandwidth(1.0, s, p, 0.1, 3.0);
  CHECK(choice.h == 0.5);
}

TEST_CASE("optimize_bandwidth matches a dense-grid brute force") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ux(0.0, 10.0);
  for (int instance = 0; instance < 20; ++instance) {
    const auto s = random_samples(rng, 100, 0.0, 10.0);
    const double x = ux(rng);
    const BoundParams p{1.0, 0.5, 0.01};
    const auto choice = optimize_bandwidth(x, s, p, 0.01, 3.0);
    const auto grid = oracle::dense_grid_min(x, s, 1.0, 0.5, 0.01, 0.01, 3.0, 10000);
    CHECK(choice.beta <= grid.beta);
    // The grid is within one step of the optimum's right neighbourhood.
    const double step = (3.0 - 0.01) / 9999.0;
    CHECK(grid.beta - choice.beta <= 1.0 * step + 1e-12);
    CHECK(choice.beta == oracle::closed_form_beta(oracle::window_count(x, s, choice.h), choice.h,
                                                  1.0, 0.5, 0.01));
  }
}

TEST_CASE("golden section never beats the exact breakpoint search") {
  std::mt19937_64 rng(23);
  for (int instance = 0; instance < 20; ++instance) {
    const auto s = random_samples(rng, 80, 0.0, 10.0);
    const BoundParams p{1.0, 0.5, 0.01};
    const auto exact = optimize_bandwidth(5.0, s, p, 0.01, 2.0);
    const auto gss = golden_section_bandwidth(5.0, s, p, 0.01, 2.0);
    CHECK(gss.h >= 0.01);
    CHECK(gss.h <= 2.0);
    CHECK(gss.beta >= exact.beta);
    CHECK(gss.beta == beta_bound(5.0, s, gss.h, p));
  }
}

TEST_CASE("evaluate with a fixed bandwidth composes the primitives") {
  std::mt19937_64 rng(29);
  const auto s = random_samples(rng, 60, 0.0, 4.0);
  const BoundParams p{1.0, 0.5, 0.01};
  const auto e = evaluate(2.0, s, KernelConfig::fixed(0.4), p);
  CHECK(e.h_used == 0.4);
  CHECK(e.kappa == kappa(2.0, s, 0.4));
  CHECK(*e.mu_hat == *nw_estimate(2.0, s, 0.4));
  CHECK(e.beta == beta_bound(2.0, s, 0.4, p));
}

TEST_CASE("per-query optimal bandwidth beats every fixed bandwidth in range") {
  std::mt19937_64 rng(31);
  const auto s = random_samples(rng, 150, 0.0, 10.0);
  const BoundParams p{1.0, 0.5, 0.01};
  const auto opt = evaluate(6.0, s, KernelConfig::optimal(0.05, 2.0), p);
  for (int i = 0; i <= 2000; ++i) {
    const double h = 0.05 + (2.0 - 0.05) * i / 2000.0;
    CHECK(opt.beta <= evaluate(6.0, s, KernelConfig::fixed(h), p).beta);
  }
}

TEST_CASE("evaluate on no samples") {
  const BoundParams p;
  const auto fixed = evaluate(1.0, {}, KernelConfig::fixed(0.7), p);
  CHECK_FALSE(fixed.mu_hat.has_value());
  CHECK(fixed.kappa == 0.0);
  CHECK(std::isinf(fixed.beta));
  CHECK(fixed.h_used == 0.7);
  const auto opt = evaluate(1.0, {}, KernelConfig::optimal(0.02, 1.0), p);
  CHECK(opt.h_used == 0.02);
  CHECK(std::isinf(opt.beta));
}

TEST_CASE("sorted fast path is bit-identical to the generic evaluation") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ux(-1.0, 11.0);
  const BoundParams p{1.0, 0.3, 0.01};
  for (int instance = 0; instance < 30; ++instance) {
    auto s = random_samples(rng, 400, 0.0, 10.0);
    // Duplicated arguments exercise equal-distance jumps.
    s.push_back(s[3]);
    s.push_back(s[3]);
    std::stable_sort(s.begin(), s.end(), [](auto& a, auto& b) { return a.xi < b.xi; });
    for (const auto& kernel : {KernelConfig::fixed(0.3), KernelConfig::optimal(0.01, 2.0),
                               KernelConfig::optimal(0.01, 2.0, BandwidthSearch::GoldenSection)}) {
      const double x = instance % 3 == 0 ? s[3].xi : ux(rng);
      const auto a = evaluate(x, s, kernel, p);
      const auto b = evaluate_sorted(x, s, kernel, p);
      CHECK(a.h_used == b.h_used);
      CHECK(a.kappa == b.kappa);
      CHECK(a.beta == b.beta);
      CHECK(a.mu_hat == b.mu_hat);
    }
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(KernelConfig::fixed(0.0).validate(), InvalidRange);
  CHECK_THROWS_AS(KernelConfig::optimal(0.5, 0.5).validate(), InvalidRange);
  CHECK_NOTHROW(KernelConfig::optimal(0.1, 0.5).validate());
  CHECK_THROWS_AS((BoundParams{1.0, 0.0, 0.1}.validate()), InvalidRange);
  CHECK_THROWS_AS((BoundParams{1.0, 1.0, 1.0}.validate()), InvalidRange);
  CHECK_THROWS_AS((BoundParams{-1.0, 1.0, 0.5}.validate()), InvalidRange);
}

#include "difflearn/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "difflearn/errors.hpp"

namespace difflearn {

namespace {

void check_range(const std::array<double, 2>& r, const std::string& field) {
  if (!std::isfinite(r[0]) || !std::isfinite(r[1]))
    throw ConfigInvalid(field, "bounds must be finite");
  if (r[0] > r[1]) throw ConfigInvalid(field, "lower bound exceeds upper bound");
}

double draw(const std::array<double, 2>& r, Rng& rng) {
  if (r[0] == r[1]) return r[0];
  std::uniform_real_distribution<double> uniform(r[0], r[1]);
  return uniform(rng);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (node_count < 2) throw ConfigInvalid("node_count", "must be at least 2");
  if (horizon < 1) throw ConfigInvalid("horizon", "must be at least 1");
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    throw ConfigInvalid("domain", "must satisfy lo < hi");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigInvalid("delta", "must lie in (0,1)");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
    throw ConfigInvalid("lipschitz", "must be finite and non-negative");
  try {
    kernel.validate();
  } catch (const InvalidRange& e) {
    throw ConfigInvalid("kernel", e.what());
  }
  if (topology.kind == TopologyKind::RandomGeometric && !(topology.radius > 0.0))
    throw ConfigInvalid("topology.radius", "must be positive");
  if (topology.kind == TopologyKind::ErdosRenyi &&
      !(topology.edge_probability > 0.0 && topology.edge_probability <= 1.0))
    throw ConfigInvalid("topology.edge_probability", "must lie in (0,1]");
  if (topology.max_attempts < 1) throw ConfigInvalid("topology.max_attempts", "must be positive");

  check_range(input.mean_range, "input.mean_range");
  check_range(input.std_range, "input.std_range");
  if (input.std_range[0] < 0.0) throw ConfigInvalid("input.std_range", "must be non-negative");
  check_range(noise.scale_range, "noise.scale_range");
  if (noise.scale_range[0] < 0.0 || !(noise.scale_range[1] > 0.0))
    throw ConfigInvalid("noise.scale_range", "must be non-negative with a positive upper bound");

  if (request.kind == RequestStrategyKind::MaxBoundPoint && request.grid_size < 2)
    throw ConfigInvalid("request.grid_size", "must be at least 2");

  if (phenomenon.lipschitz > lipschitz)
    throw ConfigInvalid("phenomenon.lipschitz", "exceeds the lipschitz constant used in bounds");
  try {
    phenomenon.validate(domain);
  } catch (const InvalidRange& e) {
    throw ConfigInvalid("phenomenon", e.what());
  }

  if (metrics.grid_size < 2) throw ConfigInvalid("metrics.grid_size", "must be at least 2");
  for (double d : metrics.evolution_deltas)
    if (!(d > 0.0 && d < 1.0))
      throw ConfigInvalid("metrics.evolution_deltas", "each entry must lie in (0,1)");
  for (Round r : metrics.grid_rounds)
    if (r < 1 || r > horizon)
      throw ConfigInvalid("metrics.grid_rounds", "rounds must lie in [1, horizon]");
}

ScenarioConfig reference_scenario() {
  ScenarioConfig c;
  c.node_count = 50;
  c.horizon = 1000;
  c.domain = {0.0, 10.0};
  c.delta = 0.01;
  c.lipschitz = 1.0;
  c.kernel = KernelConfig::optimal(0.01, 2.0);
  c.topology = {TopologyKind::RandomGeometric, 0.25, 0.1, 1000};
  c.input = {{0.0, 10.0}, {0.2, 1.0}};
  c.noise = {NoiseKind::Gaussian, {0.0, 0.7}};
  c.request = {RequestStrategyKind::UniformOverD, 101};
  c.phenomenon = {SinExpOffset{1.0, -0.2, 3.0}, 1.0};
  c.seed = 2023;
  c.metrics.grid_rounds = {1, 10, 100, 500, 1000};
  c.metrics.evolution_every = 10;
  c.metrics.grid_size = 101;
  c.metrics.evolution_deltas = {0.01, 0.001, 0.0001};
  return c;
}

std::vector<AgentSetup> draw_agent_setups(const ScenarioConfig& config) {
  std::vector<AgentSetup> out;
  out.reserve(config.node_count);
  for (std::size_t k = 0; k < config.node_count; ++k) {
    Rng rng = make_stream(config.seed, StreamTag::AgentParams, k);
    AgentSetup s;
    s.input_mean = draw(config.input.mean_range, rng);
    s.input_std = draw(config.input.std_range, rng);
    double scale = 0.0;
    // Open at zero: a zero noise scale has no valid variance proxy.
    while (!(scale > 0.0)) scale = draw(config.noise.scale_range, rng);
    if (config.noise.kind == NoiseKind::Gaussian)
      s.noise.kind = GaussianNoise{scale};
    else
      s.noise.kind = UniformBoundedNoise{-scale, scale};
    out.push_back(s);
  }
  return out;
}

}  // namespace difflearn

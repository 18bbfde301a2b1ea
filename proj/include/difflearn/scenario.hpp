#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "difflearn/agent.hpp"
#include "difflearn/environment.hpp"
#include "difflearn/estimator.hpp"
#include "difflearn/graph.hpp"

namespace difflearn {

enum class NoiseKind { Gaussian, UniformBounded };

// Per-agent parameters are drawn uniformly from these ranges at setup. A
// degenerate range [v, v] fixes the value for every agent.
struct InputSpec {
  std::array<double, 2> mean_range{0.0, 10.0};
  std::array<double, 2> std_range{0.2, 1.0};
};

struct NoiseConfig {
  NoiseKind kind = NoiseKind::Gaussian;
  // Gaussian: sigma; UniformBounded: half-width w of U(-w, w). Zero draws are
  // redrawn so the range may be open at 0.
  std::array<double, 2> scale_range{0.0, 0.7};
};

struct MetricsSchedule {
  std::vector<Round> grid_rounds{1, 10, 100, 500, 1000};
  Round evolution_every = 10;  // 0 disables
  std::size_t grid_size = 101;
  // Extra confidence levels for the bound-evolution sweep; each entry other
  // than the scenario delta costs one more simulation.
  std::vector<double> evolution_deltas{};
};

struct OutputPaths {
  std::string grid_csv = "grid_report.csv";
  std::string evolution_csv = "bound_evolution.csv";
  std::string topology = "topology.txt";
  std::string message_log;  // empty disables
  bool plots = false;
};

struct ScenarioConfig {
  std::size_t node_count = 50;
  Round horizon = 1000;
  Domain domain{0.0, 10.0};
  double delta = 0.01;
  double lipschitz = 1.0;
  KernelConfig kernel = KernelConfig::optimal(0.01, 2.0);
  TopologySpec topology;
  InputSpec input;
  NoiseConfig noise;
  RequestStrategy request;
  Phenomenon phenomenon;
  std::size_t store_capacity = TupleStore::kUnbounded;
  std::uint64_t seed = 0;
  MetricsSchedule metrics;
  OutputPaths outputs;

  // Throws ConfigInvalid(field, reason).
  void validate() const;
};

// The 50-node experiment: box kernel, per-query bandwidth, uniform requests.
ScenarioConfig reference_scenario();

// Per-agent parameters drawn from the master seed.
struct AgentSetup {
  double input_mean = 0.0;
  double input_std = 0.0;
  NoiseSpec noise;
};

std::vector<AgentSetup> draw_agent_setups(const ScenarioConfig& config);

}  // namespace difflearn

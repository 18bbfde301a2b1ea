#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "difflearn/agent.hpp"
#include "difflearn/environment.hpp"

namespace difflearn {

struct GridPoint {
  double x = 0.0;
  double m_true = 0.0;
  double m_hat = 0.0;
  double bound = kInfinity;
  ExploitSource source = ExploitSource::Local;
  bool usable = true;
  double abs_error = 0.0;  // NaN when not usable
};

struct GridReport {
  Round round = 0;
  AgentId agent = 0;
  std::vector<GridPoint> points;
};

struct EvolutionRow {
  Round round = 0;
  AgentId agent = 0;
  double delta = 0.0;
  double mean_bound = 0.0;
  double max_bound = 0.0;
};

// Exploit every agent on a uniform grid over its domain.
std::vector<GridReport> collect_grid(std::span<const Agent> agents, const Phenomenon& truth,
                                     std::size_t grid_size, Round round, int workers = 1);

EvolutionRow summarize(const GridReport& report, double delta);

}  // namespace difflearn

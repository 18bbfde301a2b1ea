#include "difflearn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "difflearn/parallel.hpp"

namespace difflearn {

std::vector<GridReport> collect_grid(std::span<const Agent> agents, const Phenomenon& truth,
                                     std::size_t grid_size, Round round, int workers) {
  std::vector<GridReport> reports(agents.size());
  parallel_for(agents.size(), workers, [&](std::size_t k) {
    const Agent& agent = agents[k];
    GridReport& report = reports[k];
    report.round = round;
    report.agent = agent.id();
    const auto grid = uniform_grid(agent.config().domain, grid_size);
    report.points.reserve(grid.size());
    for (double x : grid) {
      const ExploitResult r = agent.exploit(x);
      GridPoint p;
      p.x = x;
      p.m_true = truth(x);
      p.m_hat = r.m_hat;
      p.bound = r.bound;
      p.source = r.source;
      p.usable = r.usable;
      p.abs_error = r.usable ? std::abs(r.m_hat - p.m_true)
                             : std::numeric_limits<double>::quiet_NaN();
      report.points.push_back(p);
    }
  });
  return reports;
}

EvolutionRow summarize(const GridReport& report, double delta) {
  EvolutionRow row;
  row.round = report.round;
  row.agent = report.agent;
  row.delta = delta;
  double sum = 0.0;
  double worst = 0.0;
  for (const auto& p : report.points) {
    sum += p.bound;
    worst = std::max(worst, p.bound);
  }
  row.mean_bound = report.points.empty() ? 0.0 : sum / static_cast<double>(report.points.size());
  row.max_bound = worst;
  return row;
}

}  // namespace difflearn

#include "difflearn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "difflearn/errors.hpp"
#include "difflearn/rng.hpp"

namespace difflearn {

void Graph::add_edge(AgentId a, AgentId b) {
  if (a >= node_count() || b >= node_count()) throw InvalidRange("edge endpoint out of range");
  if (a == b) throw InvalidRange("self-loops are not allowed");
  auto insert_sorted = [](std::vector<AgentId>& list, AgentId v) {
    auto pos = std::lower_bound(list.begin(), list.end(), v);
    if (pos == list.end() || *pos != v) list.insert(pos, v);
  };
  insert_sorted(adjacency_[a], b);
  insert_sorted(adjacency_[b], a);
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t degree_sum = 0;
  for (const auto& list : adjacency_) degree_sum += list.size();
  return degree_sum / 2;
}

bool Graph::has_edge(AgentId a, AgentId b) const {
  const auto& list = adjacency_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<AgentId, AgentId>> Graph::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (AgentId i = 0; i < node_count(); ++i)
    for (AgentId j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool Graph::connected() const {
  if (node_count() == 0) return true;
  std::vector<char> seen(node_count(), 0);
  std::queue<AgentId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const AgentId v = frontier.front();
    frontier.pop();
    for (AgentId w : adjacency_[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      frontier.push(w);
    }
  }
  return reached == node_count();
}

namespace {

Graph random_geometric(std::size_t n, double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pos(n);
  for (auto& p : pos) {
    p.first = unit(rng);
    p.second = unit(rng);
  }
  Graph g(n);
  const double r2 = radius * radius;
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = i + 1; j < n; ++j) {
      const double dx = pos[i].first - pos[j].first;
      const double dy = pos[i].second - pos[j].second;
      if (dx * dx + dy * dy <= r2) g.add_edge(i, j);
    }
  }
  return g;
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (AgentId i = 0; i < n; ++i)
    for (AgentId j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

}  // namespace

Graph generate_topology(const TopologySpec& spec, std::size_t node_count,
                        std::uint64_t seed) {
  if (node_count < 2) throw InvalidRange("topology needs at least two nodes");

  switch (spec.kind) {
    case TopologyKind::Star: {
      Graph g(node_count);
      for (AgentId k = 1; k < node_count; ++k) g.add_edge(0, k);
      return g;
    }
    case TopologyKind::Ring: {
      Graph g(node_count);
      for (AgentId k = 0; k + 1 < node_count; ++k) g.add_edge(k, k + 1);
      if (node_count > 2) g.add_edge(static_cast<AgentId>(node_count - 1), 0);
      return g;
    }
    case TopologyKind::RandomGeometric:
      if (!(spec.radius > 0.0)) throw InvalidRange("radius must be positive");
      break;
    case TopologyKind::ErdosRenyi:
      if (!(spec.edge_probability > 0.0 && spec.edge_probability <= 1.0))
        throw InvalidRange("edge probability must lie in (0,1]");
      break;
  }

  Rng rng = make_stream(seed, StreamTag::Topology);
  for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
    Graph g = spec.kind == TopologyKind::RandomGeometric
                  ? random_geometric(node_count, spec.radius, rng)
                  : erdos_renyi(node_count, spec.edge_probability, rng);
    if (g.connected()) return g;
  }
  throw TopologyUnconnectable("no connected topology after " +
                              std::to_string(spec.max_attempts) + " attempts");
}

std::string edge_list_text(const Graph& graph) {
  std::ostringstream out;
  for (const auto& [i, j] : graph.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

void write_edge_list(const Graph& graph, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IOFailure("cannot open " + path + " for writing");
  file << edge_list_text(graph);
  if (!file) throw IOFailure("failed writing " + path);
}

}  // namespace difflearn

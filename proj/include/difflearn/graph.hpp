#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "difflearn/tuple_store.hpp"

namespace difflearn {

/// Undirected simple graph with sorted adjacency lists.
class Graph {
 public:
  explicit Graph(std::size_t node_count = 0) : adjacency_(node_count) {}

  // Ignores duplicates; throws InvalidRange on self-loops or unknown nodes.
  void add_edge(AgentId a, AgentId b);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept;
  std::span<const AgentId> neighbors(AgentId k) const { return adjacency_.at(k); }
  bool has_edge(AgentId a, AgentId b) const;

  // (i, j) pairs with i < j, ascending.
  std::vector<std::pair<AgentId, AgentId>> edges() const;

  bool connected() const;

 private:
  std::vector<std::vector<AgentId>> adjacency_;
};

enum class TopologyKind { RandomGeometric, ErdosRenyi, Star, Ring };

struct TopologySpec {
  TopologyKind kind = TopologyKind::RandomGeometric;
  double radius = 0.25;            // RandomGeometric, unit square
  double edge_probability = 0.1;   // ErdosRenyi
  std::size_t max_attempts = 1000;
};

/// Builds a connected topology. Random kinds resample until connected and
/// throw TopologyUnconnectable once the attempt budget is spent.
Graph generate_topology(const TopologySpec& spec, std::size_t node_count,
                        std::uint64_t seed);

// "i j" per line, 0-based, ascending.
std::string edge_list_text(const Graph& graph);
void write_edge_list(const Graph& graph, const std::string& path);

}  // namespace difflearn

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "difflearn/agent.hpp"
#include "difflearn/environment.hpp"
#include "difflearn/graph.hpp"
#include "difflearn/metrics.hpp"
#include "difflearn/scenario.hpp"

namespace difflearn {

struct RequestPayload {
  double xi = 0.0;
};

struct SharePayload {
  Tuple tuple;
};

enum class MessageKind { Request = 0, Share = 1 };

/// Inter-agent message. The payload types are the only things that cross the
/// network: a requested argument, or a tuple (argument, estimate, bound,
/// metadata). No raw output measurement has a field to live in.
struct Message {
  AgentId from = 0;
  AgentId to = 0;
  Round send_round = 0;
  std::variant<RequestPayload, SharePayload> payload;

  MessageKind kind() const noexcept {
    return payload.index() == 0 ? MessageKind::Request : MessageKind::Share;
  }
  Round delivery_round() const noexcept { return send_round + 1; }
};

// Delivery order: (send_round, from, to, kind).
bool delivery_before(const Message& a, const Message& b) noexcept;

// One line-delimited JSON record: kind, from, to, send_round, payload.
std::string to_log_line(const Message& m);

using MessageSink = std::function<void(const Message&)>;

struct SimOptions {
  int workers = 0;          // 0 = OpenMP default
  MessageSink message_sink;  // called once per sent message, in delivery order
  bool collect_evolution = true;
};

struct SimStats {
  std::uint64_t requests_sent = 0;
  std::uint64_t requests_delivered = 0;
  std::uint64_t shares_sent = 0;
  std::uint64_t shares_delivered = 0;
  std::uint64_t consumed_in_send_round = 0;  // must stay 0
};

struct SimResult {
  Graph graph;
  std::vector<AgentSetup> setups;
  std::vector<Agent> agents;
  std::vector<GridReport> grid_reports;  // ordered by (round, agent)
  std::vector<EvolutionRow> evolution;   // ordered by (round, agent)
  SimStats stats;
};

/// Runs the round-based protocol. Within a round every agent, in order:
/// samples and observes, consumes the shares then the requests sent to it in
/// the previous round (answering each request with its nearest tuple), and
/// broadcasts a new request to all neighbours. Agents of one round run in
/// parallel; the outboxes are merged and sorted at the round boundary, so the
/// result is independent of the worker count.
SimResult run(const ScenarioConfig& config, const SimOptions& options = {});

/// Single-threaded reference of run() with one global in-flight queue. Kept
/// for equivalence testing and benchmarking; produces identical results.
SimResult run_reference(const ScenarioConfig& config, const SimOptions& options = {});

// Bound evolution for the scenario delta plus every metrics.evolution_deltas
// entry, ordered by (delta as listed, round, agent). The scenario delta's rows
// come from `primary` without re-running.
std::vector<EvolutionRow> evolution_sweep(const ScenarioConfig& config, const SimResult& primary,
                                          int workers = 0);

// Shared setup for both schedulers.
struct World {
  Graph graph;
  std::vector<AgentSetup> setups;
  std::vector<Agent> agents;
  std::vector<AgentEnvironment> environments;
};

World build_world(const ScenarioConfig& config);

}  // namespace difflearn

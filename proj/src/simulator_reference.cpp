#include <algorithm>

#include "difflearn/simulator.hpp"

namespace difflearn {

// Literal serial reading of the protocol: one global queue of messages sent in
// the previous round, scanned per agent in delivery order.
SimResult run_reference(const ScenarioConfig& config, const SimOptions& options) {
  World w = build_world(config);
  const std::size_t n = w.agents.size();
  std::vector<Message> in_flight;
  SimResult result;

  for (Round t = 1; t <= config.horizon; ++t) {
    std::vector<Message> sent;
    for (AgentId k = 0; k < n; ++k) {
      Agent& agent = w.agents[k];
      AgentEnvironment& env = w.environments[k];

      const double xi = env.sample_input();
      const double y = config.phenomenon(xi) + env.sample_noise();
      agent.observe(xi, y, t);

      for (const Message& m : in_flight) {
        if (m.to != k || m.kind() != MessageKind::Share) continue;
        if (m.delivery_round() != t) ++result.stats.consumed_in_send_round;
        ++result.stats.shares_delivered;
        agent.receive_tuple(std::get<SharePayload>(m.payload).tuple);
      }
      for (const Message& m : in_flight) {
        if (m.to != k || m.kind() != MessageKind::Request) continue;
        if (m.delivery_round() != t) ++result.stats.consumed_in_send_round;
        ++result.stats.requests_delivered;
        if (auto tuple = agent.answer_request(std::get<RequestPayload>(m.payload).xi))
          sent.push_back({k, m.from, t, SharePayload{*tuple}});
      }

      const double xi_req = agent.select_request();
      for (AgentId l : w.graph.neighbors(k)) sent.push_back({k, l, t, RequestPayload{xi_req}});
    }

    std::sort(sent.begin(), sent.end(), delivery_before);
    for (const Message& m : sent) {
      if (m.kind() == MessageKind::Request)
        ++result.stats.requests_sent;
      else
        ++result.stats.shares_sent;
      if (options.message_sink) options.message_sink(m);
    }
    in_flight = std::move(sent);

    const auto& schedule = config.metrics;
    const bool grid = std::find(schedule.grid_rounds.begin(), schedule.grid_rounds.end(), t) !=
                      schedule.grid_rounds.end();
    const bool evolution = options.collect_evolution && schedule.evolution_every > 0 &&
                           (t == 1 || t % schedule.evolution_every == 0);
    if (grid || evolution) {
      auto reports = collect_grid(w.agents, config.phenomenon, schedule.grid_size, t, 1);
      if (evolution)
        for (const auto& r : reports) result.evolution.push_back(summarize(r, config.delta));
      if (grid)
        for (auto& r : reports) result.grid_reports.push_back(std::move(r));
    }
  }

  result.graph = std::move(w.graph);
  result.setups = std::move(w.setups);
  result.agents = std::move(w.agents);
  return result;
}

}  // namespace difflearn

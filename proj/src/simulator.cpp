#include "difflearn/simulator.hpp"

#include <algorithm>

#include <json.hpp>

#include "difflearn/errors.hpp"
#include "difflearn/parallel.hpp"

namespace difflearn {

bool delivery_before(const Message& a, const Message& b) noexcept {
  return std::make_tuple(a.send_round, a.from, a.to, static_cast<int>(a.kind())) <
         std::make_tuple(b.send_round, b.from, b.to, static_cast<int>(b.kind()));
}

std::string to_log_line(const Message& m) {
  nlohmann::ordered_json record;
  record["kind"] = m.kind() == MessageKind::Request ? "request" : "share";
  record["from"] = m.from;
  record["to"] = m.to;
  record["send_round"] = m.send_round;
  if (const auto* req = std::get_if<RequestPayload>(&m.payload)) {
    record["payload"] = {{"xi", req->xi}};
  } else {
    const Tuple& t = std::get<SharePayload>(m.payload).tuple;
    record["payload"] = {{"xi", t.xi},
                         {"mu_hat", t.mu_hat},
                         {"beta", t.beta},
                         {"origin", t.origin},
                         {"created_at", t.created_at}};
  }
  return record.dump();
}

World build_world(const ScenarioConfig& config) {
  config.validate();
  World w;
  w.graph = generate_topology(config.topology, config.node_count, config.seed);
  w.setups = draw_agent_setups(config);
  w.agents.reserve(config.node_count);
  w.environments.reserve(config.node_count);
  for (std::size_t k = 0; k < config.node_count; ++k) {
    const AgentSetup& s = w.setups[k];
    AgentConfig ac;
    ac.id = static_cast<AgentId>(k);
    ac.domain = config.domain;
    ac.bound = {config.lipschitz, s.noise.variance_proxy_sigma(), config.delta};
    ac.kernel = config.kernel;
    ac.strategy = config.request;
    ac.store_capacity = config.store_capacity;
    w.agents.emplace_back(ac, make_stream(config.seed, StreamTag::Requests, k));
    w.environments.emplace_back(config.domain, s.input_mean, s.input_std, s.noise,
                                make_stream(config.seed, StreamTag::Environment, k));
  }
  return w;
}

namespace {

struct AgentCounters {
  std::uint64_t requests_delivered = 0;
  std::uint64_t shares_delivered = 0;
  std::uint64_t early = 0;
};

// One agent's full round. Touches only agent k's state and its own outbox.
void step_agent(World& w, const Phenomenon& truth, AgentId k, Round t,
                const std::vector<Message>& inbox, std::vector<Message>& outbox,
                AgentCounters& counters) {
  Agent& agent = w.agents[k];
  AgentEnvironment& env = w.environments[k];

  const double xi = env.sample_input();
  const double y = truth(xi) + env.sample_noise();
  agent.observe(xi, y, t);

  for (const Message& m : inbox) {
    if (m.kind() != MessageKind::Share) continue;
    if (m.delivery_round() != t) ++counters.early;
    ++counters.shares_delivered;
    agent.receive_tuple(std::get<SharePayload>(m.payload).tuple);
  }
  for (const Message& m : inbox) {
    if (m.kind() != MessageKind::Request) continue;
    if (m.delivery_round() != t) ++counters.early;
    ++counters.requests_delivered;
    if (auto tuple = agent.answer_request(std::get<RequestPayload>(m.payload).xi))
      outbox.push_back({k, m.from, t, SharePayload{*tuple}});
  }

  const double xi_req = agent.select_request();
  for (AgentId l : w.graph.neighbors(k)) outbox.push_back({k, l, t, RequestPayload{xi_req}});
}

bool is_grid_round(const MetricsSchedule& schedule, Round t) {
  return std::find(schedule.grid_rounds.begin(), schedule.grid_rounds.end(), t) !=
         schedule.grid_rounds.end();
}

bool is_evolution_round(const MetricsSchedule& schedule, Round t) {
  return schedule.evolution_every > 0 && (t == 1 || t % schedule.evolution_every == 0);
}

}  // namespace

SimResult run(const ScenarioConfig& config, const SimOptions& options) {
  World w = build_world(config);
  const std::size_t n = w.agents.size();
  std::vector<std::vector<Message>> inbox(n);
  std::vector<std::vector<Message>> outbox(n);
  std::vector<AgentCounters> counters(n);
  SimResult result;

  for (Round t = 1; t <= config.horizon; ++t) {
    parallel_for(n, options.workers, [&](std::size_t k) {
      step_agent(w, config.phenomenon, static_cast<AgentId>(k), t, inbox[k], outbox[k],
                 counters[k]);
    });

    // Round boundary: the only point where agents' effects meet.
    std::vector<Message> in_flight;
    for (auto& box : outbox) {
      in_flight.insert(in_flight.end(), std::make_move_iterator(box.begin()),
                       std::make_move_iterator(box.end()));
      box.clear();
    }
    std::sort(in_flight.begin(), in_flight.end(), delivery_before);
    for (auto& box : inbox) box.clear();
    for (Message& m : in_flight) {
      if (m.kind() == MessageKind::Request)
        ++result.stats.requests_sent;
      else
        ++result.stats.shares_sent;
      if (options.message_sink) options.message_sink(m);
      inbox[m.to].push_back(std::move(m));
    }

    const bool grid = is_grid_round(config.metrics, t);
    const bool evolution = options.collect_evolution && is_evolution_round(config.metrics, t);
    if (grid || evolution) {
      auto reports = collect_grid(w.agents, config.phenomenon, config.metrics.grid_size, t,
                                  options.workers);
      if (evolution)
        for (const auto& r : reports) result.evolution.push_back(summarize(r, config.delta));
      if (grid)
        for (auto& r : reports) result.grid_reports.push_back(std::move(r));
    }
  }

  for (const auto& c : counters) {
    result.stats.requests_delivered += c.requests_delivered;
    result.stats.shares_delivered += c.shares_delivered;
    result.stats.consumed_in_send_round += c.early;
  }
  result.graph = std::move(w.graph);
  result.setups = std::move(w.setups);
  result.agents = std::move(w.agents);
  return result;
}

std::vector<EvolutionRow> evolution_sweep(const ScenarioConfig& config, const SimResult& primary,
                                          int workers) {
  std::vector<EvolutionRow> rows = primary.evolution;
  std::vector<double> done{config.delta};
  for (double delta : config.metrics.evolution_deltas) {
    if (std::find(done.begin(), done.end(), delta) != done.end()) continue;
    done.push_back(delta);
    ScenarioConfig variant = config;
    variant.delta = delta;
    variant.metrics.grid_rounds.clear();
    SimOptions options;
    options.workers = workers;
    const SimResult r = run(variant, options);
    rows.insert(rows.end(), r.evolution.begin(), r.evolution.end());
  }
  return rows;
}

}  // namespace difflearn

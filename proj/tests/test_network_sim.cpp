#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include <json.hpp>

#include "difflearn/errors.hpp"
#include "difflearn/io.hpp"
#include "difflearn/simulator.hpp"
#include "oracles.hpp"

using namespace difflearn;

namespace {

ScenarioConfig small_scenario(std::uint64_t seed = 42) {
  ScenarioConfig c = reference_scenario();
  c.node_count = 8;
  c.horizon = 60;
  c.seed = seed;
  c.topology.radius = 0.5;
  c.metrics.grid_rounds = {1, 30, 60};
  c.metrics.grid_size = 21;
  return c;
}

std::string log_of(const ScenarioConfig& c, bool reference, int workers = 0) {
  std::string text;
  SimOptions o;
  o.workers = workers;
  o.message_sink = [&](const Message& m) { text += to_log_line(m) + "\n"; };
  const SimResult r = reference ? run_reference(c, o) : run(c, o);
  return text + grid_csv(r.grid_reports) + evolution_csv(r.evolution);
}

}  // namespace

TEST_CASE("two nodes with a wide radius form a single edge") {
  const Graph g = generate_topology({TopologyKind::RandomGeometric, 2.0}, 2, 1);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(edge_list_text(g) == "0 1\n");
}

TEST_CASE("random topologies are reproducible, symmetric and connected") {
  for (auto kind : {TopologyKind::RandomGeometric, TopologyKind::ErdosRenyi}) {
    TopologySpec spec;
    spec.kind = kind;
    for (std::uint64_t seed : {1u, 7u, 2023u}) {
      const Graph a = generate_topology(spec, 50, seed);
      const Graph b = generate_topology(spec, 50, seed);
      CHECK(edge_list_text(a) == edge_list_text(b));
      const auto edges = a.edges();
      CHECK(oracle::component_count(50, edges) == 1);
      for (AgentId k = 0; k < 50; ++k)
        for (AgentId l : a.neighbors(k)) {
          CHECK(l != k);
          CHECK(a.has_edge(l, k));
        }
    }
  }
}

TEST_CASE("deterministic topologies") {
  const Graph star = generate_topology({TopologyKind::Star}, 6, 0);
  CHECK(star.edge_count() == 5);
  CHECK(star.neighbors(0).size() == 5);
  const Graph ring = generate_topology({TopologyKind::Ring}, 6, 0);
  CHECK(ring.edge_count() == 6);
  for (AgentId k = 0; k < 6; ++k) CHECK(ring.neighbors(k).size() == 2);
}

TEST_CASE("an impossible radius exhausts the attempt budget") {
  TopologySpec spec{TopologyKind::RandomGeometric, 1e-6};
  spec.max_attempts = 5;
  CHECK_THROWS_AS(generate_topology(spec, 20, 3), TopologyUnconnectable);
}

TEST_CASE("graph edits") {
  Graph g(3);
  g.add_edge(2, 0);
  g.add_edge(0, 2);
  CHECK(g.edge_count() == 1);
  CHECK_FALSE(g.connected());
  CHECK_THROWS_AS(g.add_edge(1, 1), InvalidRange);
  CHECK_THROWS_AS(g.add_edge(1, 5), InvalidRange);
  g.add_edge(1, 2);
  CHECK(g.connected());
  CHECK(edge_list_text(g) == "0 2\n1 2\n");
}

TEST_CASE("environment draws") {
  const Domain d{0.0, 10.0};
  AgentEnvironment fixed(d, 3.5, 0.0, {GaussianNoise{0.5}}, Rng(1));
  for (int i = 0; i < 10; ++i) CHECK(fixed.sample_input() == 3.5);

  AgentEnvironment gauss(d, 5.0, 1.0, {GaussianNoise{0.7}}, Rng(2));
  double sum = 0.0;
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) sum += gauss.sample_noise();
  CHECK(std::abs(sum / draws) <= 5 * 0.7 / 1e3);

  AgentEnvironment bounded(d, 5.0, 1.0, {UniformBoundedNoise{-1.0, 1.0}}, Rng(3));
  CHECK(bounded.noise().variance_proxy_sigma() == 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double e = bounded.sample_noise();
    CHECK((e >= -1.0 && e <= 1.0));
  }

  AgentEnvironment edge(d, 9.9, 0.5, {GaussianNoise{0.1}}, Rng(4));
  for (int i = 0; i < 1000; ++i) CHECK(d.contains(edge.sample_input()));

  AgentEnvironment hopeless(d, 1e6, 1e-3, {GaussianNoise{0.1}}, Rng(5));
  CHECK_THROWS_AS(hopeless.sample_input(), TruncationExhausted);
}

TEST_CASE("phenomenon Lipschitz check") {
  const Domain d{0.0, 10.0};
  Phenomenon m;
  CHECK(m(0.0) == doctest::Approx(3.0));
  CHECK(m.empirical_lipschitz(d) <= 1.0);
  CHECK_NOTHROW(m.validate(d));
  m.lipschitz = 0.5;
  CHECK_THROWS(m.validate(d));
}

TEST_CASE("one round delivers nothing yet") {
  ScenarioConfig c = small_scenario();
  c.horizon = 1;
  c.metrics.grid_rounds = {1};
  const SimResult r = run(c);
  for (const auto& a : r.agents) CHECK(a.acquired_store().empty());
  CHECK(r.stats.requests_delivered == 0);
  CHECK(r.stats.requests_sent == 2 * r.graph.edge_count());
}

TEST_CASE("star centre hears back from every leaf in round two") {
  ScenarioConfig c = small_scenario();
  c.topology.kind = TopologyKind::Star;
  c.horizon = 2;
  c.metrics.grid_rounds = {};
  std::size_t to_centre = 0;
  SimOptions o;
  o.message_sink = [&](const Message& m) {
    if (m.kind() == MessageKind::Share && m.to == 0 && m.send_round == 2) ++to_centre;
  };
  run(c, o);
  CHECK(to_centre == c.node_count - 1);
}

TEST_CASE("parallel run matches the serial reference exactly") {
  for (std::uint64_t seed : {42u, 43u}) {
    ScenarioConfig c = small_scenario(seed);
    CHECK(log_of(c, false) == log_of(c, true));
    c.request.kind = RequestStrategyKind::MaxBoundPoint;
    c.request.grid_size = 21;
    c.store_capacity = 12;
    CHECK(log_of(c, false) == log_of(c, true));
  }
}

TEST_CASE("worker count does not change the outcome") {
  const ScenarioConfig c = small_scenario();
  const std::string base = log_of(c, false, 1);
  for (int workers : {2, 3, 8}) CHECK(log_of(c, false, workers) == base);
}

TEST_CASE("message accounting") {
  const SimResult r = run(small_scenario());
  CHECK(r.stats.consumed_in_send_round == 0);
  CHECK(r.stats.shares_delivered <= r.stats.requests_delivered);
  CHECK(r.stats.shares_delivered <= r.stats.shares_sent);
  CHECK(r.stats.requests_delivered <= r.stats.requests_sent);
  CHECK(r.grid_reports.size() == 3 * 8);
  CHECK(r.evolution.size() == 7 * 8);
}

TEST_CASE("messages carry only arguments and tuples") {
  const ScenarioConfig c = small_scenario();
  std::size_t lines = 0;
  SimOptions o;
  o.message_sink = [&](const Message& m) {
    ++lines;
    const auto j = nlohmann::json::parse(to_log_line(m));
    CHECK(j.size() == 5);
    const auto& p = j.at("payload");
    if (j.at("kind") == "request") {
      CHECK(p.size() == 1);
      CHECK(p.contains("xi"));
    } else {
      REQUIRE(j.at("kind") == "share");
      CHECK(p.size() == 5);
      for (const char* key : {"xi", "mu_hat", "beta", "origin", "created_at"})
        CHECK(p.contains(key));
    }
    CHECK_FALSE(p.contains("y"));
  };
  run(c, o);
  CHECK(lines > 0);
}

TEST_CASE("bounds shrink as the network learns") {
  ScenarioConfig c = small_scenario();
  c.horizon = 300;
  c.metrics.grid_rounds = {30, 300};
  const SimResult r = run(c);
  for (AgentId k = 0; k < c.node_count; ++k) {
    const auto& early = r.grid_reports[k];
    const auto& late = r.grid_reports[c.node_count + k];
    REQUIRE(early.round == 30);
    REQUIRE(late.round == 300);
    CHECK(summarize(late, c.delta).mean_bound <= summarize(early, c.delta).mean_bound);
    for (const auto& p : late.points) CHECK(std::isfinite(p.bound));
  }
}

TEST_CASE("an isolated early agent only knows its neighbourhood") {
  ScenarioConfig c = small_scenario();
  c.node_count = 2;
  c.horizon = 1;
  c.topology = {TopologyKind::Ring};
  c.input.mean_range = {5.0, 5.0};
  c.input.std_range = {0.1, 0.1};
  c.kernel = KernelConfig::fixed(0.5);
  c.metrics.grid_rounds = {1};
  const SimResult r = run(c);
  for (const auto& rep : r.grid_reports) {
    CHECK(rep.points.front().bound == kInfinity);
    CHECK(rep.points.back().bound == kInfinity);
    CHECK(std::isfinite(rep.points[10].bound));
  }
}

TEST_CASE("evolution sweep adds one block per extra delta") {
  ScenarioConfig c = small_scenario();
  c.metrics.evolution_deltas = {c.delta, 0.001};
  const SimResult r = run(c);
  const auto rows = evolution_sweep(c, r);
  CHECK(rows.size() == 2 * r.evolution.size());
  CHECK(rows.front().delta == c.delta);
  CHECK(rows.back().delta == 0.001);
}

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "difflearn/estimator.hpp"
#include "difflearn/rng.hpp"
#include "difflearn/tuple_store.hpp"

namespace difflearn {

enum class RequestStrategyKind {
  UniformOverD,   // uniform draw over the whole domain
  MaxBoundPoint,  // grid point where the current exploit bound is loosest
};

struct RequestStrategy {
  RequestStrategyKind kind = RequestStrategyKind::UniformOverD;
  std::size_t grid_size = 101;  // MaxBoundPoint only
};

struct AgentConfig {
  AgentId id = 0;
  Domain domain;
  BoundParams bound;
  KernelConfig kernel;
  RequestStrategy strategy;
  std::size_t store_capacity = TupleStore::kUnbounded;
};

enum class ExploitSource { Local, Acquired };

struct ExploitResult {
  double m_hat = 0.0;
  // min of the local bound and the transported bound of the chosen tuple.
  double bound = kInfinity;
  ExploitSource source = ExploitSource::Local;
  std::optional<TupleId> tuple;  // set when source == Acquired
  double tuple_beta = kInfinity;  // the chosen tuple's own bound, for logging
  // False only when there is no local mass and no acquired tuple; m_hat is
  // then a 0 sentinel and must not be used.
  bool usable = true;
};

struct Observation {
  LocalEvaluation evaluation;
  std::optional<Tuple> tuple;  // formed when the bound is finite
  AppendStatus status = AppendStatus::Rejected;
};

/// One network node: local sampling and tuple formation, request answering,
/// tuple acquisition and the combined local/acquired inference.
class Agent {
 public:
  Agent(AgentConfig config, Rng request_rng);

  // Stores the sample, evaluates at xi over every sample so far and appends
  // the resulting tuple to the local store. Throws DomainViolation.
  Observation observe(double xi, double y, Round round);

  // Nearest tuple over the local and acquired stores together.
  std::optional<Tuple> answer_request(double xi_req) const;

  // Tuples that originated here are rejected.
  AppendOutcome receive_tuple(const Tuple& t);

  double select_request();

  // Throws DomainViolation for x outside the domain.
  ExploitResult exploit(double x) const;

  LocalEvaluation evaluate_local(double x) const;

  AgentId id() const noexcept { return config_.id; }
  const AgentConfig& config() const noexcept { return config_; }
  // Chronological order.
  std::span<const Sample> samples() const noexcept { return samples_; }
  std::span<const Sample> sorted_samples() const noexcept { return sorted_samples_; }
  const TupleStore& local_store() const noexcept { return local_; }
  const TupleStore& acquired_store() const noexcept { return acquired_; }

 private:
  AgentConfig config_;
  Rng request_rng_;
  std::vector<Sample> samples_;
  std::vector<Sample> sorted_samples_;
  TupleStore local_;
  TupleStore acquired_;
};

/// Combined inference at x: the acquired tuple with the smallest transported
/// bound L|x - xi| + beta among those with L|x - xi| < beta_local - beta, or
/// the local estimate when no tuple qualifies. Ties prefer the smaller
/// argument, then the earlier creation round.
ExploitResult combine_estimates(double x, const LocalEvaluation& local,
                                std::span<const Tuple> acquired, double lipschitz);

// Uniform grid of `count` points over the domain, endpoints included.
std::vector<double> uniform_grid(const Domain& domain, std::size_t count);

}  // namespace difflearn

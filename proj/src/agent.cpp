#include "difflearn/agent.hpp"

#include <algorithm>
#include <cmath>

#include "difflearn/errors.hpp"

namespace difflearn {

std::vector<double> uniform_grid(const Domain& domain, std::size_t count) {
  if (count < 2) throw InvalidRange("grid needs at least two points");
  std::vector<double> grid(count);
  const double step = domain.width() / static_cast<double>(count - 1);
  for (std::size_t i = 0; i + 1 < count; ++i)
    grid[i] = domain.lo + step * static_cast<double>(i);
  grid.back() = domain.hi;
  return grid;
}

Agent::Agent(AgentConfig config, Rng request_rng)
    : config_(std::move(config)),
      request_rng_(std::move(request_rng)),
      local_(config_.domain, config_.bound.lipschitz, config_.store_capacity),
      acquired_(config_.domain, config_.bound.lipschitz, config_.store_capacity) {
  config_.bound.validate();
  config_.kernel.validate();
  if (config_.strategy.kind == RequestStrategyKind::MaxBoundPoint &&
      config_.strategy.grid_size < 2)
    throw InvalidRange("request grid needs at least two points");
}

LocalEvaluation Agent::evaluate_local(double x) const {
  return evaluate_sorted(x, sorted_samples_, config_.kernel, config_.bound);
}

Observation Agent::observe(double xi, double y, Round round) {
  if (!config_.domain.contains(xi)) throw DomainViolation("observation outside the domain");
  const Sample s{xi, y};
  samples_.push_back(s);
  auto pos = std::upper_bound(sorted_samples_.begin(), sorted_samples_.end(), xi,
                              [](double v, const Sample& e) { return v < e.xi; });
  sorted_samples_.insert(pos, s);

  Observation out;
  out.evaluation = evaluate_local(xi);
  if (std::isfinite(out.evaluation.beta)) {
    out.tuple = Tuple{xi, *out.evaluation.mu_hat, out.evaluation.beta, config_.id, round};
    out.status = local_.append(*out.tuple).status;
  }
  return out;
}

std::optional<Tuple> Agent::answer_request(double xi_req) const {
  return nearest_of({local_.view(), acquired_.view()}, xi_req);
}

AppendOutcome Agent::receive_tuple(const Tuple& t) {
  // Own tuples coming back through a neighbour are echoes.
  if (t.origin == config_.id) return {AppendStatus::Rejected, {}};
  return acquired_.append(t);
}

double Agent::select_request() {
  const Domain& d = config_.domain;
  if (config_.strategy.kind == RequestStrategyKind::UniformOverD) {
    std::uniform_real_distribution<double> uniform(d.lo, d.hi);
    return uniform(request_rng_);
  }
  double best_x = d.lo;
  double best_bound = -1.0;
  for (double x : uniform_grid(d, config_.strategy.grid_size)) {
    const double b = exploit(x).bound;
    if (b > best_bound) {
      best_bound = b;
      best_x = x;
    }
  }
  return best_x;
}

ExploitResult combine_estimates(double x, const LocalEvaluation& local,
                                std::span<const Tuple> acquired, double lipschitz) {
  const double beta_local = local.beta;
  const Tuple* chosen = nullptr;
  double chosen_bound = kInfinity;
  for (const auto& t : acquired) {
    const double transport = lipschitz * std::abs(x - t.xi);
    if (!(transport < beta_local - t.beta)) continue;
    const double candidate = transport + t.beta;
    bool better = chosen == nullptr || candidate < chosen_bound;
    if (!better && candidate == chosen_bound)
      better = t.xi < chosen->xi || (t.xi == chosen->xi && t.created_at < chosen->created_at);
    if (better) {
      chosen = &t;
      chosen_bound = candidate;
    }
  }

  ExploitResult out;
  if (chosen == nullptr) {
    out.source = ExploitSource::Local;
    out.bound = beta_local;
    out.usable = local.mu_hat.has_value();
    out.m_hat = local.mu_hat.value_or(0.0);
    return out;
  }
  out.source = ExploitSource::Acquired;
  out.m_hat = chosen->mu_hat;
  out.bound = std::min(beta_local, chosen_bound);
  out.tuple = chosen->id();
  out.tuple_beta = chosen->beta;
  return out;
}

ExploitResult Agent::exploit(double x) const {
  if (!config_.domain.contains(x)) throw DomainViolation("query outside the domain");
  return combine_estimates(x, evaluate_local(x), acquired_.view(), config_.bound.lipschitz);
}

}  // namespace difflearn

#include "difflearn/tuple_store.hpp"

#include <algorithm>
#include <cmath>

#include "difflearn/errors.hpp"

namespace difflearn {

TupleStore::TupleStore(Domain domain, double lipschitz, std::size_t capacity)
    : domain_(domain), lipschitz_(lipschitz), capacity_(capacity) {
  if (!(domain.lo < domain.hi)) throw InvalidRange("domain must satisfy lo < hi");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz))
    throw InvalidRange("lipschitz constant must be finite and non-negative");
}

AppendOutcome TupleStore::append(const Tuple& t) {
  if (!domain_.contains(t.xi)) throw DomainViolation("tuple argument outside the domain");
  if (!(t.beta > 0.0) || !std::isfinite(t.beta))
    throw InvalidRange("tuple bound must be finite and positive");

  for (const auto& e : entries_)
    if (dominates(e, t, lipschitz_)) return {AppendStatus::Rejected, {}};

  AppendOutcome out{AppendStatus::Inserted, {}};
  std::erase_if(entries_, [&](const Tuple& e) {
    if (!dominates(t, e, lipschitz_)) return false;
    out.evicted.push_back(e);
    return true;
  });

  // Equal arguments keep insertion order.
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), t.xi,
                              [](double xi, const Tuple& e) { return xi < e.xi; });
  entries_.insert(pos, t);

  if (capacity_ != kUnbounded && entries_.size() > capacity_) {
    // Loosest bound goes; among equals the later-created, then larger argument.
    auto worst = std::max_element(entries_.begin(), entries_.end(),
                                  [](const Tuple& a, const Tuple& b) {
                                    if (a.beta != b.beta) return a.beta < b.beta;
                                    if (a.created_at != b.created_at)
                                      return a.created_at < b.created_at;
                                    return a.xi < b.xi;
                                  });
    const Tuple dropped = *worst;
    entries_.erase(worst);
    // Overflow only happens when t evicted nothing, so dropping t is a rejection.
    if (dropped == t) return {AppendStatus::Rejected, {}};
    out.evicted.push_back(dropped);
  }

  if (!out.evicted.empty()) out.status = AppendStatus::InsertedEvicting;
  return out;
}

bool nearer(const Tuple& a, const Tuple& b, double xi_req) noexcept {
  const double da = std::abs(a.xi - xi_req);
  const double db = std::abs(b.xi - xi_req);
  if (da != db) return da < db;
  if (a.xi != b.xi) return a.xi < b.xi;
  return a.created_at < b.created_at;
}

namespace {

// Best candidate of one sorted list: the neighbours around the insertion point.
const Tuple* nearest_in(std::span<const Tuple> sorted, double xi_req) {
  if (sorted.empty()) return nullptr;
  auto pos = std::lower_bound(sorted.begin(), sorted.end(), xi_req,
                              [](const Tuple& e, double xi) { return e.xi < xi; });
  const Tuple* best = nullptr;
  auto consider = [&](const Tuple& c) {
    if (best == nullptr || nearer(c, *best, xi_req)) best = &c;
  };
  // Scan the full runs of equal arguments on both sides so the creation-round
  // tie-break sees every candidate.
  if (pos != sorted.begin()) {
    const double left = std::prev(pos)->xi;
    for (auto it = pos; it != sorted.begin() && std::prev(it)->xi == left; --it)
      consider(*std::prev(it));
  }
  if (pos != sorted.end()) {
    const double right = pos->xi;
    for (auto it = pos; it != sorted.end() && it->xi == right; ++it) consider(*it);
  }
  return best;
}

}  // namespace

std::optional<Tuple> TupleStore::nearest(double xi_req) const {
  const Tuple* best = nearest_in(entries_, xi_req);
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::optional<Tuple> nearest_of(std::initializer_list<std::span<const Tuple>> lists,
                                double xi_req) {
  const Tuple* best = nullptr;
  for (auto list : lists) {
    const Tuple* c = nearest_in(list, xi_req);
    if (c != nullptr && (best == nullptr || nearer(*c, *best, xi_req))) best = c;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

}  // namespace difflearn

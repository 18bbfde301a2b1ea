#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace difflearn {

using AgentId = std::uint32_t;
using Round = std::uint32_t;

struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  double width() const noexcept { return hi - lo; }
};

// Identifies a tuple network-wide: each agent forms at most one tuple per round.
struct TupleId {
  AgentId origin = 0;
  Round created_at = 0;

  friend bool operator==(const TupleId&, const TupleId&) = default;
};

struct Tuple {
  double xi = 0.0;
  double mu_hat = 0.0;
  double beta = 0.0;  // finite, positive
  AgentId origin = 0;
  Round created_at = 0;

  TupleId id() const noexcept { return {origin, created_at}; }
  friend bool operator==(const Tuple&, const Tuple&) = default;
};

// True when a's bound transported to b's argument is no looser than b's own.
inline bool dominates(const Tuple& a, const Tuple& b, double lipschitz) noexcept {
  const double gap = a.xi > b.xi ? a.xi - b.xi : b.xi - a.xi;
  return a.beta + lipschitz * gap <= b.beta;
}

enum class AppendStatus { Inserted, Rejected, InsertedEvicting };

struct AppendOutcome {
  AppendStatus status = AppendStatus::Rejected;
  std::vector<Tuple> evicted;
};

/// Collection of mutually non-dominated tuples kept sorted by argument.
///
/// A new tuple is rejected when any stored tuple dominates it (equality
/// included, so the incumbent wins and duplicates are rejected); otherwise it
/// is inserted and every stored tuple it dominates is evicted. With a bounded
/// capacity the entry with the largest bound is dropped on overflow.
class TupleStore {
 public:
  static constexpr std::size_t kUnbounded = 0;

  TupleStore(Domain domain, double lipschitz, std::size_t capacity = kUnbounded);

  // Throws DomainViolation for arguments outside the domain and
  // InvalidRange for a non-finite or non-positive bound.
  AppendOutcome append(const Tuple& t);

  std::optional<Tuple> nearest(double xi_req) const;

  std::vector<Tuple> snapshot() const { return entries_; }
  std::span<const Tuple> view() const noexcept { return entries_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double lipschitz() const noexcept { return lipschitz_; }
  const Domain& domain() const noexcept { return domain_; }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  Domain domain_;
  double lipschitz_;
  std::size_t capacity_;
  std::vector<Tuple> entries_;
};

// Deterministic preference among equidistant candidates: smaller argument,
// then earlier creation round.
bool nearer(const Tuple& a, const Tuple& b, double xi_req) noexcept;

/// Nearest tuple over the union of several sorted tuple lists.
std::optional<Tuple> nearest_of(std::initializer_list<std::span<const Tuple>> lists,
                                double xi_req);

}  // namespace difflearn

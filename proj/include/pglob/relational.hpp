#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pglob/set_globalization.hpp"

namespace pglob {

using Tuple = std::vector<Elem>;

/// A finitary relation stored as a sorted, duplicate-free tuple set.
class Relation {
 public:
  Relation() = default;
  Relation(unsigned arity, std::vector<Tuple> tuples);

  [[nodiscard]] unsigned arity() const noexcept { return arity_; }
  [[nodiscard]] const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  [[nodiscard]] std::size_t size() const noexcept { return tuples_.size(); }
  [[nodiscard]] bool contains(const Tuple& t) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  unsigned arity_ = 0;
  std::vector<Tuple> tuples_;
};

struct RelationalSystem {
  std::size_t size = 0;
  std::vector<Relation> relations;

  /// Throws StructuralError when a tuple leaves the carrier.
  void check_ranges() const;
};

/// Condition "tuple in rho and all x a_i defined => (x a_i) in rho", checked
/// for every x and tuple. Rule "preservation", witness (relation, x, tuple...).
ValidationReport validate_relational_action(const PartialAction& pa, const RelationalSystem& rs);

struct LiftedSystem {
  UniversalGlobalization ug;
  RelationalSystem system;
};

/// Relations on the universal globalization: { ([x,a_1],...,[x,a_n]) }.
/// Asserts that the global action preserves them and that iota(A) is a
/// subsystem. Throws AxiomError on invalid input.
LiftedSystem lift_relational_system(const PartialAction& pa, const RelationalSystem& rs);

struct FunctionalityCheck {
  bool functional = true;
  std::optional<std::pair<Tuple, Tuple>> witness;

  explicit operator bool() const noexcept { return functional; }
};

/// No two tuples agree on all but the last entry. A nullary relation is
/// functional iff it has at most one tuple.
FunctionalityCheck is_functional(const RelationalSystem& rs, std::size_t relation);

/// The graph relations {(a_1,...,a_n, f(a_1,...,a_n))} of every operation.
RelationalSystem relational_form(const FinitePartialAlgebra& alg);

}  // namespace pglob

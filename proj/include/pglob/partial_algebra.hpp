#pragma once

// Partial actions on partial algebras: compatibility of the action with the
// operations, the globalizability criterion and the algebra structure on
// the universal globalization.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pglob/relational.hpp"

namespace pglob {

/// All x a_i and x f(a) defined => f(x a) defined and equal to x f(a).
/// Rule "compatibility", witness (op, x, a_1, ..., a_n). The verdict is
/// cross-checked against preservation of the graph relations.
ValidationReport check_action_compatibility(const PartialAction& pa,
                                            const FinitePartialAlgebra& alg);

struct GlobalizabilityWitness {
  std::size_t op = 0;
  Elem x = 0;
  std::vector<Elem> args;
  /// f(x a_1, ..., x a_n), possibly kUndefined.
  Elem lhs = kUndefined;
  /// x f(a_1, ..., a_n), possibly kUndefined.
  Elem rhs = kUndefined;
};

struct GlobalizabilityVerdict {
  bool globalizable = true;
  std::optional<GlobalizabilityWitness> witness;

  explicit operator bool() const noexcept { return globalizable; }
};

/// f(a) and all x a_i defined => f(x a) = x f(a), where two undefined sides
/// count as equal. Asserted to agree with functionality of the lifted graph
/// relations. Throws PreconditionError if the compatibility check fails.
GlobalizabilityVerdict check_globalizability(const PartialAction& pa,
                                             const FinitePartialAlgebra& alg);

/// Every domain closed under every operation.
bool domains_are_subalgebras(const PartialAction& pa, const FinitePartialAlgebra& alg);

class NotGlobalizableError : public std::runtime_error {
 public:
  explicit NotGlobalizableError(GlobalizabilityWitness witness)
      : std::runtime_error("partial action is not globalizable"), witness_(std::move(witness)) {}
  [[nodiscard]] const GlobalizabilityWitness& witness() const noexcept { return witness_; }

 private:
  GlobalizabilityWitness witness_;
};

struct GlobalizedAlgebra {
  UniversalGlobalization ug;
  /// f([x,a_1],...,[x,a_n]) = [x, f(a_1,...,a_n)], undefined elsewhere.
  FinitePartialAlgebra algebra;
};

/// Throws NotGlobalizableError with the criterion witness when the
/// criterion fails. Asserts that iota(A) is a relative subalgebra and that
/// the global action acts by automorphisms.
GlobalizedAlgebra build_globalized_algebra(const PartialAction& pa,
                                           const FinitePartialAlgebra& alg);

}  // namespace pglob

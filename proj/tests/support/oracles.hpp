#pragma once

// Brute-force reference implementations. They follow the definitions
// directly and share no code with the library beyond the data types.

#include <optional>
#include <vector>

#include "pglob/partial_algebra.hpp"

namespace pglob::testing {

/// Restricted growth strings: every partition of {0..n-1} as block labels.
std::vector<std::vector<std::size_t>> all_partitions(std::size_t n);

/// Equivalence given by labels, closed under substitution wherever both
/// sides are defined.
bool has_substitution_property(const FinitePartialAlgebra& alg,
                               const std::vector<std::size_t>& labels);

/// Intersection of all congruences containing the pairs, as labels with the
/// least member of each block as label.
std::vector<std::size_t> least_congruence(const FinitePartialAlgebra& alg,
                                          const std::vector<ElementPair>& pairs);

/// Canonical labels (least member) for any labelling.
std::vector<std::size_t> canonical(const std::vector<std::size_t>& labels);

/// Classes of G x A under (x,a) ~ (y,b) iff theta(y^-1 x, a) = b, indexed
/// x * |A| + a, labelled by the least index. nullopt if the relation is not
/// an equivalence.
std::optional<std::vector<std::size_t>> naive_orbit_labels(const PartialAction& pa);

/// The three partial action axioms, by nested loops.
bool naive_partial_action(const PartialAction& pa);

/// All x a_i and x f(a) defined => f(x a) = x f(a).
bool naive_compatible(const PartialAction& pa, const FinitePartialAlgebra& alg);
/// f(a) and all x a_i defined => f(x a) = x f(a), undefined sides equal.
bool naive_globalizable(const PartialAction& pa, const FinitePartialAlgebra& alg);
bool naive_domains_closed(const PartialAction& pa, const FinitePartialAlgebra& alg);

/// x(x^-1(su)t) = s x(x^-1(u)t) for all x, u in D_x, s, t.
bool naive_criterion(const PartialAction& pa, const FiniteSemigroup& s);

bool naive_associative(const FiniteSemigroup& s);

/// Naive product check for a candidate map between algebras.
bool naive_homomorphism(const FinitePartialAlgebra& a, const FinitePartialAlgebra& b,
                        const std::vector<Elem>& map);

}  // namespace pglob::testing

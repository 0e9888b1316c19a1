#pragma once

// Generalized amalgams of finite algebras, the amalgam of a partial action,
// embedding verification, and a bounded closure of the free-product
// congruence for semigroup amalgams.

#include <optional>
#include <string>
#include <vector>

#include "pglob/semigroup_globalization.hpp"
#include "pglob/word_closure.hpp"

namespace pglob {

struct Amalgam {
  enum class Kind { semigroup, partial_algebra };

  Kind kind = Kind::partial_algebra;
  std::vector<std::string> indices;
  std::vector<FinitePartialAlgebra> algebras;
  /// alpha[i * n + j] maps A_i to A_j; kUndefined outside A_ij.
  std::vector<std::vector<Elem>> alpha;

  [[nodiscard]] std::size_t index_count() const noexcept { return indices.size(); }
  [[nodiscard]] const std::vector<Elem>& map(std::size_t i, std::size_t j) const {
    return alpha[i * indices.size() + j];
  }
  [[nodiscard]] bool in_intersection(std::size_t i, std::size_t j, Elem a) const {
    return map(i, j)[a] != kUndefined;
  }
  /// A_ij, sorted.
  [[nodiscard]] std::vector<Elem> intersection(std::size_t i, std::size_t j) const;
};

/// Shape, A_ii = A_i with alpha_ii = id, alpha_ji = alpha_ij^-1, A_ij closed
/// under the operations, alpha_ij an isomorphism of the induced
/// subalgebras. Rules "shape", "diagonal", "inverse", "closure",
/// "isomorphism".
ValidationReport validate_amalgam(const Amalgam& am);

/// A_x a copy of the algebra, A_{x,y} = D_{x^-1 y}, alpha_{x,y} =
/// theta_{y^-1 x}. Throws PreconditionError unless the action is compatible
/// with the algebra and every domain is a subalgebra. The result is
/// asserted to be a valid amalgam.
Amalgam amalgam_from_partial_action(const PartialAction& pa, const FinitePartialAlgebra& alg,
                                    Amalgam::Kind kind = Amalgam::Kind::partial_algebra);
Amalgam amalgam_from_partial_action(const SemigroupPartialAction& spa);

/// alpha_ij(A_ij n A_ik) = A_ji n A_jk ("neumann-intersection", witness
/// (i,j,k)) and alpha_jk o alpha_ij = alpha_ik on A_ij n A_ik
/// ("neumann-cocycle", witness (i,j,k,a)).
ValidationReport check_neumann_conditions(const Amalgam& am);

/// Each phi_i an injective homomorphism into target, phi_j o alpha_ij =
/// phi_i on A_ij, and phi_i(A_i) n phi_j(A_j) = phi_i(A_ij). Rules
/// "map-shape", "homomorphism", "injective", "compatibility",
/// "intersection".
ValidationReport verify_embedding(const Amalgam& am, const FinitePartialAlgebra& target,
                                  const std::vector<std::vector<Elem>>& maps);

/// Letters of the free product: (copy i, element a) numbered i * |A| + a
/// when all copies have the same size, and by running offsets otherwise.
struct AmalgamLetters {
  std::vector<std::size_t> offset;

  explicit AmalgamLetters(const Amalgam& am);
  [[nodiscard]] Letter letter(std::size_t i, Elem a) const {
    return static_cast<Letter>(offset[i] + a);
  }
  [[nodiscard]] std::pair<std::size_t, Elem> decode(Letter l) const;
  [[nodiscard]] std::size_t count() const noexcept { return offset.back(); }
};

struct AmalgamStep {
  enum class Kind { reduce, expand, amalgamate };

  std::size_t pos = 0;
  Kind kind = Kind::reduce;
  /// reduce/expand: copy i and factors (a, b). amalgamate: a_i -> alpha_ij(a)_j.
  std::size_t copy = 0;
  Elem a = 0;
  Elem b = 0;
  std::size_t target = 0;

  friend bool operator==(const AmalgamStep&, const AmalgamStep&) = default;
};

using AmalgamDerivation = Derivation<AmalgamStep>;

/// Throws std::invalid_argument if the step does not apply.
Word apply_amalgam_step(const Amalgam& am, const Word& w, const AmalgamStep& step);
bool replay_amalgam_derivation(const Amalgam& am, const AmalgamDerivation& d);
std::string render_letter(const Amalgam& am, Letter l);
std::string render_amalgam_word(const Amalgam& am, const Word& w);
std::string render_amalgam_step(const Amalgam& am, const AmalgamStep& step);

struct AmalgamViolation {
  Letter left = 0;
  Letter right = 0;
  AmalgamDerivation chain;
};

struct EmbeddabilityReport {
  std::size_t max_len = 0;
  /// Merge label (least letter of the component) per letter.
  std::vector<Letter> labels;
  /// Letter pairs (l, m) with m the least letter of l's component and the
  /// merge not explained by the amalgamation maps.
  std::vector<AmalgamViolation> violations;

  [[nodiscard]] bool violation_found() const noexcept { return !violations.empty(); }
};

/// Bounded closure of the free-product congruence on words of length at
/// most max_len. Chains are computed for the first `chain_limit`
/// violations only. Throws PreconditionError for max_len < 1 or
/// non-semigroup amalgams.
EmbeddabilityReport bounded_embeddability_check(const Amalgam& am, std::size_t max_len,
                                                std::size_t chain_limit = SIZE_MAX);

}  // namespace pglob

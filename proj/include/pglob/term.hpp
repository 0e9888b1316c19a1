#pragma once

// Terms over a carrier and a finite signature, their values in a partial
// algebra, the evaluation normal form deciding the value congruence, and the
// extension of a partial action to terms.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pglob/partial_action.hpp"

namespace pglob {

struct Term {
  enum class Kind { letter, op };

  Kind kind = Kind::letter;
  Elem letter = 0;
  std::size_t op = 0;
  std::vector<Term> args;

  static Term leaf(Elem a) { return Term{Kind::letter, a, 0, {}}; }
  static Term apply(std::size_t op, std::vector<Term> args) {
    return Term{Kind::op, 0, op, std::move(args)};
  }

  [[nodiscard]] bool is_letter() const noexcept { return kind == Kind::letter; }
  /// Letters and nullary symbols have length 1; f(w_1..w_n) adds 1.
  [[nodiscard]] std::size_t length() const;
  [[nodiscard]] std::size_t depth() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.letter <=> b.letter; c != 0) return c;
    if (auto c = a.op <=> b.op; c != 0) return c;
    return a.args <=> b.args;
  }
};

/// Throws PreconditionError if the term does not fit the algebra.
void check_term(const FinitePartialAlgebra& alg, const Term& w);

/// v(w): undefined propagates upward.
Elem term_value(const FinitePartialAlgebra& alg, const Term& w);

/// Innermost collapse of every subterm with a defined value to that letter.
Term evaluation_normal_form(const FinitePartialAlgebra& alg, const Term& w);

/// The value congruence by its recursive definition: equal defined values,
/// or the same head symbol with pairwise related arguments.
bool related_by_evaluation(const FinitePartialAlgebra& alg, const Term& a, const Term& b);

/// Letters move by the action, nullary symbols are fixed, and the result is
/// undefined as soon as one letter is.
std::optional<Term> extend_action_to_term(const PartialAction& pa, Elem x, const Term& w);

/// Prefix syntax "f0(f0(u,t),v)". Tokens naming an element are letters;
/// "f<k>" names operation k. Throws std::invalid_argument on syntax errors.
Term parse_term(std::string_view text, const FinitePartialAlgebra& alg);
std::string render_term(const Term& w, const std::vector<std::string>& names);

/// Every term of depth at most `depth` (letters have depth 0).
std::vector<Term> enumerate_terms(const FinitePartialAlgebra& alg, std::size_t depth);

}  // namespace pglob

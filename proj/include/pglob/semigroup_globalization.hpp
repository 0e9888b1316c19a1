#pragma once

// Partial actions on finite semigroups with ideal domains: the
// globalizability criterion, the rewriting system w[x,s][x,t]w' ->
// w[x,st]w' over class letters with its confluence and normal-form checks,
// bounded collapse search, and the explicit globalization for unital
// domains.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pglob/set_globalization.hpp"
#include "pglob/word_closure.hpp"

namespace pglob {

class SemigroupPartialAction {
 public:
  /// Throws AxiomError if the action is invalid or does not respect the
  /// product, PreconditionError if the carriers differ.
  SemigroupPartialAction(PartialAction pa, FiniteSemigroup s);

  [[nodiscard]] const PartialAction& action() const noexcept { return pa_; }
  [[nodiscard]] const FiniteSemigroup& semigroup() const noexcept { return s_; }
  [[nodiscard]] const FiniteGroup& group() const noexcept { return pa_.group(); }
  [[nodiscard]] const UniversalGlobalization& ug() const noexcept { return ug_; }

  struct Reduction {
    Elem slot;
    ClassId result;
  };
  struct Expansion {
    Elem slot;
    Elem s;
    Elem t;
    ClassId left;
    ClassId right;
  };
  /// [x,a][x,b] -> [x,ab] for every common slot x, in slot order.
  [[nodiscard]] const std::vector<Reduction>& reductions(ClassId a, ClassId b) const {
    return reductions_[a * ug_.size() + b];
  }
  /// [x,st] -> [x,s][x,t] for every slot x of c and factorization st, in
  /// (x, s, t) order.
  [[nodiscard]] const std::vector<Expansion>& expansions(ClassId c) const {
    return expansions_[c];
  }

 private:
  PartialAction pa_;
  FiniteSemigroup s_;
  UniversalGlobalization ug_;
  std::vector<std::vector<Reduction>> reductions_;
  std::vector<std::vector<Expansion>> expansions_;
};

/// Every domain is a two-sided ideal. Rule "ideal", witness (x, s, d, side)
/// with side 0 for s d and 1 for d s.
ValidationReport check_ideal_domains(const SemigroupPartialAction& spa);

struct CriterionWitness {
  Elem x = 0;
  Elem u = 0;
  Elem s = 0;
  Elem t = 0;
  /// x(x^-1(su)t)
  Elem lhs = 0;
  /// s x(x^-1(u)t)
  Elem rhs = 0;

  friend bool operator==(const CriterionWitness&, const CriterionWitness&) = default;
};

struct CriterionVerdict {
  bool holds = true;
  /// First failure in (x, u, s, t) order.
  std::optional<CriterionWitness> witness;

  explicit operator bool() const noexcept { return holds; }
};

/// x(x^-1(su)t) = s x(x^-1(u)t) for all x, u in D_x and s, t. With jobs > 1
/// the (x, u) range is split across threads; the reported witness is the
/// same. Throws PreconditionError unless all domains are ideals.
CriterionVerdict check_criterion(const SemigroupPartialAction& spa, unsigned jobs = 1);
std::vector<CriterionWitness> criterion_violations(const SemigroupPartialAction& spa);

struct DomainProperties {
  Elem x = 0;
  bool idempotent = false;
  bool weakly_reductive = false;
  bool unital = false;
  std::optional<Elem> unit;
};

struct SufficientConditions {
  std::vector<DomainProperties> per_element;
  bool inverse_ambient = false;
  /// Over x != 1.
  bool all_idempotent = false;
  bool all_weakly_reductive = false;
  /// Over every x, the identity included.
  bool all_unital = false;
};

SufficientConditions check_sufficient_conditions(const SemigroupPartialAction& spa);

struct RewriteStep {
  enum class Dir { reduce, expand };

  std::size_t pos = 0;
  Dir dir = Dir::reduce;
  Elem slot = 0;
  Elem s = 0;
  Elem t = 0;

  [[nodiscard]] RewriteStep inverse() const {
    return {pos, dir == Dir::reduce ? Dir::expand : Dir::reduce, slot, s, t};
  }
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

using UWord = Word;
using RewriteTrace = Derivation<RewriteStep>;

/// Applies one step; throws std::invalid_argument if it does not apply.
UWord apply_step(const SemigroupPartialAction& spa, const UWord& w, const RewriteStep& step);
/// Replays steps from `start`, checking each; returns every intermediate word.
std::vector<UWord> replay_steps(const SemigroupPartialAction& spa, const UWord& start,
                                const std::vector<RewriteStep>& steps);
/// Replays and compares against the recorded words.
bool replay_trace(const SemigroupPartialAction& spa, const RewriteTrace& trace);

/// Leftmost reducible pair, least common slot, until irreducible.
RewriteTrace normalize_word(const SemigroupPartialAction& spa, const UWord& w);
bool is_irreducible(const SemigroupPartialAction& spa, const UWord& w);

/// "[1,v][1,t]": any member of a class may name it. Throws
/// std::invalid_argument on unknown letters or syntax errors.
UWord parse_word(const SemigroupPartialAction& spa, std::string_view text);
std::string render_word(const SemigroupPartialAction& spa, const UWord& w);
std::string render_step(const SemigroupPartialAction& spa, const RewriteStep& step);

struct CriticalPair {
  UWord word;
  UWord left;
  UWord right;
  UWord left_normal;
  UWord right_normal;
};

struct ConfluenceVerdict {
  bool confluent = true;
  std::size_t configurations = 0;
  /// First non-joinable configuration in (letters, slots) order.
  std::optional<CriticalPair> witness;

  explicit operator bool() const noexcept { return confluent; }
};

/// Checks joinability of both one-step descendants for every overlap
/// [a][b][c] (a,b sharing a slot x, b,c sharing a slot y) and every
/// two-letter word with two common slots. The verdict is asserted to match
/// check_criterion.
ConfluenceVerdict check_weak_confluence(const SemigroupPartialAction& spa, unsigned jobs = 1);

struct NormalFormVerdict {
  bool unique = true;
  std::size_t words_checked = 0;
  std::optional<UWord> word;
  std::optional<std::pair<UWord, UWord>> normal_forms;

  explicit operator bool() const noexcept { return unique; }
};

/// Every word of length <= max_len has a single normal form over all
/// reduction strategies. Requires at most 64 classes.
NormalFormVerdict check_unique_normal_forms(const SemigroupPartialAction& spa,
                                            std::size_t max_len);

/// All normal forms reachable from w (any strategy), sorted.
std::vector<UWord> all_normal_forms(const SemigroupPartialAction& spa, const UWord& w);

struct CollapseChain {
  ClassId from = 0;
  ClassId to = 0;
  RewriteTrace trace;
};

struct CollapseReport {
  std::size_t max_len = 0;
  /// Groups of two or more classes whose one-letter words were merged.
  std::vector<std::vector<ClassId>> groups;
  /// One chain from each non-minimal member of a group to its minimum.
  std::vector<CollapseChain> chains;

  [[nodiscard]] bool found() const noexcept { return !groups.empty(); }
};

/// Bounded closure over words of length <= max_len under reductions and
/// expansions. Finding nothing proves nothing. Throws PreconditionError if
/// max_len < 1 or the domains are not ideals.
CollapseReport find_collapse_witness(const SemigroupPartialAction& spa, std::size_t max_len);

/// One-letter merge labels under the bounded closure (least class per
/// component).
std::vector<ClassId> collapse_labels(const SemigroupPartialAction& spa, std::size_t max_len);

struct UnitalGlobalization {
  /// Elements are the classes of the universal globalization.
  FiniteSemigroup product;
  std::vector<Elem> embedding;
  /// 1_x per group element.
  std::vector<Elem> units;
  PartialAction action;
};

class NotUnitalError : public std::runtime_error {
 public:
  NotUnitalError(Elem x, std::string what) : std::runtime_error(std::move(what)), x_(x) {}
  [[nodiscard]] Elem x() const noexcept { return x_; }

 private:
  Elem x_;
};

/// [x,s]*[y,t] = [x, s (x^-1 y)(1_{y^-1 x} t)]. Throws NotUnitalError when
/// some D_x is not 1_x S for a central idempotent 1_x. Asserts
/// well-definedness, associativity, that [1,-] is a monomorphism onto an
/// ideal, that the action is by automorphisms, the globalization
/// conditions, and inverse-ness when S is inverse.
UnitalGlobalization build_unital_globalization(const SemigroupPartialAction& spa);

}  // namespace pglob

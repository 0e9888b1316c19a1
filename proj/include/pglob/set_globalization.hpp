#pragma once

// The universal globalization G x A / ~ of a partial action, globalization
// checks for arbitrary (iota, global action) pairs, and the factorization of
// morphisms into global actions through it.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pglob/partial_action.hpp"

namespace pglob {

using ClassId = std::uint32_t;

/// An equivalence class [x,a]. The representative is the least member under
/// (group index, carrier index) order; members are sorted the same way.
struct GlobClass {
  Elem rep_slot = 0;
  Elem rep_elem = 0;
  std::vector<std::pair<Elem, Elem>> members;
};

class UniversalGlobalization {
 public:
  /// Throws AxiomError if pa is not a valid partial action.
  explicit UniversalGlobalization(const PartialAction& pa);

  [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
  [[nodiscard]] std::size_t size() const noexcept { return classes_.size(); }
  [[nodiscard]] std::size_t carrier_size() const noexcept { return carrier_size_; }
  [[nodiscard]] const std::vector<GlobClass>& classes() const noexcept { return classes_; }
  [[nodiscard]] const GlobClass& cls(ClassId c) const { return classes_[c]; }

  [[nodiscard]] ClassId class_of(Elem x, Elem a) const { return class_of_[x * carrier_size_ + a]; }
  /// The carrier element b with (x,b) in class c, or kUndefined.
  [[nodiscard]] Elem slot(ClassId c, Elem x) const { return slot_[c * group_.size() + x]; }
  [[nodiscard]] bool has_slot(ClassId c, Elem x) const { return slot(c, x) != kUndefined; }
  [[nodiscard]] ClassId act(Elem x, ClassId c) const { return act_[x * classes_.size() + c]; }
  [[nodiscard]] ClassId embed(Elem a) const { return class_of(group_.identity(), a); }
  [[nodiscard]] std::vector<Elem> embedding() const;

  /// "[x,a]" from the representative.
  [[nodiscard]] std::string name(ClassId c) const;
  [[nodiscard]] std::vector<std::string> names() const;
  /// Parses "[x,a]" for any member (x,a) of a class.
  [[nodiscard]] std::optional<ClassId> parse_name(std::string_view text) const;

  /// The global action on classes as a PartialAction with a total table.
  [[nodiscard]] PartialAction as_action() const;

 private:
  FiniteGroup group_;
  std::vector<std::string> group_names_;
  std::vector<std::string> carrier_names_;
  std::size_t carrier_size_ = 0;
  std::vector<GlobClass> classes_;
  std::vector<ClassId> class_of_;
  std::vector<Elem> slot_;
  std::vector<ClassId> act_;
};

inline UniversalGlobalization build_universal_globalization(const PartialAction& pa) {
  return UniversalGlobalization(pa);
}

/// Checks that iota embeds pa into the total action `global` as its
/// restriction. Rules:
///   "iota-injective"  witness (a, b)
///   "iota-morphism"   witness (x, a)
///   "only-if"         witness (x, a): xa defined but x iota(a) outside iota(A)
///   "if"              witness (x, a): x iota(a) in iota(A) but xa undefined
/// Throws PreconditionError if global is not a valid total action over the
/// same group or iota has the wrong shape.
ValidationReport verify_globalization(const PartialAction& pa, const PartialAction& global,
                                      std::span<const Elem> iota);

/// psi([x,a]) = x phi(a) for a morphism phi: pa -> target with target total.
/// Asserts well-definedness, psi o iota = phi, that psi is a morphism and
/// that it is the only one with that property. Throws PreconditionError if
/// phi is not a morphism or target is not total.
std::vector<Elem> factor_morphism(const UniversalGlobalization& ug, const PartialAction& pa,
                                  const PartialAction& target, std::span<const Elem> phi);

}  // namespace pglob

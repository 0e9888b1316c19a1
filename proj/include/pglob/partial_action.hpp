#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pglob/finite_structures.hpp"

namespace pglob {

/// A partial map G x A -> A stored as one partial table per group element.
/// Domains are derived from the table: D_x is the range of theta(x,-).
class PartialAction {
 public:
  /// `table` has |G| * |A| cells, row x holding theta(x,-). Throws
  /// StructuralError on shape or range problems; the axioms are checked by
  /// validate_partial_action.
  PartialAction(FiniteGroup group, std::vector<std::string> carrier, std::vector<Elem> table);

  [[nodiscard]] const FiniteGroup& group() const noexcept { return group_; }
  [[nodiscard]] std::size_t carrier_size() const noexcept { return carrier_.size(); }
  [[nodiscard]] const std::vector<std::string>& carrier() const noexcept { return carrier_; }
  [[nodiscard]] const std::string& name(Elem a) const { return carrier_[a]; }
  [[nodiscard]] std::optional<Elem> index_of(std::string_view name) const;

  [[nodiscard]] Elem act(Elem x, Elem a) const { return table_[x * carrier_.size() + a]; }
  [[nodiscard]] bool defined(Elem x, Elem a) const { return act(x, a) != kUndefined; }
  [[nodiscard]] std::span<const Elem> row(Elem x) const {
    return {table_.data() + x * carrier_.size(), carrier_.size()};
  }
  [[nodiscard]] const std::vector<Elem>& table() const noexcept { return table_; }

  /// D_x = ran theta(x,-), sorted.
  [[nodiscard]] std::vector<Elem> domain(Elem x) const;
  [[nodiscard]] bool in_domain(Elem x, Elem a) const;
  [[nodiscard]] bool is_global() const;

  friend bool operator==(const PartialAction&, const PartialAction&) = default;

 private:
  FiniteGroup group_;
  std::vector<std::string> carrier_;
  std::vector<Elem> table_;
};

/// Checks unit, inverse and guarded composition axioms exhaustively over
/// G x G x A. Reports the first violating triple per axiom:
///   "axiom-1" (unit)         witness (a)
///   "axiom-2" (inverse)      witness (x, a)
///   "axiom-3" (composition)  witness (x, y, a)
ValidationReport validate_partial_action(const PartialAction& pa);

/// theta(x,a) = b iff global(x,a) = b and a, b lie in the subset. The
/// result's carrier is the subset in the given order.
PartialAction restrict_action(const PartialAction& global, std::span<const Elem> subset);

struct MorphismCheck {
  bool ok = true;
  /// First (x, a) with theta(x,a) defined but theta'(x, phi(a)) undefined or
  /// different from phi(theta(x,a)).
  std::optional<std::pair<Elem, Elem>> witness;

  explicit operator bool() const noexcept { return ok; }
};

/// Actions must be over the same group; phi maps src carrier into dst carrier.
MorphismCheck check_morphism(const PartialAction& src, const PartialAction& dst,
                             std::span<const Elem> phi);

std::vector<Elem> compose_maps(std::span<const Elem> first, std::span<const Elem> second);

}  // namespace pglob

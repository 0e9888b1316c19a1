#pragma once

// Finite groups, semigroups and partial algebras of finite type, together
// with congruences, quotients and isomorphism search.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pglob/types.hpp"

namespace pglob {

/// Row-major n*n multiplication table. Not validated.
struct CayleyTable {
  std::size_t size = 0;
  std::vector<Elem> cells;

  [[nodiscard]] Elem at(Elem a, Elem b) const { return cells[a * size + b]; }

  friend bool operator==(const CayleyTable&, const CayleyTable&) = default;
};

/// Names "0", "1", ... for a carrier of the given size.
std::vector<std::string> default_names(std::size_t n);

ValidationReport validate_semigroup_table(const CayleyTable& table,
                                          std::span<const std::string> names = {});
ValidationReport validate_group_table(const CayleyTable& table,
                                      std::span<const std::string> names = {});

class FinitePartialAlgebra;

class FiniteSemigroup {
 public:
  /// Throws StructuralError on malformed tables and AxiomError when the
  /// product is not associative.
  FiniteSemigroup(std::vector<std::string> names, CayleyTable table);

  [[nodiscard]] std::size_t size() const noexcept { return table_.size; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const { return table_.at(a, b); }
  [[nodiscard]] const CayleyTable& table() const noexcept { return table_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept {
    return names_;
  }
  [[nodiscard]] const std::string& name(Elem a) const { return names_[a]; }
  [[nodiscard]] std::optional<Elem> index_of(std::string_view name) const;

  [[nodiscard]] bool is_idempotent(Elem e) const { return mul(e, e) == e; }
  [[nodiscard]] bool is_central(Elem e) const;
  /// Regular with commuting idempotents.
  [[nodiscard]] bool is_inverse() const;
  /// The unique inverse of a in an inverse semigroup, if any.
  [[nodiscard]] std::optional<Elem> inverse_of(Elem a) const;

  /// One total binary operation.
  [[nodiscard]] FinitePartialAlgebra as_algebra() const;

  friend bool operator==(const FiniteSemigroup&, const FiniteSemigroup&) = default;

 private:
  std::vector<std::string> names_;
  CayleyTable table_;
};

class FiniteGroup {
 public:
  /// Throws StructuralError or AxiomError (associativity, identity, inverses).
  FiniteGroup(std::vector<std::string> names, CayleyTable table);

  [[nodiscard]] std::size_t size() const noexcept { return table_.size; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const { return table_.at(a, b); }
  [[nodiscard]] Elem inv(Elem a) const { return inverse_[a]; }
  [[nodiscard]] Elem identity() const noexcept { return identity_; }
  [[nodiscard]] const CayleyTable& table() const noexcept { return table_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept {
    return names_;
  }
  [[nodiscard]] const std::string& name(Elem a) const { return names_[a]; }
  [[nodiscard]] std::optional<Elem> index_of(std::string_view name) const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::vector<std::string> names_;
  CayleyTable table_;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
};

/// Z_n with elements named "0".."n-1" unless names are given.
FiniteGroup cyclic_group(std::size_t n, std::vector<std::string> names = {});
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_group_3();

/// One partial operation: n^arity cells in row-major order. A nullary
/// operation is a single optional cell.
struct OpTable {
  unsigned arity = 0;
  std::vector<Elem> cells;
};

ValidationReport validate_algebra_tables(std::size_t size,
                                         std::span<const OpTable> ops);

/// Partial algebra of finite type. A total algebra is the special case with
/// no undefined cells.
class FinitePartialAlgebra {
 public:
  /// Throws StructuralError when a table has the wrong shape or an entry is
  /// neither an element index nor kUndefined.
  FinitePartialAlgebra(std::vector<std::string> names, std::vector<OpTable> ops);

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t op_count() const noexcept { return ops_.size(); }
  [[nodiscard]] unsigned arity(std::size_t op) const { return ops_[op].arity; }
  [[nodiscard]] std::vector<unsigned> signature() const;
  [[nodiscard]] const OpTable& op(std::size_t op) const { return ops_[op]; }
  [[nodiscard]] const std::vector<OpTable>& ops() const noexcept { return ops_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept {
    return names_;
  }
  [[nodiscard]] const std::string& name(Elem a) const { return names_[a]; }
  [[nodiscard]] std::optional<Elem> index_of(std::string_view name) const;

  /// Number of cells of an operation (n^arity).
  [[nodiscard]] std::size_t cell_count(std::size_t op) const {
    return ops_[op].cells.size();
  }
  [[nodiscard]] std::size_t cell_index(std::span<const Elem> args) const;
  /// Inverse of cell_index; writes arity entries into args.
  void cell_args(std::size_t op, std::size_t cell, std::span<Elem> args) const;

  [[nodiscard]] Elem apply(std::size_t op, std::span<const Elem> args) const {
    return ops_[op].cells[cell_index(args)];
  }
  [[nodiscard]] bool is_total() const;

  friend bool operator==(const FinitePartialAlgebra&,
                         const FinitePartialAlgebra&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<OpTable> ops_;
};

/// Partition of a carrier; each element maps to the least member of its block.
class Congruence {
 public:
  static Congruence identity(std::size_t n);
  static Congruence full(std::size_t n);
  /// Any labelling; elements with equal labels share a block.
  static Congruence from_labels(std::span<const std::size_t> labels);

  [[nodiscard]] std::size_t carrier_size() const noexcept { return rep_.size(); }
  [[nodiscard]] Elem rep(Elem a) const { return rep_[a]; }
  [[nodiscard]] bool related(Elem a, Elem b) const { return rep_[a] == rep_[b]; }
  [[nodiscard]] std::size_t block_count() const noexcept { return block_of_rep_count_; }
  /// Dense block number, ordered by representative.
  [[nodiscard]] std::size_t block_index(Elem a) const { return block_[a]; }
  [[nodiscard]] std::vector<std::vector<Elem>> blocks() const;
  [[nodiscard]] bool contains(const Congruence& finer) const;

  friend bool operator==(const Congruence& a, const Congruence& b) {
    return a.rep_ == b.rep_;
  }

 private:
  explicit Congruence(std::vector<Elem> rep);
  std::vector<Elem> rep_;
  std::vector<std::size_t> block_;
  std::size_t block_of_rep_count_ = 0;
};

using ElementPair = std::pair<Elem, Elem>;

/// Operation index plus two argument tuples whose images are unrelated.
struct SubstitutionWitness {
  std::size_t op = 0;
  std::vector<Elem> lhs_args;
  std::vector<Elem> rhs_args;
};

std::optional<SubstitutionWitness> find_substitution_violation(
    const FinitePartialAlgebra& alg, const Congruence& c);

inline bool is_congruence(const FinitePartialAlgebra& alg, const Congruence& c) {
  return c.carrier_size() == alg.size() && !find_substitution_violation(alg, c);
}

/// Least congruence containing the pairs (worklist fixpoint over defined cells).
Congruence congruence_closure(const FinitePartialAlgebra& alg,
                              std::span<const ElementPair> pairs);

/// Thrown by quotient() when representative tuples disagree.
class InvalidCongruenceError : public std::runtime_error {
 public:
  InvalidCongruenceError(std::string what, SubstitutionWitness witness)
      : std::runtime_error(std::move(what)), witness_(std::move(witness)) {}
  [[nodiscard]] const SubstitutionWitness& witness() const noexcept {
    return witness_;
  }

 private:
  SubstitutionWitness witness_;
};

/// Blocks are numbered by Congruence::block_index and named after their
/// representative. A block tuple is defined iff some representative tuple is.
FinitePartialAlgebra quotient(const FinitePartialAlgebra& alg, const Congruence& c);

/// First defined cell that the map fails to carry over.
struct HomomorphismWitness {
  std::size_t op = 0;
  std::vector<Elem> args;
};

std::optional<HomomorphismWitness> find_homomorphism_violation(
    const FinitePartialAlgebra& src, const FinitePartialAlgebra& dst,
    std::span<const Elem> map);

inline bool is_homomorphism(const FinitePartialAlgebra& src,
                            const FinitePartialAlgebra& dst,
                            std::span<const Elem> map) {
  return !find_homomorphism_violation(src, dst, map);
}

/// (a,b) related iff (map(a), map(b)) related. Throws PreconditionError if
/// map is not a homomorphism src -> dst.
Congruence preimage_congruence(const FinitePartialAlgebra& src,
                               const FinitePartialAlgebra& dst,
                               std::span<const Elem> map,
                               const Congruence& target);

/// Image of a pair set under a map.
std::vector<ElementPair> image_pairs(std::span<const ElementPair> pairs,
                                     std::span<const Elem> map);
std::vector<ElementPair> congruence_pairs(const Congruence& c);

/// Backtracking search; the first bijection found under element order of
/// `a` is returned. Definedness must match both ways.
std::optional<std::vector<Elem>> find_isomorphism(const FinitePartialAlgebra& a,
                                                  const FinitePartialAlgebra& b);

bool is_isomorphism(const FinitePartialAlgebra& a, const FinitePartialAlgebra& b,
                    std::span<const Elem> map);

}  // namespace pglob

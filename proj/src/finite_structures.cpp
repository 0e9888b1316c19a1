#include "pglob/finite_structures.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "pglob/union_find.hpp"

namespace pglob {

namespace {

std::string elem_name(std::span<const std::string> names, std::size_t a) {
  if (a < names.size()) {
    return names[a];
  }
  return std::to_string(a);
}

std::string tuple_text(std::span<const std::string> names, std::span<const Elem> args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += elem_name(names, args[i]);
  }
  return out + ")";
}

std::size_t ipow(std::size_t base, unsigned exp) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
  }
  return r;
}

// Structural checks shared by group and semigroup tables.
bool check_table_shape(const CayleyTable& table, std::span<const std::string> names,
                       ValidationReport& report) {
  if (table.size == 0) {
    report.structural("size", "carrier must be nonempty");
    return false;
  }
  if (!names.empty() && names.size() != table.size) {
    report.structural("names", "expected " + std::to_string(table.size) + " names, got " +
                                   std::to_string(names.size()));
    return false;
  }
  if (table.cells.size() != table.size * table.size) {
    report.structural("shape", "table has " + std::to_string(table.cells.size()) +
                                   " cells, expected " +
                                   std::to_string(table.size * table.size));
    return false;
  }
  for (std::size_t a = 0; a < table.size; ++a) {
    for (std::size_t b = 0; b < table.size; ++b) {
      Elem c = table.cells[a * table.size + b];
      if (c >= table.size) {
        report.structural("index-range",
                          "entry at (" + elem_name(names, a) + "," + elem_name(names, b) +
                              ") is out of range",
                          {a, b});
        return false;
      }
    }
  }
  return true;
}

void check_associativity(const CayleyTable& t, std::span<const std::string> names,
                         ValidationReport& report) {
  for (Elem a = 0; a < t.size; ++a) {
    for (Elem b = 0; b < t.size; ++b) {
      Elem ab = t.at(a, b);
      for (Elem c = 0; c < t.size; ++c) {
        if (t.at(ab, c) != t.at(a, t.at(b, c))) {
          report.axiom("associativity",
                       "(" + elem_name(names, a) + elem_name(names, b) + ")" +
                           elem_name(names, c) + " != " + elem_name(names, a) + "(" +
                           elem_name(names, b) + elem_name(names, c) + ")",
                       {a, b, c});
          return;
        }
      }
    }
  }
}

std::optional<Elem> find_identity(const CayleyTable& t) {
  for (Elem e = 0; e < t.size; ++e) {
    bool ok = true;
    for (Elem g = 0; g < t.size && ok; ++g) {
      ok = t.at(e, g) == g && t.at(g, e) == g;
    }
    if (ok) {
      return e;
    }
  }
  return std::nullopt;
}

std::optional<Elem> lookup(std::span<const std::string> names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    return std::nullopt;
  }
  return static_cast<Elem>(it - names.begin());
}

[[noreturn]] void throw_report(const ValidationReport& report) {
  if (!report.structurally_sound()) {
    throw StructuralError(report.summary());
  }
  throw AxiomError(report);
}

}  // namespace

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(std::to_string(i));
  }
  return out;
}

ValidationReport validate_semigroup_table(const CayleyTable& table,
                                          std::span<const std::string> names) {
  ValidationReport report;
  if (check_table_shape(table, names, report)) {
    check_associativity(table, names, report);
  }
  return report;
}

ValidationReport validate_group_table(const CayleyTable& table,
                                      std::span<const std::string> names) {
  ValidationReport report;
  if (!check_table_shape(table, names, report)) {
    return report;
  }
  check_associativity(table, names, report);
  auto e = find_identity(table);
  if (!e) {
    report.axiom("identity", "no two-sided identity element");
    return report;
  }
  for (Elem g = 0; g < table.size; ++g) {
    bool found = false;
    for (Elem h = 0; h < table.size && !found; ++h) {
      found = table.at(g, h) == *e && table.at(h, g) == *e;
    }
    if (!found) {
      report.axiom("inverse", elem_name(names, g) + " has no inverse", {g});
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// FiniteSemigroup

FiniteSemigroup::FiniteSemigroup(std::vector<std::string> names, CayleyTable table)
    : names_(std::move(names)), table_(std::move(table)) {
  if (names_.empty()) {
    names_ = default_names(table_.size);
  }
  auto report = validate_semigroup_table(table_, names_);
  if (!report.valid()) {
    throw_report(report);
  }
}

std::optional<Elem> FiniteSemigroup::index_of(std::string_view name) const {
  return lookup(names_, name);
}

bool FiniteSemigroup::is_central(Elem e) const {
  for (Elem s = 0; s < size(); ++s) {
    if (mul(e, s) != mul(s, e)) {
      return false;
    }
  }
  return true;
}

bool FiniteSemigroup::is_inverse() const {
  for (Elem a = 0; a < size(); ++a) {
    if (!inverse_of(a)) {
      return false;
    }
  }
  for (Elem e = 0; e < size(); ++e) {
    if (!is_idempotent(e)) {
      continue;
    }
    for (Elem f = 0; f < size(); ++f) {
      if (is_idempotent(f) && mul(e, f) != mul(f, e)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<Elem> FiniteSemigroup::inverse_of(Elem a) const {
  std::optional<Elem> found;
  for (Elem b = 0; b < size(); ++b) {
    if (mul(mul(a, b), a) == a && mul(mul(b, a), b) == b) {
      if (found) {
        return std::nullopt;
      }
      found = b;
    }
  }
  return found;
}

FinitePartialAlgebra FiniteSemigroup::as_algebra() const {
  return FinitePartialAlgebra(names_, {OpTable{2, table_.cells}});
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::string> names, CayleyTable table)
    : names_(std::move(names)), table_(std::move(table)) {
  if (names_.empty()) {
    names_ = default_names(table_.size);
  }
  auto report = validate_group_table(table_, names_);
  if (!report.valid()) {
    throw_report(report);
  }
  identity_ = *find_identity(table_);
  inverse_.resize(table_.size);
  for (Elem g = 0; g < table_.size; ++g) {
    for (Elem h = 0; h < table_.size; ++h) {
      if (table_.at(g, h) == identity_) {
        inverse_[g] = h;
        break;
      }
    }
  }
}

std::optional<Elem> FiniteGroup::index_of(std::string_view name) const {
  return lookup(names_, name);
}

FiniteGroup cyclic_group(std::size_t n, std::vector<std::string> names) {
  CayleyTable t{n, std::vector<Elem>(n * n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      t.cells[a * n + b] = static_cast<Elem>((a + b) % n);
    }
  }
  return FiniteGroup(std::move(names), std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.size() * b.size();
  CayleyTable t{n, std::vector<Elem>(n * n)};
  std::vector<std::string> names;
  for (Elem i = 0; i < a.size(); ++i) {
    for (Elem j = 0; j < b.size(); ++j) {
      names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
    }
  }
  for (Elem p = 0; p < n; ++p) {
    for (Elem q = 0; q < n; ++q) {
      Elem i = a.mul(p / b.size(), q / b.size());
      Elem j = b.mul(p % b.size(), q % b.size());
      t.cells[p * n + q] = static_cast<Elem>(i * b.size() + j);
    }
  }
  return FiniteGroup(std::move(names), std::move(t));
}

FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto name = [](const std::array<int, 3>& q) {
    return std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]);
  };
  std::vector<std::string> names;
  for (const auto& q : perms) {
    names.push_back(name(q));
  }
  CayleyTable t{6, std::vector<Elem>(36)};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> r{};
      for (int k = 0; k < 3; ++k) {
        r[k] = perms[i][perms[j][k]];  // (pq)(k) = p(q(k))
      }
      t.cells[i * 6 + j] =
          static_cast<Elem>(std::find(perms.begin(), perms.end(), r) - perms.begin());
    }
  }
  return FiniteGroup(std::move(names), std::move(t));
}

// ---------------------------------------------------------------------------
// FinitePartialAlgebra

ValidationReport validate_algebra_tables(std::size_t size, std::span<const OpTable> ops) {
  ValidationReport report;
  if (size == 0) {
    report.structural("size", "carrier must be nonempty");
    return report;
  }
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = ops[k];
    if (op.arity > 8) {
      report.structural("arity", "operation f" + std::to_string(k) + " has arity above 8",
                        {k});
      continue;
    }
    std::size_t expected = ipow(size, op.arity);
    if (op.cells.size() != expected) {
      report.structural("shape", "operation f" + std::to_string(k) + " has " +
                                     std::to_string(op.cells.size()) + " cells, expected " +
                                     std::to_string(expected),
                        {k});
      continue;
    }
    for (std::size_t c = 0; c < op.cells.size(); ++c) {
      if (op.cells[c] != kUndefined && op.cells[c] >= size) {
        report.structural("index-range",
                          "operation f" + std::to_string(k) + " cell " + std::to_string(c) +
                              " is out of range",
                          {k, c});
        break;
      }
    }
  }
  return report;
}

FinitePartialAlgebra::FinitePartialAlgebra(std::vector<std::string> names,
                                           std::vector<OpTable> ops)
    : names_(std::move(names)), ops_(std::move(ops)) {
  auto report = validate_algebra_tables(names_.size(), ops_);
  if (!report.valid()) {
    throw StructuralError(report.summary());
  }
}

std::vector<unsigned> FinitePartialAlgebra::signature() const {
  std::vector<unsigned> out;
  for (const auto& op : ops_) {
    out.push_back(op.arity);
  }
  return out;
}

std::optional<Elem> FinitePartialAlgebra::index_of(std::string_view name) const {
  return lookup(names_, name);
}

std::size_t FinitePartialAlgebra::cell_index(std::span<const Elem> args) const {
  std::size_t idx = 0;
  for (Elem a : args) {
    idx = idx * names_.size() + a;
  }
  return idx;
}

void FinitePartialAlgebra::cell_args(std::size_t op, std::size_t cell,
                                     std::span<Elem> args) const {
  const unsigned r = ops_[op].arity;
  for (unsigned i = r; i-- > 0;) {
    args[i] = static_cast<Elem>(cell % names_.size());
    cell /= names_.size();
  }
}

bool FinitePartialAlgebra::is_total() const {
  return std::all_of(ops_.begin(), ops_.end(), [](const OpTable& op) {
    return std::none_of(op.cells.begin(), op.cells.end(),
                        [](Elem e) { return e == kUndefined; });
  });
}

// ---------------------------------------------------------------------------
// Congruence

Congruence::Congruence(std::vector<Elem> rep) : rep_(std::move(rep)), block_(rep_.size()) {
  std::vector<std::size_t> index_of_rep(rep_.size(), 0);
  for (std::size_t a = 0; a < rep_.size(); ++a) {
    if (rep_[a] == a) {
      index_of_rep[a] = block_of_rep_count_++;
    }
  }
  for (std::size_t a = 0; a < rep_.size(); ++a) {
    block_[a] = index_of_rep[rep_[a]];
  }
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Elem> rep(n);
  for (std::size_t a = 0; a < n; ++a) {
    rep[a] = static_cast<Elem>(a);
  }
  return Congruence(std::move(rep));
}

Congruence Congruence::full(std::size_t n) { return Congruence(std::vector<Elem>(n, 0)); }

Congruence Congruence::from_labels(std::span<const std::size_t> labels) {
  std::map<std::size_t, Elem> first;
  std::vector<Elem> rep(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) {
    auto [it, inserted] = first.emplace(labels[a], static_cast<Elem>(a));
    rep[a] = it->second;
  }
  return Congruence(std::move(rep));
}

std::vector<std::vector<Elem>> Congruence::blocks() const {
  std::vector<std::vector<Elem>> out(block_count());
  for (std::size_t a = 0; a < rep_.size(); ++a) {
    out[block_[a]].push_back(static_cast<Elem>(a));
  }
  return out;
}

bool Congruence::contains(const Congruence& finer) const {
  if (finer.carrier_size() != carrier_size()) {
    return false;
  }
  for (std::size_t a = 0; a < rep_.size(); ++a) {
    if (!related(static_cast<Elem>(a), finer.rep(static_cast<Elem>(a)))) {
      return false;
    }
  }
  return true;
}

std::optional<SubstitutionWitness> find_substitution_violation(
    const FinitePartialAlgebra& alg, const Congruence& c) {
  const std::size_t m = c.block_count();
  std::vector<Elem> args;
  for (std::size_t k = 0; k < alg.op_count(); ++k) {
    const unsigned r = alg.arity(k);
    args.resize(r);
    std::vector<std::size_t> first(ipow(m, r), SIZE_MAX);
    const auto& cells = alg.op(k).cells;
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
      if (cells[cell] == kUndefined) {
        continue;
      }
      alg.cell_args(k, cell, args);
      std::size_t key = 0;
      for (Elem a : args) {
        key = key * m + c.block_index(a);
      }
      if (first[key] == SIZE_MAX) {
        first[key] = cell;
      } else if (!c.related(cells[first[key]], cells[cell])) {
        SubstitutionWitness w{k, std::vector<Elem>(r), args};
        alg.cell_args(k, first[key], w.lhs_args);
        return w;
      }
    }
  }
  return std::nullopt;
}

Congruence congruence_closure(const FinitePartialAlgebra& alg,
                              std::span<const ElementPair> pairs) {
  const std::size_t n = alg.size();
  UnionFind uf(n);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw PreconditionError("congruence_closure: pair index out of range");
    }
    uf.unite(a, b);
  }
  std::vector<Elem> args;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < alg.op_count(); ++k) {
      const unsigned r = alg.arity(k);
      if (r == 0) {
        continue;
      }
      args.resize(r);
      std::vector<std::size_t> first(ipow(n, r), SIZE_MAX);
      const auto& cells = alg.op(k).cells;
      for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        if (cells[cell] == kUndefined) {
          continue;
        }
        alg.cell_args(k, cell, args);
        std::size_t key = 0;
        for (Elem a : args) {
          key = key * n + uf.find(a);
        }
        if (first[key] == SIZE_MAX) {
          first[key] = cell;
        } else if (uf.unite(cells[first[key]], cells[cell])) {
          changed = true;
        }
      }
    }
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = uf.find(a);
  }
  return Congruence::from_labels(labels);
}

FinitePartialAlgebra quotient(const FinitePartialAlgebra& alg, const Congruence& c) {
  if (c.carrier_size() != alg.size()) {
    throw PreconditionError("quotient: congruence is on a different carrier");
  }
  const std::size_t m = c.block_count();
  std::vector<std::string> names(m);
  for (Elem a = 0; a < alg.size(); ++a) {
    if (c.rep(a) == a) {
      names[c.block_index(a)] = alg.name(a);
    }
  }
  std::vector<OpTable> ops;
  std::vector<Elem> args;
  for (std::size_t k = 0; k < alg.op_count(); ++k) {
    const unsigned r = alg.arity(k);
    args.resize(r);
    OpTable out{r, std::vector<Elem>(ipow(m, r), kUndefined)};
    std::vector<std::size_t> source(out.cells.size(), 0);
    const auto& cells = alg.op(k).cells;
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
      if (cells[cell] == kUndefined) {
        continue;
      }
      alg.cell_args(k, cell, args);
      std::size_t key = 0;
      for (Elem a : args) {
        key = key * m + c.block_index(a);
      }
      auto value = static_cast<Elem>(c.block_index(cells[cell]));
      if (out.cells[key] == kUndefined) {
        out.cells[key] = value;
        source[key] = cell;
      } else if (out.cells[key] != value) {
        SubstitutionWitness w{k, std::vector<Elem>(r), args};
        alg.cell_args(k, source[key], w.lhs_args);
        throw InvalidCongruenceError(
            "quotient: partition violates the substitution property for f" +
                std::to_string(k) + " at " + tuple_text(alg.names(), w.lhs_args) + " vs " +
                tuple_text(alg.names(), w.rhs_args),
            std::move(w));
      }
    }
    ops.push_back(std::move(out));
  }
  return FinitePartialAlgebra(std::move(names), std::move(ops));
}

std::optional<HomomorphismWitness> find_homomorphism_violation(
    const FinitePartialAlgebra& src, const FinitePartialAlgebra& dst,
    std::span<const Elem> map) {
  if (src.signature() != dst.signature()) {
    throw PreconditionError("homomorphism check: signatures differ");
  }
  if (map.size() != src.size()) {
    throw PreconditionError("homomorphism check: map does not cover the source carrier");
  }
  for (Elem e : map) {
    if (e >= dst.size()) {
      throw PreconditionError("homomorphism check: map leaves the target carrier");
    }
  }
  std::vector<Elem> args;
  std::vector<Elem> image;
  for (std::size_t k = 0; k < src.op_count(); ++k) {
    const unsigned r = src.arity(k);
    args.resize(r);
    image.resize(r);
    const auto& cells = src.op(k).cells;
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
      if (cells[cell] == kUndefined) {
        continue;
      }
      src.cell_args(k, cell, args);
      for (unsigned i = 0; i < r; ++i) {
        image[i] = map[args[i]];
      }
      if (dst.apply(k, image) != map[cells[cell]]) {
        return HomomorphismWitness{k, args};
      }
    }
  }
  return std::nullopt;
}

Congruence preimage_congruence(const FinitePartialAlgebra& src,
                               const FinitePartialAlgebra& dst, std::span<const Elem> map,
                               const Congruence& target) {
  if (target.carrier_size() != dst.size()) {
    throw PreconditionError("preimage_congruence: congruence is on a different carrier");
  }
  if (auto w = find_homomorphism_violation(src, dst, map)) {
    throw PreconditionError("preimage_congruence: map is not a homomorphism at f" +
                            std::to_string(w->op) + tuple_text(src.names(), w->args));
  }
  std::vector<std::size_t> labels(src.size());
  for (std::size_t a = 0; a < src.size(); ++a) {
    labels[a] = target.rep(map[a]);
  }
  return Congruence::from_labels(labels);
}

std::vector<ElementPair> image_pairs(std::span<const ElementPair> pairs,
                                     std::span<const Elem> map) {
  std::vector<ElementPair> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    out.emplace_back(map[a], map[b]);
  }
  return out;
}

std::vector<ElementPair> congruence_pairs(const Congruence& c) {
  std::vector<ElementPair> out;
  for (Elem a = 0; a < c.carrier_size(); ++a) {
    if (c.rep(a) != a) {
      out.emplace_back(c.rep(a), a);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search

bool is_isomorphism(const FinitePartialAlgebra& a, const FinitePartialAlgebra& b,
                    std::span<const Elem> map) {
  if (a.size() != b.size() || a.signature() != b.signature() || map.size() != a.size()) {
    return false;
  }
  std::vector<bool> hit(b.size(), false);
  for (Elem e : map) {
    if (e >= b.size() || hit[e]) {
      return false;
    }
    hit[e] = true;
  }
  std::vector<Elem> args;
  std::vector<Elem> image;
  for (std::size_t k = 0; k < a.op_count(); ++k) {
    const unsigned r = a.arity(k);
    args.resize(r);
    image.resize(r);
    for (std::size_t cell = 0; cell < a.cell_count(k); ++cell) {
      a.cell_args(k, cell, args);
      for (unsigned i = 0; i < r; ++i) {
        image[i] = map[args[i]];
      }
      Elem av = a.op(k).cells[cell];
      Elem bv = b.apply(k, image);
      if ((av == kUndefined) != (bv == kUndefined)) {
        return false;
      }
      if (av != kUndefined && map[av] != bv) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Per-element counts that any isomorphism must preserve.
std::vector<std::vector<long>> element_invariants(const FinitePartialAlgebra& alg) {
  const std::size_t n = alg.size();
  std::vector<std::vector<long>> inv(n);
  std::vector<Elem> args;
  for (std::size_t k = 0; k < alg.op_count(); ++k) {
    const unsigned r = alg.arity(k);
    args.resize(r);
    // per element: [defined at pos 0..r-1][undefined at pos 0..r-1][as output][diagonal]
    const std::size_t width = 2 * r + 2;
    std::vector<long> counts(n * width, 0);
    const auto& cells = alg.op(k).cells;
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
      alg.cell_args(k, cell, args);
      const bool def = cells[cell] != kUndefined;
      for (unsigned i = 0; i < r; ++i) {
        ++counts[args[i] * width + (def ? i : r + i)];
      }
      if (def) {
        ++counts[cells[cell] * width + 2 * r];
      }
    }
    for (Elem e = 0; e < n; ++e) {
      if (r > 0) {
        std::vector<Elem> diag(r, e);
        Elem v = alg.apply(k, diag);
        counts[e * width + 2 * r + 1] = v == kUndefined ? 2 : (v == e ? 1 : 0);
      }
      inv[e].insert(inv[e].end(), counts.begin() + static_cast<long>(e * width),
                    counts.begin() + static_cast<long>((e + 1) * width));
    }
  }
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const FinitePartialAlgebra& a, const FinitePartialAlgebra& b)
      : a_(a), b_(b), inv_a_(element_invariants(a)), inv_b_(element_invariants(b)),
        map_(a.size(), kUndefined), used_(b.size(), false) {}

  std::optional<std::vector<Elem>> run() {
    if (search(0) && is_isomorphism(a_, b_, map_)) {
      return map_;
    }
    return std::nullopt;
  }

 private:
  bool search(Elem next) {
    if (next == a_.size()) {
      return true;
    }
    for (Elem cand = 0; cand < b_.size(); ++cand) {
      if (used_[cand] || inv_a_[next] != inv_b_[cand]) {
        continue;
      }
      map_[next] = cand;
      used_[cand] = true;
      if (consistent(next) && search(next + 1)) {
        return true;
      }
      map_[next] = kUndefined;
      used_[cand] = false;
    }
    return false;
  }

  // Checks every cell whose arguments are all assigned and involve `last`.
  bool consistent(Elem last) {
    std::vector<Elem> args;
    std::vector<Elem> image;
    for (std::size_t k = 0; k < a_.op_count(); ++k) {
      const unsigned r = a_.arity(k);
      args.resize(r);
      image.resize(r);
      for (std::size_t cell = 0; cell < a_.cell_count(k); ++cell) {
        a_.cell_args(k, cell, args);
        bool ready = r == 0 || std::find(args.begin(), args.end(), last) != args.end();
        for (unsigned i = 0; i < r && ready; ++i) {
          ready = map_[args[i]] != kUndefined;
        }
        if (!ready) {
          continue;
        }
        for (unsigned i = 0; i < r; ++i) {
          image[i] = map_[args[i]];
        }
        Elem av = a_.op(k).cells[cell];
        Elem bv = b_.apply(k, image);
        if ((av == kUndefined) != (bv == kUndefined)) {
          return false;
        }
        if (av == kUndefined) {
          continue;
        }
        if (map_[av] != kUndefined) {
          if (map_[av] != bv) {
            return false;
          }
        } else if (used_[bv]) {
          return false;
        }
      }
    }
    return true;
  }

  const FinitePartialAlgebra& a_;
  const FinitePartialAlgebra& b_;
  std::vector<std::vector<long>> inv_a_;
  std::vector<std::vector<long>> inv_b_;
  std::vector<Elem> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Elem>> find_isomorphism(const FinitePartialAlgebra& a,
                                                  const FinitePartialAlgebra& b) {
  if (a.size() != b.size() || a.signature() != b.signature()) {
    return std::nullopt;
  }
  return IsoSearch(a, b).run();
}

}  // namespace pglob

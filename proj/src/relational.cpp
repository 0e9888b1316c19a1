#include "pglob/relational.hpp"

#include <algorithm>

namespace pglob {

namespace {

std::string tuple_text(const Tuple& t, const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += (i ? "," : "") + names[t[i]];
  }
  return out + ")";
}

}  // namespace

Relation::Relation(unsigned arity, std::vector<Tuple> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
  for (const auto& t : tuples_) {
    if (t.size() != arity_) {
      throw StructuralError("relation: tuple of length " + std::to_string(t.size()) +
                            " in a relation of arity " + std::to_string(arity_));
    }
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Relation::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

void RelationalSystem::check_ranges() const {
  for (const auto& r : relations) {
    for (const auto& t : r.tuples()) {
      for (Elem e : t) {
        if (e >= size) {
          throw StructuralError("relational system: tuple entry out of range");
        }
      }
    }
  }
}

ValidationReport validate_relational_action(const PartialAction& pa, const RelationalSystem& rs) {
  if (rs.size != pa.carrier_size()) {
    throw PreconditionError("validate_relational_action: carrier sizes differ");
  }
  rs.check_ranges();
  ValidationReport report;
  const auto& g = pa.group();
  for (std::size_t r = 0; r < rs.relations.size(); ++r) {
    const auto& rel = rs.relations[r];
    for (Elem x = 0; x < g.size(); ++x) {
      for (const auto& t : rel.tuples()) {
        Tuple moved(t.size());
        bool all_defined = true;
        for (std::size_t i = 0; i < t.size() && all_defined; ++i) {
          moved[i] = pa.act(x, t[i]);
          all_defined = moved[i] != kUndefined;
        }
        if (all_defined && !rel.contains(moved)) {
          std::vector<std::size_t> witness{r, x};
          witness.insert(witness.end(), t.begin(), t.end());
          report.axiom("preservation",
                       "relation " + std::to_string(r) + ": " + tuple_text(t, pa.carrier()) +
                           " moved by " + g.name(x) + " to " + tuple_text(moved, pa.carrier()) +
                           " outside the relation",
                       std::move(witness));
          return report;
        }
      }
    }
  }
  return report;
}

LiftedSystem lift_relational_system(const PartialAction& pa, const RelationalSystem& rs) {
  auto report = validate_relational_action(pa, rs);
  if (!report.valid()) {
    throw AxiomError(std::move(report));
  }
  UniversalGlobalization ug(pa);
  RelationalSystem lifted{ug.size(), {}};
  for (const auto& rel : rs.relations) {
    std::vector<Tuple> tuples;
    for (Elem x = 0; x < ug.group().size(); ++x) {
      for (const auto& t : rel.tuples()) {
        Tuple lt(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
          lt[i] = ug.class_of(x, t[i]);
        }
        tuples.push_back(std::move(lt));
      }
    }
    lifted.relations.emplace_back(rel.arity(), std::move(tuples));
  }

  for (std::size_t r = 0; r < rs.relations.size(); ++r) {
    const auto& lrel = lifted.relations[r];
    for (Elem x = 0; x < ug.group().size(); ++x) {
      for (const auto& t : lrel.tuples()) {
        Tuple moved(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
          moved[i] = ug.act(x, t[i]);
        }
        ensure(lrel.contains(moved), "lift: global action does not preserve a lifted relation");
      }
    }
    // Subsystem: a lifted tuple inside iota(A) comes from a tuple of A.
    std::vector<Elem> back(ug.size(), kUndefined);
    for (Elem a = 0; a < pa.carrier_size(); ++a) {
      back[ug.embed(a)] = a;
    }
    for (const auto& t : lrel.tuples()) {
      Tuple orig(t.size());
      bool inside = true;
      for (std::size_t i = 0; i < t.size() && inside; ++i) {
        orig[i] = back[t[i]];
        inside = orig[i] != kUndefined;
      }
      ensure(!inside || rs.relations[r].contains(orig),
             "lift: iota(A) is not a subsystem of the lifted system");
    }
  }
  return LiftedSystem{std::move(ug), std::move(lifted)};
}

FunctionalityCheck is_functional(const RelationalSystem& rs, std::size_t relation) {
  const auto& rel = rs.relations.at(relation);
  const auto& ts = rel.tuples();
  if (rel.arity() == 0) {
    return {ts.size() <= 1, std::nullopt};
  }
  // Sorted order puts tuples with equal prefixes next to each other.
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (std::equal(ts[i].begin(), ts[i].end() - 1, ts[i - 1].begin())) {
      return {false, std::pair{ts[i - 1], ts[i]}};
    }
  }
  return {};
}

RelationalSystem relational_form(const FinitePartialAlgebra& alg) {
  RelationalSystem rs{alg.size(), {}};
  std::vector<Elem> args;
  for (std::size_t op = 0; op < alg.op_count(); ++op) {
    const unsigned n = alg.arity(op);
    args.assign(n, 0);
    std::vector<Tuple> tuples;
    for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
      Elem v = alg.op(op).cells[cell];
      if (v == kUndefined) {
        continue;
      }
      alg.cell_args(op, cell, args);
      Tuple t(args.begin(), args.end());
      t.push_back(v);
      tuples.push_back(std::move(t));
    }
    rs.relations.emplace_back(n + 1, std::move(tuples));
  }
  return rs;
}

}  // namespace pglob

#include "pglob/partial_algebra.hpp"

#include <algorithm>

namespace pglob {

namespace {

void require_same_carrier(const PartialAction& pa, const FinitePartialAlgebra& alg) {
  if (pa.carrier_size() != alg.size()) {
    throw PreconditionError("action and algebra have different carriers");
  }
}

/// Applies x to every argument; false if some image is undefined.
bool move_args(const PartialAction& pa, Elem x, std::span<const Elem> args, std::span<Elem> out) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    out[i] = pa.act(x, args[i]);
    if (out[i] == kUndefined) {
      return false;
    }
  }
  return true;
}

Elem act_partial(const PartialAction& pa, Elem x, Elem a) {
  return a == kUndefined ? kUndefined : pa.act(x, a);
}

}  // namespace

ValidationReport check_action_compatibility(const PartialAction& pa,
                                            const FinitePartialAlgebra& alg) {
  require_same_carrier(pa, alg);
  ValidationReport report;
  std::vector<Elem> args, moved;
  for (std::size_t op = 0; op < alg.op_count() && report.valid(); ++op) {
    args.resize(alg.arity(op));
    moved.resize(alg.arity(op));
    for (Elem x = 0; x < pa.group().size() && report.valid(); ++x) {
      for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
        alg.cell_args(op, cell, args);
        Elem xf = act_partial(pa, x, alg.op(op).cells[cell]);
        if (xf == kUndefined || !move_args(pa, x, args, moved)) {
          continue;
        }
        if (alg.apply(op, moved) != xf) {
          std::vector<std::size_t> witness{op, x};
          witness.insert(witness.end(), args.begin(), args.end());
          report.axiom("compatibility",
                       "op " + std::to_string(op) + ": f(x a) != x f(a) for x=" +
                           pa.group().name(x),
                       std::move(witness));
          break;
        }
      }
    }
  }
  bool relational = validate_relational_action(pa, relational_form(alg)).valid();
  ensure(relational == report.valid(),
         "compatibility check disagrees with preservation of the graph relations");
  return report;
}

GlobalizabilityVerdict check_globalizability(const PartialAction& pa,
                                             const FinitePartialAlgebra& alg) {
  if (auto r = check_action_compatibility(pa, alg); !r.valid()) {
    throw PreconditionError("check_globalizability: action is not compatible: " + r.summary());
  }
  GlobalizabilityVerdict verdict;
  std::vector<Elem> args, moved;
  for (std::size_t op = 0; op < alg.op_count() && verdict.globalizable; ++op) {
    args.resize(alg.arity(op));
    moved.resize(alg.arity(op));
    for (Elem x = 0; x < pa.group().size() && verdict.globalizable; ++x) {
      for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
        Elem value = alg.op(op).cells[cell];
        alg.cell_args(op, cell, args);
        if (value == kUndefined || !move_args(pa, x, args, moved)) {
          continue;
        }
        Elem lhs = alg.apply(op, moved);
        Elem rhs = pa.act(x, value);
        if (lhs != rhs) {
          verdict.globalizable = false;
          verdict.witness = GlobalizabilityWitness{op, x, args, lhs, rhs};
          break;
        }
      }
    }
  }

  auto lifted = lift_relational_system(pa, relational_form(alg));
  bool functional = true;
  for (std::size_t r = 0; r < lifted.system.relations.size(); ++r) {
    functional = functional && is_functional(lifted.system, r).functional;
  }
  ensure(functional == verdict.globalizable,
         "globalizability criterion disagrees with functionality of the lifted relations");
  return verdict;
}

bool domains_are_subalgebras(const PartialAction& pa, const FinitePartialAlgebra& alg) {
  require_same_carrier(pa, alg);
  std::vector<Elem> args;
  for (Elem x = 0; x < pa.group().size(); ++x) {
    std::vector<bool> in(alg.size(), false);
    for (Elem a : pa.domain(x)) {
      in[a] = true;
    }
    for (std::size_t op = 0; op < alg.op_count(); ++op) {
      args.resize(alg.arity(op));
      for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
        Elem v = alg.op(op).cells[cell];
        if (v == kUndefined) {
          continue;
        }
        alg.cell_args(op, cell, args);
        bool inside = std::all_of(args.begin(), args.end(), [&](Elem a) { return in[a]; });
        if (inside && !in[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

GlobalizedAlgebra build_globalized_algebra(const PartialAction& pa,
                                           const FinitePartialAlgebra& alg) {
  auto verdict = check_globalizability(pa, alg);
  if (!verdict) {
    throw NotGlobalizableError(*verdict.witness);
  }
  UniversalGlobalization ug(pa);
  const std::size_t k = ug.size();
  std::vector<OpTable> ops;
  std::vector<Elem> args, lifted;
  for (std::size_t op = 0; op < alg.op_count(); ++op) {
    const unsigned n = alg.arity(op);
    std::size_t cells = 1;
    for (unsigned i = 0; i < n; ++i) {
      cells *= k;
    }
    OpTable table{n, std::vector<Elem>(cells, kUndefined)};
    args.resize(n);
    lifted.resize(n);
    for (Elem x = 0; x < ug.group().size(); ++x) {
      for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
        Elem v = alg.op(op).cells[cell];
        if (v == kUndefined) {
          continue;
        }
        alg.cell_args(op, cell, args);
        std::size_t index = 0;
        for (unsigned i = 0; i < n; ++i) {
          index = index * k + ug.class_of(x, args[i]);
        }
        Elem value = ug.class_of(x, v);
        ensure(table.cells[index] == kUndefined || table.cells[index] == value,
               "globalized algebra: operation not well-defined");
        table.cells[index] = value;
      }
    }
    ops.push_back(std::move(table));
  }
  FinitePartialAlgebra au(ug.names(), std::move(ops));

  // iota(A) is a relative subalgebra: f(a) = b iff f(iota a) = iota b.
  const auto iota = ug.embedding();
  std::vector<Elem> back(k, kUndefined);
  for (Elem a = 0; a < alg.size(); ++a) {
    back[iota[a]] = a;
  }
  for (std::size_t op = 0; op < alg.op_count(); ++op) {
    args.resize(alg.arity(op));
    lifted.resize(alg.arity(op));
    for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
      alg.cell_args(op, cell, args);
      for (std::size_t i = 0; i < args.size(); ++i) {
        lifted[i] = iota[args[i]];
      }
      Elem up = au.apply(op, lifted);
      Elem expected = alg.op(op).cells[cell];
      Elem seen = up == kUndefined ? kUndefined : back[up];
      ensure(seen == expected, "globalized algebra: iota(A) is not a relative subalgebra");
    }
    // The global action acts by automorphisms.
    for (Elem x = 0; x < ug.group().size(); ++x) {
      for (std::size_t cell = 0; cell < au.cell_count(op); ++cell) {
        au.cell_args(op, cell, lifted);
        std::vector<Elem> moved(lifted.size());
        for (std::size_t i = 0; i < lifted.size(); ++i) {
          moved[i] = ug.act(x, lifted[i]);
        }
        Elem v = au.op(op).cells[cell];
        Elem w = au.apply(op, moved);
        ensure((v == kUndefined ? kUndefined : ug.act(x, v)) == w,
               "globalized algebra: global action is not by automorphisms");
      }
    }
  }
  ensure(verify_globalization(pa, ug.as_action(), iota).valid(),
         "globalized algebra: not a globalization");
  return GlobalizedAlgebra{std::move(ug), std::move(au)};
}

}  // namespace pglob

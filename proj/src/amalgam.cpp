#include "pglob/amalgam.hpp"

#include <algorithm>
#include <stdexcept>

#include "pglob/partial_algebra.hpp"

namespace pglob {

std::vector<Elem> Amalgam::intersection(std::size_t i, std::size_t j) const {
  std::vector<Elem> out;
  const auto& m = map(i, j);
  for (Elem a = 0; a < m.size(); ++a) {
    if (m[a] != kUndefined) {
      out.push_back(a);
    }
  }
  return out;
}

namespace {

std::string ij(const Amalgam& am, std::size_t i, std::size_t j) {
  return "(" + am.indices[i] + "," + am.indices[j] + ")";
}

}  // namespace

ValidationReport validate_amalgam(const Amalgam& am) {
  ValidationReport report;
  const std::size_t n = am.index_count();
  if (n == 0 || am.algebras.size() != n || am.alpha.size() != n * n) {
    report.structural("shape", "amalgam needs one algebra per index and n*n maps");
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (am.algebras[i].signature() != am.algebras[0].signature()) {
      report.structural("shape", "algebras have different signatures", {i});
      return report;
    }
    if (am.kind == Amalgam::Kind::semigroup &&
        (am.algebras[i].op_count() != 1 || am.algebras[i].arity(0) != 2 ||
         !am.algebras[i].is_total())) {
      report.structural("shape", "semigroup amalgam with a non-semigroup member", {i});
      return report;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto& m = am.map(i, j);
      if (m.size() != am.algebras[i].size() ||
          std::any_of(m.begin(), m.end(), [&](Elem e) {
            return e != kUndefined && e >= am.algebras[j].size();
          })) {
        report.structural("shape", "map " + ij(am, i, j) + " has the wrong shape", {i, j});
        return report;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = am.map(i, i);
    for (Elem a = 0; a < m.size(); ++a) {
      if (m[a] != a) {
        report.axiom("diagonal", "alpha" + ij(am, i, i) + " is not the identity", {i, a});
        return report;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = am.map(i, j);
      const auto& g = am.map(j, i);
      for (Elem a = 0; a < f.size(); ++a) {
        if (f[a] != kUndefined && g[f[a]] != a) {
          report.axiom("inverse", "alpha" + ij(am, j, i) + " does not invert alpha" + ij(am, i, j),
                       {i, j, a});
          return report;
        }
      }
      for (Elem b = 0; b < g.size(); ++b) {
        if (g[b] != kUndefined && f[g[b]] != b) {
          report.axiom("inverse", "alpha" + ij(am, i, j) + " does not invert alpha" + ij(am, j, i),
                       {j, i, b});
          return report;
        }
      }
    }
  }

  std::vector<Elem> args, moved;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& alg = am.algebras[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = am.map(i, j);
      for (std::size_t op = 0; op < alg.op_count(); ++op) {
        args.resize(alg.arity(op));
        moved.resize(alg.arity(op));
        for (std::size_t cell = 0; cell < alg.cell_count(op); ++cell) {
          alg.cell_args(op, cell, args);
          bool inside = std::all_of(args.begin(), args.end(),
                                    [&](Elem a) { return f[a] != kUndefined; });
          if (!inside) {
            continue;
          }
          Elem v = alg.op(op).cells[cell];
          if (v != kUndefined && f[v] == kUndefined) {
            report.axiom("closure", "A" + ij(am, i, j) + " is not closed under op " +
                                        std::to_string(op),
                         {i, j, op});
            return report;
          }
          for (std::size_t k = 0; k < args.size(); ++k) {
            moved[k] = f[args[k]];
          }
          Elem w = am.algebras[j].apply(op, moved);
          if ((v == kUndefined ? kUndefined : f[v]) != w) {
            report.axiom("isomorphism", "alpha" + ij(am, i, j) + " does not respect op " +
                                            std::to_string(op),
                         {i, j, op});
            return report;
          }
        }
      }
    }
  }
  return report;
}

Amalgam amalgam_from_partial_action(const PartialAction& pa, const FinitePartialAlgebra& alg,
                                    Amalgam::Kind kind) {
  if (auto r = validate_partial_action(pa); !r.valid()) {
    throw PreconditionError("amalgam: invalid partial action: " + r.summary());
  }
  if (auto r = check_action_compatibility(pa, alg); !r.valid()) {
    throw PreconditionError("amalgam: action does not respect the operations: " + r.summary());
  }
  if (!domains_are_subalgebras(pa, alg)) {
    throw PreconditionError("amalgam: some domain is not a subalgebra");
  }
  const auto& g = pa.group();
  Amalgam am;
  am.kind = kind;
  am.indices = g.names();
  am.algebras.assign(g.size(), alg);
  am.alpha.resize(g.size() * g.size());
  for (Elem x = 0; x < g.size(); ++x) {
    for (Elem y = 0; y < g.size(); ++y) {
      auto row = pa.row(g.mul(g.inv(y), x));
      am.alpha[x * g.size() + y].assign(row.begin(), row.end());
    }
  }
  auto report = validate_amalgam(am);
  ensure(report.valid(), "amalgam of a partial action is invalid: " + report.summary());
  return am;
}

Amalgam amalgam_from_partial_action(const SemigroupPartialAction& spa) {
  return amalgam_from_partial_action(spa.action(), spa.semigroup().as_algebra(),
                                     Amalgam::Kind::semigroup);
}

ValidationReport check_neumann_conditions(const Amalgam& am) {
  ValidationReport report;
  const std::size_t n = am.index_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto& fij = am.map(i, j);
        const auto& fik = am.map(i, k);
        const auto& fjk = am.map(j, k);
        std::vector<bool> image(am.algebras[j].size(), false);
        for (Elem a = 0; a < fij.size(); ++a) {
          if (fij[a] != kUndefined && fik[a] != kUndefined) {
            image[fij[a]] = true;
            if (fjk[fij[a]] != fik[a]) {
              report.axiom("neumann-cocycle",
                           "alpha" + ij(am, j, k) + " o alpha" + ij(am, i, j) + " != alpha" +
                               ij(am, i, k),
                           {i, j, k, a});
              return report;
            }
          }
        }
        const auto& fji = am.map(j, i);
        for (Elem b = 0; b < image.size(); ++b) {
          bool expected = fji[b] != kUndefined && fjk[b] != kUndefined;
          if (image[b] != expected) {
            report.axiom("neumann-intersection",
                         "alpha" + ij(am, i, j) + " does not carry A" + ij(am, i, j) + " n A" +
                             ij(am, i, k) + " onto A" + ij(am, j, i) + " n A" + ij(am, j, k),
                         {i, j, k});
            return report;
          }
        }
      }
    }
  }
  return report;
}

ValidationReport verify_embedding(const Amalgam& am, const FinitePartialAlgebra& target,
                                  const std::vector<std::vector<Elem>>& maps) {
  ValidationReport report;
  const std::size_t n = am.index_count();
  if (maps.size() != n) {
    report.structural("map-shape", "one map per index required");
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (maps[i].size() != am.algebras[i].size() ||
        std::any_of(maps[i].begin(), maps[i].end(), [&](Elem e) { return e >= target.size(); })) {
      report.structural("map-shape", "map " + am.indices[i] + " has the wrong shape", {i});
      return report;
    }
    if (am.algebras[i].signature() != target.signature()) {
      report.structural("map-shape", "target has a different signature", {i});
      return report;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (auto w = find_homomorphism_violation(am.algebras[i], target, maps[i])) {
      std::vector<std::size_t> witness{i, w->op};
      witness.insert(witness.end(), w->args.begin(), w->args.end());
      report.axiom("homomorphism", "phi_" + am.indices[i] + " is not a homomorphism", witness);
    }
    std::vector<Elem> seen(target.size(), kUndefined);
    for (Elem a = 0; a < maps[i].size(); ++a) {
      if (seen[maps[i][a]] != kUndefined) {
        report.axiom("injective", "phi_" + am.indices[i] + " is not injective",
                     {i, seen[maps[i][a]], a});
        break;
      }
      seen[maps[i][a]] = a;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = am.map(i, j);
      for (Elem a = 0; a < f.size(); ++a) {
        if (f[a] != kUndefined && maps[j][f[a]] != maps[i][a]) {
          report.axiom("compatibility",
                       "phi_" + am.indices[j] + " o alpha" + ij(am, i, j) + " != phi_" +
                           am.indices[i],
                       {i, j, a});
          return report;
        }
      }
      if (i == j) {
        continue;
      }
      std::vector<bool> in_i(target.size(), false), in_j(target.size(), false),
          in_ij(target.size(), false);
      for (Elem a = 0; a < maps[i].size(); ++a) {
        in_i[maps[i][a]] = true;
        if (f[a] != kUndefined) {
          in_ij[maps[i][a]] = true;
        }
      }
      for (Elem b = 0; b < maps[j].size(); ++b) {
        in_j[maps[j][b]] = true;
      }
      for (Elem c = 0; c < target.size(); ++c) {
        if ((in_i[c] && in_j[c]) != in_ij[c]) {
          report.axiom("intersection",
                       "phi_" + am.indices[i] + "(A) n phi_" + am.indices[j] +
                           "(A) != phi_" + am.indices[i] + "(A" + ij(am, i, j) + ")",
                       {i, j, c});
          return report;
        }
      }
    }
  }
  return report;
}

AmalgamLetters::AmalgamLetters(const Amalgam& am) : offset{0} {
  for (const auto& alg : am.algebras) {
    offset.push_back(offset.back() + alg.size());
  }
}

std::pair<std::size_t, Elem> AmalgamLetters::decode(Letter l) const {
  auto it = std::upper_bound(offset.begin(), offset.end(), static_cast<std::size_t>(l));
  std::size_t i = static_cast<std::size_t>(it - offset.begin()) - 1;
  return {i, static_cast<Elem>(l - offset[i])};
}

Word apply_amalgam_step(const Amalgam& am, const Word& w, const AmalgamStep& step) {
  AmalgamLetters letters(am);
  const std::size_t n = am.index_count();
  if (step.copy >= n || step.target >= n || step.pos >= w.size()) {
    throw std::invalid_argument("amalgam step out of range");
  }
  const auto& alg = am.algebras[step.copy];
  auto pos = static_cast<std::ptrdiff_t>(step.pos);
  Word out(w.begin(), w.begin() + pos);
  switch (step.kind) {
    case AmalgamStep::Kind::reduce: {
      if (step.pos + 1 >= w.size() || w[step.pos] != letters.letter(step.copy, step.a) ||
          w[step.pos + 1] != letters.letter(step.copy, step.b)) {
        throw std::invalid_argument("reduction does not apply");
      }
      Elem args[2] = {step.a, step.b};
      Elem v = alg.apply(0, args);
      if (v == kUndefined) {
        throw std::invalid_argument("reduction of an undefined product");
      }
      out.push_back(letters.letter(step.copy, v));
      out.insert(out.end(), w.begin() + pos + 2, w.end());
      break;
    }
    case AmalgamStep::Kind::expand: {
      if (step.a >= alg.size() || step.b >= alg.size()) {
        throw std::invalid_argument("expansion factor out of range");
      }
      Elem args[2] = {step.a, step.b};
      Elem v = alg.apply(0, args);
      if (v == kUndefined || w[step.pos] != letters.letter(step.copy, v)) {
        throw std::invalid_argument("expansion does not apply");
      }
      out.push_back(letters.letter(step.copy, step.a));
      out.push_back(letters.letter(step.copy, step.b));
      out.insert(out.end(), w.begin() + pos + 1, w.end());
      break;
    }
    case AmalgamStep::Kind::amalgamate: {
      if (step.a >= alg.size() || w[step.pos] != letters.letter(step.copy, step.a)) {
        throw std::invalid_argument("amalgamation does not apply");
      }
      Elem image = am.map(step.copy, step.target)[step.a];
      if (image == kUndefined) {
        throw std::invalid_argument("amalgamation outside the intersection");
      }
      out.push_back(letters.letter(step.target, image));
      out.insert(out.end(), w.begin() + pos + 1, w.end());
      break;
    }
  }
  return out;
}

bool replay_amalgam_derivation(const Amalgam& am, const AmalgamDerivation& d) {
  try {
    if (d.words.empty() || d.words.front() != d.start || d.words.size() != d.steps.size() + 1) {
      return false;
    }
    Word w = d.start;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      w = apply_amalgam_step(am, w, d.steps[i]);
      if (w != d.words[i + 1]) {
        return false;
      }
    }
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string render_letter(const Amalgam& am, Letter l) {
  auto [i, a] = AmalgamLetters(am).decode(l);
  return am.algebras[i].name(a) + "_" + am.indices[i];
}

std::string render_amalgam_word(const Amalgam& am, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out += (i ? " " : "") + render_letter(am, w[i]);
  }
  return out;
}

std::string render_amalgam_step(const Amalgam& am, const AmalgamStep& step) {
  const auto& alg = am.algebras[step.copy];
  const std::string& c = am.indices[step.copy];
  auto product = [&] {
    Elem args[2] = {step.a, step.b};
    Elem v = alg.apply(0, args);
    return v == kUndefined ? std::string("-") : alg.name(v);
  };
  std::string at = " at " + std::to_string(step.pos) + ": ";
  switch (step.kind) {
    case AmalgamStep::Kind::reduce:
      return "reduce" + at + alg.name(step.a) + "_" + c + " " + alg.name(step.b) + "_" + c +
             " -> " + product() + "_" + c;
    case AmalgamStep::Kind::expand:
      return "expand" + at + product() + "_" + c + " -> " + alg.name(step.a) + "_" + c + " " +
             alg.name(step.b) + "_" + c;
    case AmalgamStep::Kind::amalgamate:
      return "amalgamate" + at + alg.name(step.a) + "_" + c + " -> " +
             am.algebras[step.target].name(am.map(step.copy, step.target)[step.a]) + "_" +
             am.indices[step.target];
  }
  return {};
}

namespace {

struct AmalgamNeighbors {
  const Amalgam& am;
  AmalgamLetters letters;
  /// Per letter: (copy, a, b) factorizations in (a, b) order.
  std::vector<std::vector<std::pair<Elem, Elem>>> factors;

  explicit AmalgamNeighbors(const Amalgam& a) : am(a), letters(a) {
    factors.resize(letters.count());
    for (std::size_t i = 0; i < am.index_count(); ++i) {
      const auto& alg = am.algebras[i];
      for (Elem p = 0; p < alg.size(); ++p) {
        for (Elem q = 0; q < alg.size(); ++q) {
          Elem args[2] = {p, q};
          Elem v = alg.apply(0, args);
          if (v != kUndefined) {
            factors[letters.letter(i, v)].emplace_back(p, q);
          }
        }
      }
    }
  }

  void operator()(const Word& w, std::size_t max_len,
                  std::vector<std::pair<AmalgamStep, Word>>& out) const {
    const std::size_t n = am.index_count();
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      auto [i, a] = letters.decode(w[pos]);
      auto p = static_cast<std::ptrdiff_t>(pos);
      if (pos + 1 < w.size()) {
        auto [j, b] = letters.decode(w[pos + 1]);
        if (i == j) {
          Elem args[2] = {a, b};
          Elem v = am.algebras[i].apply(0, args);
          if (v != kUndefined) {
            Word next(w.begin(), w.begin() + p);
            next.push_back(letters.letter(i, v));
            next.insert(next.end(), w.begin() + p + 2, w.end());
            out.emplace_back(AmalgamStep{pos, AmalgamStep::Kind::reduce, i, a, b, i},
                             std::move(next));
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        Elem image = am.map(i, j)[a];
        if (j == i || image == kUndefined) {
          continue;
        }
        Word next = w;
        next[pos] = letters.letter(j, image);
        out.emplace_back(AmalgamStep{pos, AmalgamStep::Kind::amalgamate, i, a, 0, j},
                         std::move(next));
      }
      if (w.size() < max_len) {
        for (auto [x, y] : factors[w[pos]]) {
          Word next(w.begin(), w.begin() + p);
          next.push_back(letters.letter(i, x));
          next.push_back(letters.letter(i, y));
          next.insert(next.end(), w.begin() + p + 1, w.end());
          out.emplace_back(AmalgamStep{pos, AmalgamStep::Kind::expand, i, x, y, i},
                           std::move(next));
        }
      }
    }
  }
};

}  // namespace

EmbeddabilityReport bounded_embeddability_check(const Amalgam& am, std::size_t max_len,
                                                std::size_t chain_limit) {
  if (max_len < 1) {
    throw PreconditionError("bounded_embeddability_check: max_len must be at least 1");
  }
  if (am.kind != Amalgam::Kind::semigroup) {
    throw PreconditionError("bounded_embeddability_check: only semigroup amalgams are supported");
  }
  if (auto r = validate_amalgam(am); !r.valid()) {
    throw PreconditionError("bounded_embeddability_check: invalid amalgam: " + r.summary());
  }
  AmalgamNeighbors nb(am);
  EmbeddabilityReport report;
  report.max_len = max_len;
  report.labels = letter_components<AmalgamStep>(nb.letters.count(), max_len, nb);

  auto explained = [&](Letter l, Letter m) {
    auto [i, a] = nb.letters.decode(l);
    auto [j, b] = nb.letters.decode(m);
    return am.map(i, j)[a] == b;
  };

  const auto count = static_cast<Letter>(nb.letters.count());
  std::vector<std::pair<Letter, Letter>> pairs;
  for (Letter root = 0; root < count; ++root) {
    if (report.labels[root] != root) {
      continue;
    }
    std::vector<Letter> group;
    for (Letter l = 0; l < count; ++l) {
      if (report.labels[l] == root) {
        group.push_back(l);
      }
    }
    bool against_root = false;
    for (Letter l : group) {
      if (l != root && !explained(l, root)) {
        pairs.emplace_back(l, root);
        against_root = true;
      }
    }
    for (std::size_t p = 0; p < group.size() && !against_root; ++p) {
      for (std::size_t q = p + 1; q < group.size(); ++q) {
        if (!explained(group[q], group[p])) {
          pairs.emplace_back(group[q], group[p]);
          against_root = true;
          break;
        }
      }
    }
  }
  for (auto [l, m] : pairs) {
    AmalgamViolation v{l, m, {}};
    if (report.violations.size() < chain_limit) {
      auto d = shortest_derivation<AmalgamStep>(Word{l}, Word{m}, max_len, nb);
      ensure(d.has_value(), "embeddability check: merged letters without a derivation");
      v.chain = std::move(*d);
    }
    report.violations.push_back(std::move(v));
  }
  return report;
}

}  // namespace pglob

#include "pglob/set_globalization.hpp"

#include <algorithm>

#include "pglob/union_find.hpp"

namespace pglob {

UniversalGlobalization::UniversalGlobalization(const PartialAction& pa)
    : group_(pa.group()),
      group_names_(pa.group().names()),
      carrier_names_(pa.carrier()),
      carrier_size_(pa.carrier_size()) {
  auto report = validate_partial_action(pa);
  if (!report.valid()) {
    throw AxiomError(std::move(report));
  }
  const std::size_t m = group_.size();
  const std::size_t n = carrier_size_;
  const std::size_t pairs = m * n;
  auto related = [&](std::size_t p, std::size_t q) {
    Elem x = static_cast<Elem>(p / n), a = static_cast<Elem>(p % n);
    Elem y = static_cast<Elem>(q / n), b = static_cast<Elem>(q % n);
    return pa.act(group_.mul(group_.inv(y), x), a) == b;
  };

  UnionFind uf(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t q = 0; q < pairs; ++q) {
      if (related(p, q)) {
        uf.unite(p, q);
      }
    }
  }
  // ~ must already be an equivalence: every pair in a block is related.
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t q = 0; q < pairs; ++q) {
      if (uf.same(p, q) && !related(p, q)) {
        throw InvariantViolation("universal globalization: ~ is not an equivalence at (" +
                                 group_.name(static_cast<Elem>(p / n)) + "," +
                                 pa.name(static_cast<Elem>(p % n)) + "), (" +
                                 group_.name(static_cast<Elem>(q / n)) + "," +
                                 pa.name(static_cast<Elem>(q % n)) + ")");
      }
    }
  }

  std::vector<ClassId> root_class(pairs, kUndefined);
  class_of_.assign(pairs, 0);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t r = uf.find(p);
    if (root_class[r] == kUndefined) {
      root_class[r] = static_cast<ClassId>(classes_.size());
      classes_.push_back(GlobClass{static_cast<Elem>(p / n), static_cast<Elem>(p % n), {}});
    }
    ClassId c = root_class[r];
    class_of_[p] = c;
    classes_[c].members.emplace_back(static_cast<Elem>(p / n), static_cast<Elem>(p % n));
  }

  slot_.assign(classes_.size() * m, kUndefined);
  for (ClassId c = 0; c < classes_.size(); ++c) {
    for (auto [x, a] : classes_[c].members) {
      ensure(slot_[c * m + x] == kUndefined, "universal globalization: two members share a slot");
      slot_[c * m + x] = a;
    }
  }

  act_.assign(m * classes_.size(), 0);
  for (Elem x = 0; x < m; ++x) {
    for (ClassId c = 0; c < classes_.size(); ++c) {
      const auto& k = classes_[c];
      ClassId image = class_of(group_.mul(x, k.rep_slot), k.rep_elem);
      for (auto [y, a] : k.members) {
        ensure(class_of(group_.mul(x, y), a) == image,
               "universal globalization: action not well-defined on " + name(c));
      }
      act_[x * classes_.size() + c] = image;
    }
  }
}

std::vector<Elem> UniversalGlobalization::embedding() const {
  std::vector<Elem> out(carrier_size_);
  for (Elem a = 0; a < carrier_size_; ++a) {
    out[a] = embed(a);
  }
  return out;
}

std::string UniversalGlobalization::name(ClassId c) const {
  const auto& k = classes_[c];
  return "[" + group_names_[k.rep_slot] + "," + carrier_names_[k.rep_elem] + "]";
}

std::vector<std::string> UniversalGlobalization::names() const {
  std::vector<std::string> out;
  out.reserve(classes_.size());
  for (ClassId c = 0; c < classes_.size(); ++c) {
    out.push_back(name(c));
  }
  return out;
}

std::optional<ClassId> UniversalGlobalization::parse_name(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
    return std::nullopt;
  }
  std::string_view inner = text.substr(1, text.size() - 2);
  // Names may contain commas (e.g. product groups), so try every split.
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] != ',') {
      continue;
    }
    auto gx = trim(inner.substr(0, i));
    auto ea = trim(inner.substr(i + 1));
    auto x = std::find(group_names_.begin(), group_names_.end(), gx);
    auto a = std::find(carrier_names_.begin(), carrier_names_.end(), ea);
    if (x != group_names_.end() && a != carrier_names_.end()) {
      return class_of(static_cast<Elem>(x - group_names_.begin()),
                      static_cast<Elem>(a - carrier_names_.begin()));
    }
  }
  return std::nullopt;
}

PartialAction UniversalGlobalization::as_action() const {
  return PartialAction(group_, names(), act_);
}

ValidationReport verify_globalization(const PartialAction& pa, const PartialAction& global,
                                      std::span<const Elem> iota) {
  if (!(pa.group() == global.group())) {
    throw PreconditionError("verify_globalization: actions are over different groups");
  }
  if (!global.is_global()) {
    throw PreconditionError("verify_globalization: target action is not total");
  }
  if (!validate_partial_action(global).valid()) {
    throw PreconditionError("verify_globalization: target action violates the axioms");
  }
  if (iota.size() != pa.carrier_size() ||
      std::any_of(iota.begin(), iota.end(), [&](Elem e) { return e >= global.carrier_size(); })) {
    throw PreconditionError("verify_globalization: embedding has the wrong shape");
  }

  ValidationReport report;
  const auto n = static_cast<Elem>(pa.carrier_size());
  std::vector<Elem> preimage(global.carrier_size(), kUndefined);
  for (Elem a = 0; a < n; ++a) {
    if (preimage[iota[a]] != kUndefined) {
      report.axiom("iota-injective",
                   "iota(" + pa.name(preimage[iota[a]]) + ") = iota(" + pa.name(a) + ")",
                   {preimage[iota[a]], a});
      break;
    }
    preimage[iota[a]] = a;
  }
  if (auto m = check_morphism(pa, global, iota); !m) {
    auto [x, a] = *m.witness;
    report.axiom("iota-morphism",
                 "x iota(a) != iota(xa) at (" + pa.group().name(x) + "," + pa.name(a) + ")",
                 {x, a});
  }
  bool only_if = false;
  bool if_part = false;
  for (Elem x = 0; x < pa.group().size(); ++x) {
    for (Elem a = 0; a < n; ++a) {
      bool inside = preimage[global.act(x, iota[a])] != kUndefined;
      bool defined = pa.defined(x, a);
      if (defined && !inside && !only_if) {
        report.axiom("only-if",
                     pa.group().name(x) + " " + pa.name(a) + " defined but x iota(a) not in iota(A)",
                     {x, a});
        only_if = true;
      }
      if (!defined && inside && !if_part) {
        report.axiom("if",
                     "x iota(a) in iota(A) but " + pa.group().name(x) + " " + pa.name(a) +
                         " undefined",
                     {x, a});
        if_part = true;
      }
    }
  }
  return report;
}

std::vector<Elem> factor_morphism(const UniversalGlobalization& ug, const PartialAction& pa,
                                  const PartialAction& target, std::span<const Elem> phi) {
  if (!target.is_global()) {
    throw PreconditionError("factor_morphism: target action is not total");
  }
  if (auto m = check_morphism(pa, target, phi); !m) {
    throw PreconditionError("factor_morphism: phi is not a morphism at (" +
                            pa.group().name(m.witness->first) + "," +
                            pa.name(m.witness->second) + ")");
  }
  std::vector<Elem> psi(ug.size());
  for (ClassId c = 0; c < ug.size(); ++c) {
    const auto& k = ug.cls(c);
    psi[c] = target.act(k.rep_slot, phi[k.rep_elem]);
    for (auto [x, a] : k.members) {
      ensure(target.act(x, phi[a]) == psi[c], "factor_morphism: psi not well-defined");
      // Every class is x iota(a), so psi is forced on it.
      ensure(ug.act(x, ug.embed(a)) == c, "factor_morphism: class not generated by iota(A)");
    }
  }
  for (Elem a = 0; a < pa.carrier_size(); ++a) {
    ensure(psi[ug.embed(a)] == phi[a], "factor_morphism: psi o iota != phi");
  }
  ensure(static_cast<bool>(check_morphism(ug.as_action(), target, psi)),
         "factor_morphism: psi is not a morphism");
  return psi;
}

}  // namespace pglob

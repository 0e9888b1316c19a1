#include "pglob/partial_action.hpp"

#include <algorithm>

namespace pglob {

PartialAction::PartialAction(FiniteGroup group, std::vector<std::string> carrier,
                             std::vector<Elem> table)
    : group_(std::move(group)), carrier_(std::move(carrier)), table_(std::move(table)) {
  if (carrier_.empty()) {
    throw StructuralError("partial action: carrier must be nonempty");
  }
  if (table_.size() != group_.size() * carrier_.size()) {
    throw StructuralError("partial action: table has " + std::to_string(table_.size()) +
                          " cells, expected " +
                          std::to_string(group_.size() * carrier_.size()));
  }
  for (Elem e : table_) {
    if (e != kUndefined && e >= carrier_.size()) {
      throw StructuralError("partial action: table entry out of range");
    }
  }
}

std::optional<Elem> PartialAction::index_of(std::string_view name) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end()) {
    return std::nullopt;
  }
  return static_cast<Elem>(it - carrier_.begin());
}

std::vector<Elem> PartialAction::domain(Elem x) const {
  std::vector<bool> hit(carrier_.size(), false);
  for (Elem b : row(x)) {
    if (b != kUndefined) {
      hit[b] = true;
    }
  }
  std::vector<Elem> out;
  for (Elem a = 0; a < carrier_.size(); ++a) {
    if (hit[a]) {
      out.push_back(a);
    }
  }
  return out;
}

bool PartialAction::in_domain(Elem x, Elem a) const {
  auto r = row(x);
  return std::find(r.begin(), r.end(), a) != r.end();
}

bool PartialAction::is_global() const {
  return std::none_of(table_.begin(), table_.end(), [](Elem e) { return e == kUndefined; });
}

ValidationReport validate_partial_action(const PartialAction& pa) {
  ValidationReport report;
  const auto& g = pa.group();
  const Elem one = g.identity();
  const auto n = static_cast<Elem>(pa.carrier_size());
  auto gname = [&](Elem x) { return g.name(x); };
  auto aname = [&](Elem a) { return pa.name(a); };

  for (Elem a = 0; a < n; ++a) {
    if (pa.act(one, a) != a) {
      report.axiom("axiom-1", "theta(" + gname(one) + "," + aname(a) + ") != " + aname(a), {a});
      break;
    }
  }

  bool found = false;
  for (Elem x = 0; x < g.size() && !found; ++x) {
    for (Elem a = 0; a < n && !found; ++a) {
      Elem b = pa.act(x, a);
      if (b != kUndefined && pa.act(g.inv(x), b) != a) {
        report.axiom("axiom-2",
                     "theta(" + gname(g.inv(x)) + ",theta(" + gname(x) + "," + aname(a) +
                         ")) != " + aname(a),
                     {x, a});
        found = true;
      }
    }
  }

  found = false;
  for (Elem x = 0; x < g.size() && !found; ++x) {
    for (Elem y = 0; y < g.size() && !found; ++y) {
      for (Elem a = 0; a < n && !found; ++a) {
        Elem ya = pa.act(y, a);
        if (ya == kUndefined) {
          continue;
        }
        Elem xya = pa.act(x, ya);
        if (xya == kUndefined) {
          continue;
        }
        if (pa.act(g.mul(x, y), a) != xya) {
          report.axiom("axiom-3",
                       "theta(" + gname(g.mul(x, y)) + "," + aname(a) + ") != theta(" +
                           gname(x) + ",theta(" + gname(y) + "," + aname(a) + "))",
                       {x, y, a});
          found = true;
        }
      }
    }
  }
  return report;
}

PartialAction restrict_action(const PartialAction& global, std::span<const Elem> subset) {
  if (subset.empty()) {
    throw PreconditionError("restrict_action: subset must be nonempty");
  }
  const std::size_t n = global.carrier_size();
  std::vector<Elem> position(n, kUndefined);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    Elem a = subset[i];
    if (a >= n) {
      throw PreconditionError("restrict_action: subset index out of range");
    }
    if (position[a] != kUndefined) {
      throw PreconditionError("restrict_action: subset lists an element twice");
    }
    position[a] = static_cast<Elem>(i);
    names.push_back(global.name(a));
  }
  const auto& g = global.group();
  std::vector<Elem> table(g.size() * subset.size(), kUndefined);
  for (Elem x = 0; x < g.size(); ++x) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      Elem b = global.act(x, subset[i]);
      if (b != kUndefined && position[b] != kUndefined) {
        table[x * subset.size() + i] = position[b];
      }
    }
  }
  return PartialAction(g, std::move(names), std::move(table));
}

MorphismCheck check_morphism(const PartialAction& src, const PartialAction& dst,
                             std::span<const Elem> phi) {
  if (!(src.group() == dst.group())) {
    throw PreconditionError("check_morphism: actions are over different groups");
  }
  if (phi.size() != src.carrier_size()) {
    throw PreconditionError("check_morphism: map does not cover the source carrier");
  }
  for (Elem e : phi) {
    if (e >= dst.carrier_size()) {
      throw PreconditionError("check_morphism: map leaves the target carrier");
    }
  }
  for (Elem x = 0; x < src.group().size(); ++x) {
    for (Elem a = 0; a < src.carrier_size(); ++a) {
      Elem xa = src.act(x, a);
      if (xa == kUndefined) {
        continue;
      }
      if (dst.act(x, phi[a]) != phi[xa]) {
        return MorphismCheck{false, std::pair{x, a}};
      }
    }
  }
  return {};
}

std::vector<Elem> compose_maps(std::span<const Elem> first, std::span<const Elem> second) {
  std::vector<Elem> out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    out[i] = second[first[i]];
  }
  return out;
}

}  // namespace pglob

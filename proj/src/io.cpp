#include "pglob/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pglob {

namespace {

using nlohmann::json;

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child(const std::string& ptr, const std::string& key) {
  return ptr + "/" + escape_token(key);
}

std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

class Parser {
 public:
  std::vector<InputIssue> issues;
  std::vector<std::string> warnings;

  void error(std::string ptr, std::string message) {
    issues.push_back({std::move(ptr), std::move(message)});
  }

  void report(const std::string& ptr, const ValidationReport& r) {
    for (const auto& v : r.violations()) {
      error(ptr, v.rule + ": " + v.message);
    }
  }

  void check_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : j.items()) {
      bool found = false;
      for (const char* k : known) {
        found = found || key == k;
      }
      if (!found) {
        warnings.push_back(child(ptr, key));
      }
    }
  }

  const json* member(const json& j, const std::string& ptr, const char* key, bool required) {
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) {
        error(ptr, std::string("missing key \"") + key + "\"");
      }
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::vector<std::string>> names(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) {
      error(ptr, "expected a non-empty array of names");
      return std::nullopt;
    }
    std::vector<std::string> out;
    std::set<std::string> seen;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_string() || j[i].get<std::string>().empty()) {
        error(child(ptr, i), "expected a non-empty string");
        ok = false;
        continue;
      }
      auto name = j[i].get<std::string>();
      if (!seen.insert(name).second) {
        error(child(ptr, i), "duplicate name \"" + name + "\"");
        ok = false;
      }
      out.push_back(std::move(name));
    }
    if (!ok) {
      return std::nullopt;
    }
    return out;
  }

  /// Resolves a name; `undefined` (if non-empty) yields kUndefined.
  std::optional<Elem> resolve(const json& j, const std::string& ptr,
                              const std::vector<std::string>& names,
                              const std::string& undefined = {}) {
    if (!j.is_string()) {
      error(ptr, "expected an element name");
      return std::nullopt;
    }
    const auto& s = j.get_ref<const std::string&>();
    if (!undefined.empty() && s == undefined) {
      return kUndefined;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == s) {
        return static_cast<Elem>(i);
      }
    }
    error(ptr, "unknown element \"" + s + "\"");
    return std::nullopt;
  }

  void check_kind(const json& j, const std::string& ptr, const char* expected) {
    if (const json* k = member(j, ptr, "kind", false)) {
      if (!k->is_string() || k->get<std::string>() != expected) {
        error(child(ptr, "kind"), std::string("expected \"") + expected + "\"");
      }
    }
  }

  std::optional<CayleyTable> cayley(const json& j, const std::string& ptr,
                                    const std::vector<std::string>& names) {
    const std::size_t n = names.size();
    if (!j.is_array() || j.size() != n) {
      error(ptr, "expected " + std::to_string(n) + " rows");
      return std::nullopt;
    }
    CayleyTable t{n, std::vector<Elem>(n * n, 0)};
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) {
      const auto row_ptr = child(ptr, a);
      if (!j[a].is_array() || j[a].size() != n) {
        error(row_ptr, "expected " + std::to_string(n) + " entries");
        ok = false;
        continue;
      }
      for (std::size_t b = 0; b < n; ++b) {
        auto e = resolve(j[a][b], child(row_ptr, b), names);
        if (e) {
          t.cells[a * n + b] = *e;
        } else {
          ok = false;
        }
      }
    }
    if (!ok) {
      return std::nullopt;
    }
    return t;
  }

  std::optional<std::pair<std::vector<std::string>, CayleyTable>> magma(
      const json& j, const std::string& ptr, const char* kind) {
    if (!j.is_object()) {
      error(ptr, "expected an object");
      return std::nullopt;
    }
    check_keys(j, ptr, {"kind", "elements", "table"});
    check_kind(j, ptr, kind);
    const json* el = member(j, ptr, "elements", true);
    const json* tb = member(j, ptr, "table", true);
    if (!el || !tb) {
      return std::nullopt;
    }
    auto ns = names(*el, child(ptr, "elements"));
    if (!ns) {
      return std::nullopt;
    }
    auto t = cayley(*tb, child(ptr, "table"), *ns);
    if (!t) {
      return std::nullopt;
    }
    return std::make_pair(std::move(*ns), std::move(*t));
  }

  std::optional<FiniteGroup> group(const json& j, const std::string& ptr) {
    auto m = magma(j, ptr, "group");
    if (!m) {
      return std::nullopt;
    }
    auto r = validate_group_table(m->second, m->first);
    if (!r.valid()) {
      report(child(ptr, "table"), r);
      return std::nullopt;
    }
    return FiniteGroup(std::move(m->first), std::move(m->second));
  }

  std::optional<FiniteSemigroup> semigroup(const json& j, const std::string& ptr) {
    auto m = magma(j, ptr, "semigroup");
    if (!m) {
      return std::nullopt;
    }
    auto r = validate_semigroup_table(m->second, m->first);
    if (!r.valid()) {
      report(child(ptr, "table"), r);
      return std::nullopt;
    }
    return FiniteSemigroup(std::move(m->first), std::move(m->second));
  }

  void op_cells(const json& j, const std::string& ptr, const std::vector<std::string>& names,
                const std::string& undefined, unsigned depth, std::vector<Elem>& out, bool& ok) {
    if (depth == 0) {
      auto e = resolve(j, ptr, names, undefined);
      if (e) {
        out.push_back(*e);
      } else {
        ok = false;
        out.push_back(kUndefined);
      }
      return;
    }
    if (!j.is_array() || j.size() != names.size()) {
      error(ptr, "expected " + std::to_string(names.size()) + " entries");
      ok = false;
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      op_cells(j[i], child(ptr, i), names, undefined, depth - 1, out, ok);
    }
  }

  std::optional<OpTable> op_table(const json& j, const std::string& ptr,
                                  const std::vector<std::string>& names, unsigned arity) {
    if (!j.is_object()) {
      error(ptr, "expected an object");
      return std::nullopt;
    }
    check_keys(j, ptr, {"table", "undefined"});
    std::string undefined = "-";
    if (const json* u = member(j, ptr, "undefined", false)) {
      if (!u->is_string() || u->get<std::string>().empty()) {
        error(child(ptr, "undefined"), "expected a non-empty string");
        return std::nullopt;
      }
      undefined = u->get<std::string>();
      for (const auto& n : names) {
        if (n == undefined) {
          error(child(ptr, "undefined"), "undefined marker collides with an element name");
          return std::nullopt;
        }
      }
    }
    const json* tb = member(j, ptr, "table", true);
    if (!tb) {
      return std::nullopt;
    }
    const auto tptr = child(ptr, "table");
    std::size_t cells = 1;
    for (unsigned i = 0; i < arity; ++i) {
      cells *= names.size();
    }
    OpTable op{arity, {}};
    bool ok = true;
    if (arity == 0 && tb->is_array() && tb->size() == 1) {
      op_cells((*tb)[0], child(tptr, 0), names, undefined, 0, op.cells, ok);
    } else if (arity > 1 && tb->is_array() && tb->size() == cells &&
               std::all_of(tb->begin(), tb->end(), [](const json& e) { return e.is_string(); })) {
      for (std::size_t i = 0; i < cells; ++i) {
        op_cells((*tb)[i], child(tptr, i), names, undefined, 0, op.cells, ok);
      }
    } else {
      op_cells(*tb, tptr, names, undefined, arity, op.cells, ok);
    }
    if (!ok) {
      return std::nullopt;
    }
    return op;
  }

  std::optional<FinitePartialAlgebra> algebra(const json& j, const std::string& ptr) {
    if (!j.is_object()) {
      error(ptr, "expected an object");
      return std::nullopt;
    }
    check_keys(j, ptr, {"kind", "elements", "signature", "ops"});
    check_kind(j, ptr, "partial_algebra");
    const json* el = member(j, ptr, "elements", true);
    const json* sg = member(j, ptr, "signature", true);
    const json* ops = member(j, ptr, "ops", true);
    if (!el || !sg || !ops) {
      return std::nullopt;
    }
    auto ns = names(*el, child(ptr, "elements"));
    if (!ns) {
      return std::nullopt;
    }
    if (!sg->is_array()) {
      error(child(ptr, "signature"), "expected an array of arities");
      return std::nullopt;
    }
    std::vector<unsigned> arities;
    for (std::size_t i = 0; i < sg->size(); ++i) {
      const auto& a = (*sg)[i];
      if (!a.is_number_unsigned() || a.get<unsigned>() > 8) {
        error(child(child(ptr, "signature"), i), "expected an arity between 0 and 8");
        return std::nullopt;
      }
      arities.push_back(a.get<unsigned>());
    }
    if (!ops->is_array() || ops->size() != arities.size()) {
      error(child(ptr, "ops"), "expected one table per signature entry");
      return std::nullopt;
    }
    std::vector<OpTable> tables;
    for (std::size_t i = 0; i < arities.size(); ++i) {
      auto op = op_table((*ops)[i], child(child(ptr, "ops"), i), *ns, arities[i]);
      if (!op) {
        return std::nullopt;
      }
      tables.push_back(std::move(*op));
    }
    return FinitePartialAlgebra(std::move(*ns), std::move(tables));
  }

  std::optional<PartialAction> theta(const json& j, const std::string& ptr, const FiniteGroup& g,
                                     const std::vector<std::string>& carrier) {
    if (!j.is_object()) {
      error(ptr, "expected an object keyed by group elements");
      return std::nullopt;
    }
    const std::size_t n = carrier.size();
    std::vector<Elem> table(g.size() * n, kUndefined);
    for (Elem a = 0; a < n; ++a) {
      table[g.identity() * n + a] = a;
    }
    bool ok = true;
    for (const auto& [key, row] : j.items()) {
      const auto row_ptr = child(ptr, key);
      auto x = g.index_of(key);
      if (!x) {
        error(row_ptr, "unknown group element \"" + key + "\"");
        ok = false;
        continue;
      }
      if (!row.is_object()) {
        error(row_ptr, "expected an object keyed by carrier elements");
        ok = false;
        continue;
      }
      for (Elem a = 0; a < n; ++a) {
        table[*x * n + a] = kUndefined;
      }
      for (const auto& [akey, value] : row.items()) {
        const auto cell_ptr = child(row_ptr, akey);
        auto a = resolve(json(akey), cell_ptr, carrier);
        auto b = resolve(value, cell_ptr, carrier);
        if (!a || !b) {
          ok = false;
          continue;
        }
        table[*x * n + *a] = *b;
      }
    }
    if (!ok) {
      return std::nullopt;
    }
    PartialAction pa(g, carrier, std::move(table));
    auto r = validate_partial_action(pa);
    if (!r.valid()) {
      report(ptr, r);
      return std::nullopt;
    }
    return pa;
  }

  std::optional<RelationalSystem> relations(const json& j, const std::string& ptr,
                                            const std::vector<std::string>& carrier) {
    if (!j.is_array()) {
      error(ptr, "expected an array of relations");
      return std::nullopt;
    }
    RelationalSystem rs{carrier.size(), {}};
    bool ok = true;
    for (std::size_t r = 0; r < j.size(); ++r) {
      const auto rptr = child(ptr, r);
      const json& rel = j[r];
      if (!rel.is_object()) {
        error(rptr, "expected an object");
        ok = false;
        continue;
      }
      check_keys(rel, rptr, {"arity", "tuples"});
      const json* ar = member(rel, rptr, "arity", true);
      const json* tu = member(rel, rptr, "tuples", true);
      if (!ar || !tu) {
        ok = false;
        continue;
      }
      if (!ar->is_number_unsigned()) {
        error(child(rptr, "arity"), "expected a non-negative integer");
        ok = false;
        continue;
      }
      const auto arity = ar->get<unsigned>();
      if (!tu->is_array()) {
        error(child(rptr, "tuples"), "expected an array of tuples");
        ok = false;
        continue;
      }
      std::vector<Tuple> tuples;
      for (std::size_t t = 0; t < tu->size(); ++t) {
        const auto tptr = child(child(rptr, "tuples"), t);
        const json& tj = (*tu)[t];
        if (!tj.is_array() || tj.size() != arity) {
          error(tptr, "expected " + std::to_string(arity) + " entries");
          ok = false;
          continue;
        }
        Tuple tuple;
        for (std::size_t k = 0; k < arity; ++k) {
          auto e = resolve(tj[k], child(tptr, k), carrier);
          if (!e) {
            ok = false;
            break;
          }
          tuple.push_back(*e);
        }
        if (tuple.size() == arity) {
          tuples.push_back(std::move(tuple));
        }
      }
      rs.relations.emplace_back(arity, std::move(tuples));
    }
    if (!ok) {
      return std::nullopt;
    }
    return rs;
  }

  std::optional<Amalgam> amalgam(const json& j, const std::string& ptr) {
    if (!j.is_object()) {
      error(ptr, "expected an object");
      return std::nullopt;
    }
    check_keys(j, ptr, {"kind", "indices", "members", "maps"});
    Amalgam am;
    const json* kind = member(j, ptr, "kind", true);
    const json* idx = member(j, ptr, "indices", true);
    const json* mem = member(j, ptr, "members", true);
    if (!kind || !idx || !mem) {
      return std::nullopt;
    }
    if (*kind == "semigroup") {
      am.kind = Amalgam::Kind::semigroup;
    } else if (*kind == "partial_algebra") {
      am.kind = Amalgam::Kind::partial_algebra;
    } else {
      error(child(ptr, "kind"), "expected \"semigroup\" or \"partial_algebra\"");
      return std::nullopt;
    }
    auto indices = names(*idx, child(ptr, "indices"));
    if (!indices) {
      return std::nullopt;
    }
    am.indices = std::move(*indices);
    const std::size_t n = am.indices.size();
    if (!mem->is_array() || mem->size() != n) {
      error(child(ptr, "members"), "expected one structure per index");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto mptr = child(child(ptr, "members"), i);
      if (am.kind == Amalgam::Kind::semigroup) {
        auto s = semigroup((*mem)[i], mptr);
        if (!s) {
          return std::nullopt;
        }
        am.algebras.push_back(s->as_algebra());
      } else {
        auto a = algebra((*mem)[i], mptr);
        if (!a) {
          return std::nullopt;
        }
        am.algebras.push_back(std::move(*a));
      }
    }
    am.alpha.resize(n * n);
    std::vector<bool> given(n * n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        am.alpha[i * n + k].assign(am.algebras[i].size(), kUndefined);
      }
      for (Elem a = 0; a < am.algebras[i].size(); ++a) {
        am.alpha[i * n + i][a] = a;
      }
    }
    if (const json* maps = member(j, ptr, "maps", false)) {
      const auto mptr = child(ptr, "maps");
      if (!maps->is_array()) {
        error(mptr, "expected an array of maps");
        return std::nullopt;
      }
      bool ok = true;
      for (std::size_t m = 0; m < maps->size(); ++m) {
        const auto eptr = child(mptr, m);
        const json& e = (*maps)[m];
        if (!e.is_object()) {
          error(eptr, "expected an object");
          ok = false;
          continue;
        }
        check_keys(e, eptr, {"from", "to", "map"});
        const json* from = member(e, eptr, "from", true);
        const json* to = member(e, eptr, "to", true);
        const json* map = member(e, eptr, "map", true);
        if (!from || !to || !map) {
          ok = false;
          continue;
        }
        auto i = resolve(*from, child(eptr, "from"), am.indices);
        auto k = resolve(*to, child(eptr, "to"), am.indices);
        if (!i || !k) {
          ok = false;
          continue;
        }
        if (!map->is_object()) {
          error(child(eptr, "map"), "expected an object");
          ok = false;
          continue;
        }
        auto& alpha = am.alpha[*i * n + *k];
        std::fill(alpha.begin(), alpha.end(), kUndefined);
        given[*i * n + *k] = true;
        for (const auto& [akey, value] : map->items()) {
          const auto cptr = child(child(eptr, "map"), akey);
          auto a = resolve(json(akey), cptr, am.algebras[*i].names());
          auto b = resolve(value, cptr, am.algebras[*k].names());
          if (!a || !b) {
            ok = false;
            continue;
          }
          alpha[*a] = *b;
        }
      }
      if (!ok) {
        return std::nullopt;
      }
    }
    // A map given in one direction only implies its inverse.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i == k || !given[i * n + k] || given[k * n + i]) {
          continue;
        }
        const auto& fwd = am.alpha[i * n + k];
        auto& back = am.alpha[k * n + i];
        for (Elem a = 0; a < fwd.size(); ++a) {
          if (fwd[a] != kUndefined && back[fwd[a]] == kUndefined) {
            back[fwd[a]] = a;
          }
        }
      }
    }
    auto r = validate_amalgam(am);
    if (!r.valid()) {
      report(ptr, r);
      return std::nullopt;
    }
    return am;
  }
};

}  // namespace

InputError::InputError(std::vector<InputIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid input";
        for (const auto& i : issues) {
          msg += "\n  " + (i.pointer.empty() ? std::string("(document)") : i.pointer) + ": " +
                 i.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

InstanceFile parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InputError("", "expected a JSON object");
  }

  Parser p;
  InstanceFile out;
  p.check_keys(doc, "",
               {"group", "carrier", "semigroup", "algebra", "theta", "relations", "amalgam"});

  if (doc.contains("semigroup") && doc.contains("algebra")) {
    p.error("", "give at most one of \"semigroup\" and \"algebra\"");
  }
  if (const json* g = p.member(doc, "", "group", false)) {
    out.group = p.group(*g, "/group");
  }
  if (const json* s = p.member(doc, "", "semigroup", false)) {
    out.semigroup = p.semigroup(*s, "/semigroup");
    if (out.semigroup) {
      out.algebra = out.semigroup->as_algebra();
    }
  } else if (const json* a = p.member(doc, "", "algebra", false)) {
    out.algebra = p.algebra(*a, "/algebra");
  }
  if (out.algebra) {
    out.carrier = out.algebra->names();
  }
  if (const json* c = p.member(doc, "", "carrier", false)) {
    auto names = p.names(*c, "/carrier");
    if (names && out.algebra && *names != out.carrier) {
      p.error("/carrier", "carrier differs from the elements of the structure");
    } else if (names) {
      out.carrier = std::move(*names);
    }
  }

  if (const json* t = p.member(doc, "", "theta", false)) {
    if (!doc.contains("group")) {
      p.error("/theta", "a partial action needs a group");
    } else if (out.carrier.empty() && !doc.contains("carrier") && !out.algebra) {
      p.error("/theta", "a partial action needs a carrier");
    } else if (out.group && !out.carrier.empty()) {
      out.action = p.theta(*t, "/theta", *out.group, out.carrier);
    }
  }
  if (const json* r = p.member(doc, "", "relations", false)) {
    if (out.carrier.empty()) {
      p.error("/relations", "relations need a carrier");
    } else {
      out.relations = p.relations(*r, "/relations", out.carrier);
    }
  }
  if (const json* a = p.member(doc, "", "amalgam", false)) {
    out.amalgam = p.amalgam(*a, "/amalgam");
  }

  if (!out.group && !out.algebra && !out.amalgam && out.carrier.empty() && p.issues.empty()) {
    p.error("", "the document describes no structure");
  }
  if (!p.issues.empty()) {
    throw InputError(std::move(p.issues));
  }
  out.warnings = std::move(p.warnings);
  return out;
}

InstanceFile parse_instance(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_instance_text(text);
}

InstanceFile load_instance(const std::string& path) {
  if (path == "-") {
    return parse_instance(std::cin);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("", "cannot open " + path);
  }
  return parse_instance(in);
}

}  // namespace pglob

#include "pglob/cli.hpp"

#include <algorithm>
#include <cstdint>

#include "CLI11.hpp"
#include "json.hpp"
#include "pglob/io.hpp"
#include "pglob/partial_algebra.hpp"
#include "pglob/term.hpp"

namespace pglob {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::size_t max_len = 4;
  std::string word;
  std::string term;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool verify = false;
};

/// A reported witness did not survive independent replay.
class ReplayFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ojson elem_json(const std::vector<std::string>& names, Elem e) {
  return e == kUndefined ? ojson(nullptr) : ojson(names[e]);
}

ojson violations_json(const ValidationReport& r) {
  ojson out = ojson::array();
  for (const auto& v : r.violations()) {
    out.push_back({{"rule", v.rule}, {"message", v.message}});
  }
  return out;
}

ojson ops_json(const FinitePartialAlgebra& alg) {
  const auto& names = alg.names();
  ojson ops = ojson::array();
  for (std::size_t f = 0; f < alg.op_count(); ++f) {
    const auto& cells = alg.op(f).cells;
    auto cell = [&](std::size_t i) {
      return cells[i] == kUndefined ? ojson("-") : ojson(names[cells[i]]);
    };
    // Nested one level per argument, in row-major order.
    std::size_t next = 0;
    auto nest = [&](auto&& self, unsigned depth) -> ojson {
      if (depth == 0) {
        return cell(next++);
      }
      ojson level = ojson::array();
      for (std::size_t i = 0; i < alg.size(); ++i) {
        level.push_back(self(self, depth - 1));
      }
      return level;
    };
    ops.push_back({{"table", nest(nest, alg.arity(f))}, {"undefined", "-"}});
  }
  return ops;
}

ojson action_json(const PartialAction& pa) {
  const auto& g = pa.group();
  ojson out = ojson::object();
  for (Elem x = 0; x < g.size(); ++x) {
    ojson row = ojson::object();
    for (Elem a = 0; a < pa.carrier_size(); ++a) {
      if (pa.defined(x, a)) {
        row[pa.name(a)] = pa.name(pa.act(x, a));
      }
    }
    out[g.name(x)] = std::move(row);
  }
  return out;
}

ojson embedding_json(const std::vector<std::string>& carrier, const std::vector<Elem>& iota,
                     const std::vector<std::string>& target) {
  ojson out = ojson::object();
  for (Elem a = 0; a < carrier.size(); ++a) {
    out[carrier[a]] = target[iota[a]];
  }
  return out;
}

const PartialAction& need_action(const InstanceFile& inst) {
  if (!inst.action) {
    throw InputError("", "this command needs a group, a carrier and \"theta\"");
  }
  return *inst.action;
}

SemigroupPartialAction need_spa(const InstanceFile& inst) {
  const auto& pa = need_action(inst);
  if (!inst.semigroup) {
    throw InputError("", "this command needs a \"semigroup\"");
  }
  try {
    return SemigroupPartialAction(pa, *inst.semigroup);
  } catch (const AxiomError& e) {
    std::vector<InputIssue> issues;
    for (const auto& v : e.report().violations()) {
      issues.push_back({"/theta", v.rule + ": " + v.message});
    }
    throw InputError(std::move(issues));
  }
}

void need_ideals(const SemigroupPartialAction& spa) {
  auto r = check_ideal_domains(spa);
  if (!r.valid()) {
    std::vector<InputIssue> issues;
    for (const auto& v : r.violations()) {
      issues.push_back({"/theta", "domains must be ideals: " + v.message});
    }
    throw InputError(std::move(issues));
  }
}

ojson step_json(const SemigroupPartialAction& spa, const RewriteStep& st) {
  const auto& S = spa.semigroup();
  return {{"pos", st.pos},
          {"dir", st.dir == RewriteStep::Dir::reduce ? "reduce" : "expand"},
          {"slot", spa.group().name(st.slot)},
          {"s", S.name(st.s)},
          {"t", S.name(st.t)},
          {"rule", render_step(spa, st)}};
}

ojson trace_json(const SemigroupPartialAction& spa, const RewriteTrace& tr) {
  ojson words = ojson::array();
  for (const auto& w : tr.words) {
    words.push_back(render_word(spa, w));
  }
  ojson steps = ojson::array();
  for (const auto& st : tr.steps) {
    steps.push_back(step_json(spa, st));
  }
  return {{"words", std::move(words)}, {"steps", std::move(steps)}};
}

ojson amalgam_step_json(const Amalgam& am, const AmalgamStep& st) {
  const char* kind = st.kind == AmalgamStep::Kind::reduce   ? "reduce"
                     : st.kind == AmalgamStep::Kind::expand ? "expand"
                                                            : "amalgamate";
  ojson out = {{"pos", st.pos}, {"kind", kind}, {"copy", am.indices[st.copy]}};
  out["a"] = am.algebras[st.copy].name(st.a);
  if (st.kind == AmalgamStep::Kind::amalgamate) {
    out["target"] = am.indices[st.target];
  } else {
    out["b"] = am.algebras[st.copy].name(st.b);
  }
  out["rule"] = render_amalgam_step(am, st);
  return out;
}

// validate

int cmd_validate(const InstanceFile& inst, const Options&, ojson& doc) {
  ojson structures = ojson::array();
  if (inst.group) structures.push_back("group");
  if (inst.semigroup) {
    structures.push_back("semigroup");
  } else if (inst.algebra) {
    structures.push_back("partial_algebra");
  }
  if (inst.action) structures.push_back("action");
  if (inst.relations) structures.push_back("relations");
  if (inst.amalgam) structures.push_back("amalgam");

  ojson checks = ojson::array();
  bool valid = true;
  auto add = [&](const char* name, const ValidationReport& r) {
    checks.push_back({{"check", name}, {"valid", r.valid()}, {"violations", violations_json(r)}});
    valid = valid && r.valid();
  };
  ojson props = ojson::object();
  bool compatible = true;
  if (inst.action) {
    add("partial-action", validate_partial_action(*inst.action));
    props["global"] = inst.action->is_global();
  }
  if (inst.action && inst.algebra) {
    auto r = check_action_compatibility(*inst.action, *inst.algebra);
    compatible = r.valid();
    add("compatibility", r);
    props["domains_are_subalgebras"] = domains_are_subalgebras(*inst.action, *inst.algebra);
  }
  if (inst.action && inst.relations) {
    add("relation-preservation", validate_relational_action(*inst.action, *inst.relations));
  }
  if (inst.action && inst.semigroup && compatible) {
    SemigroupPartialAction spa(*inst.action, *inst.semigroup);
    props["ideal_domains"] = check_ideal_domains(spa).valid();
  }
  if (inst.amalgam) {
    add("amalgam", validate_amalgam(*inst.amalgam));
    props["neumann_conditions"] = check_neumann_conditions(*inst.amalgam).valid();
  }
  doc["valid"] = valid;
  doc["structures"] = std::move(structures);
  doc["checks"] = std::move(checks);
  doc["properties"] = std::move(props);
  return valid ? kExitPositive : kExitNegative;
}

// globalize-set

int cmd_globalize_set(const InstanceFile& inst, const Options&, ojson& doc) {
  const auto& pa = need_action(inst);
  const auto& g = pa.group();
  UniversalGlobalization ug(pa);
  const auto names = ug.names();
  auto global = ug.as_action();
  auto iota = ug.embedding();
  auto report = verify_globalization(pa, global, iota);
  ensure(report.valid(), "universal globalization failed verification: " + report.summary());

  ojson classes = ojson::array();
  for (ClassId c = 0; c < ug.size(); ++c) {
    ojson members = ojson::array();
    for (auto [x, a] : ug.cls(c).members) {
      members.push_back({g.name(x), pa.name(a)});
    }
    classes.push_back({{"name", names[c]}, {"members", std::move(members)}});
  }
  ojson action = ojson::object();
  for (Elem x = 0; x < g.size(); ++x) {
    ojson row = ojson::object();
    for (ClassId c = 0; c < ug.size(); ++c) {
      row[names[c]] = names[ug.act(x, c)];
    }
    action[g.name(x)] = std::move(row);
  }
  doc["group"] = g.names();
  doc["carrier"] = pa.carrier();
  doc["class_count"] = ug.size();
  doc["classes"] = std::move(classes);
  doc["action"] = std::move(action);
  doc["embedding"] = embedding_json(pa.carrier(), iota, names);
  doc["globalization_verified"] = true;
  return kExitPositive;
}

// check-algebra

void verify_algebra_witness(const PartialAction& pa, const FinitePartialAlgebra& alg,
                            const GlobalizabilityWitness& w) {
  std::vector<Elem> moved;
  for (Elem a : w.args) {
    if (!pa.defined(w.x, a)) {
      throw ReplayFailure("witness argument outside the domain of x^-1");
    }
    moved.push_back(pa.act(w.x, a));
  }
  const Elem fa = alg.apply(w.op, w.args);
  if (fa == kUndefined) {
    throw ReplayFailure("witness f(a) is undefined");
  }
  const Elem lhs = alg.apply(w.op, moved);
  const Elem rhs = pa.act(w.x, fa);
  if (lhs != w.lhs || rhs != w.rhs || lhs == rhs) {
    throw ReplayFailure("witness values do not replay");
  }
}

int cmd_check_algebra(const InstanceFile& inst, const Options& opt, ojson& doc) {
  const auto& pa = need_action(inst);
  if (!inst.algebra) {
    throw InputError("", "this command needs an \"algebra\" or a \"semigroup\"");
  }
  const auto& alg = *inst.algebra;
  const auto& g = pa.group();
  auto compat = check_action_compatibility(pa, alg);
  if (!compat.valid()) {
    std::vector<InputIssue> issues;
    for (const auto& v : compat.violations()) {
      issues.push_back({"/theta", v.rule + ": " + v.message});
    }
    throw InputError(std::move(issues));
  }
  auto verdict = check_globalizability(pa, alg);
  doc["globalizable"] = verdict.globalizable;
  doc["domains_are_subalgebras"] = domains_are_subalgebras(pa, alg);
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    ojson args = ojson::array();
    for (Elem a : w.args) {
      args.push_back(alg.name(a));
    }
    doc["witness"] = {{"op", w.op},
                      {"x", g.name(w.x)},
                      {"args", std::move(args)},
                      {"lhs", elem_json(alg.names(), w.lhs)},
                      {"rhs", elem_json(alg.names(), w.rhs)}};
    if (opt.verify) {
      verify_algebra_witness(pa, alg, w);
      doc["verification"] = {{"replayed", true}};
    }
  } else {
    doc["witness"] = nullptr;
    auto ga = build_globalized_algebra(pa, alg);
    doc["globalization"] = {{"elements", ga.algebra.names()},
                            {"signature", ga.algebra.signature()},
                            {"ops", ops_json(ga.algebra)},
                            {"embedding", embedding_json(pa.carrier(), ga.ug.embedding(),
                                                         ga.algebra.names())}};
  }
  if (!opt.term.empty()) {
    auto w = parse_term(opt.term, alg);
    ojson images = ojson::object();
    for (Elem x = 0; x < g.size(); ++x) {
      auto img = extend_action_to_term(pa, x, w);
      images[g.name(x)] = img ? ojson(render_term(*img, alg.names())) : ojson(nullptr);
    }
    doc["term"] = {{"term", render_term(w, alg.names())},
                   {"length", w.length()},
                   {"value", elem_json(alg.names(), term_value(alg, w))},
                   {"normal_form", render_term(evaluation_normal_form(alg, w), alg.names())},
                   {"images", std::move(images)}};
  }
  return verdict.globalizable ? kExitPositive : kExitNegative;
}

// check-semigroup

ojson verify_criterion_witness(const SemigroupPartialAction& spa, const CriterionWitness& w) {
  const auto& pa = spa.action();
  const auto& S = spa.semigroup();
  const auto& g = spa.group();
  const auto& ug = spa.ug();
  const Elem one = g.identity();
  const Elem xi = g.inv(w.x);

  // Direct recomputation from the tables.
  const Elem su = S.mul(w.s, w.u);
  const Elem a = pa.act(xi, su);
  const Elem b = pa.act(xi, w.u);
  if (a == kUndefined || b == kUndefined) {
    throw ReplayFailure("witness leaves the domain of x");
  }
  const Elem lhs = pa.act(w.x, S.mul(a, w.t));
  const Elem inner = pa.act(w.x, S.mul(b, w.t));
  if (lhs == kUndefined || inner == kUndefined) {
    throw ReplayFailure("witness products leave D_x^-1");
  }
  const Elem rhs = S.mul(w.s, inner);
  if (lhs != w.lhs || rhs != w.rhs || lhs == rhs) {
    throw ReplayFailure("criterion witness values do not replay");
  }

  // [1,s][x,x^-1 u][x,t] reduces to both [1,lhs] and [1,rhs].
  const UWord word{ug.class_of(one, w.s), ug.class_of(w.x, b), ug.class_of(w.x, w.t)};
  using Dir = RewriteStep::Dir;
  const std::vector<RewriteStep> left{{0, Dir::reduce, one, w.s, w.u},
                                      {0, Dir::reduce, w.x, a, w.t}};
  const std::vector<RewriteStep> right{{1, Dir::reduce, w.x, b, w.t},
                                       {0, Dir::reduce, one, w.s, inner}};
  auto lw = replay_steps(spa, word, left);
  auto rw = replay_steps(spa, word, right);
  if (lw.back() != UWord{ug.embed(lhs)} || rw.back() != UWord{ug.embed(rhs)}) {
    throw ReplayFailure("criterion witness derivations do not replay");
  }
  auto derivation = [&](const std::vector<RewriteStep>& steps, const std::vector<UWord>& words) {
    return trace_json(spa, RewriteTrace{word, steps, words});
  };
  return {{"replayed", true},
          {"word", render_word(spa, word)},
          {"to_lhs", derivation(left, lw)},
          {"to_rhs", derivation(right, rw)}};
}

int cmd_check_semigroup(const InstanceFile& inst, const Options& opt, ojson& doc) {
  auto spa = need_spa(inst);
  need_ideals(spa);
  const auto& S = spa.semigroup();
  const auto& g = spa.group();

  auto crit = check_criterion(spa, opt.jobs);
  auto conf = check_weak_confluence(spa, opt.jobs);
  auto suff = check_sufficient_conditions(spa);

  doc["globalizable"] = crit.holds;
  ojson criterion = {{"holds", crit.holds},
                     {"violations", criterion_violations(spa).size()}};
  if (crit.witness) {
    const auto& w = *crit.witness;
    criterion["witness"] = {{"x", g.name(w.x)}, {"u", S.name(w.u)},   {"s", S.name(w.s)},
                            {"t", S.name(w.t)}, {"lhs", S.name(w.lhs)}, {"rhs", S.name(w.rhs)}};
  } else {
    criterion["witness"] = nullptr;
  }
  doc["criterion"] = std::move(criterion);

  ojson confluence = {{"confluent", conf.confluent}, {"configurations", conf.configurations}};
  if (conf.witness) {
    const auto& c = *conf.witness;
    confluence["witness"] = {{"word", render_word(spa, c.word)},
                             {"left", render_word(spa, c.left)},
                             {"right", render_word(spa, c.right)},
                             {"left_normal", render_word(spa, c.left_normal)},
                             {"right_normal", render_word(spa, c.right_normal)}};
  } else {
    confluence["witness"] = nullptr;
  }
  doc["weak_confluence"] = std::move(confluence);

  ojson domains = ojson::array();
  for (const auto& d : suff.per_element) {
    domains.push_back({{"x", g.name(d.x)},
                       {"idempotent", d.idempotent},
                       {"weakly_reductive", d.weakly_reductive},
                       {"unital", d.unital},
                       {"unit", d.unit ? ojson(S.name(*d.unit)) : ojson(nullptr)}});
  }
  doc["sufficient_conditions"] = {{"inverse_ambient", suff.inverse_ambient},
                                  {"all_idempotent", suff.all_idempotent},
                                  {"all_weakly_reductive", suff.all_weakly_reductive},
                                  {"all_unital", suff.all_unital},
                                  {"domains", std::move(domains)}};
  if (opt.verify && crit.witness) {
    doc["verification"] = verify_criterion_witness(spa, *crit.witness);
  }
  return crit.holds ? kExitPositive : kExitNegative;
}

// normalize

int cmd_normalize(const InstanceFile& inst, const Options& opt, ojson& doc) {
  auto spa = need_spa(inst);
  if (opt.word.empty()) {
    throw InputError("", "normalize needs --word");
  }
  UWord w;
  try {
    w = parse_word(spa, opt.word);
  } catch (const std::invalid_argument& e) {
    throw InputError("", std::string("bad --word: ") + e.what());
  }
  auto trace = normalize_word(spa, w);
  ojson forms = ojson::array();
  for (const auto& f : all_normal_forms(spa, w)) {
    forms.push_back(render_word(spa, f));
  }
  doc["word"] = render_word(spa, w);
  doc["normal_form"] = render_word(spa, trace.end());
  doc["input_irreducible"] = trace.steps.empty();
  doc["derivation"] = trace_json(spa, trace);
  doc["all_normal_forms"] = std::move(forms);
  if (opt.verify) {
    if (!replay_trace(spa, trace) || !is_irreducible(spa, trace.end())) {
      throw ReplayFailure("normalization trace does not replay");
    }
    doc["verification"] = {{"replayed", true}};
  }
  return kExitPositive;
}

// find-witness

int cmd_find_witness(const InstanceFile& inst, const Options& opt, ojson& doc) {
  auto spa = need_spa(inst);
  need_ideals(spa);
  if (opt.max_len < 1) {
    throw InputError("", "--max-len must be at least 1");
  }
  const auto& ug = spa.ug();
  auto report = find_collapse_witness(spa, opt.max_len);

  ojson groups = ojson::array();
  for (const auto& grp : report.groups) {
    ojson names = ojson::array();
    for (ClassId c : grp) {
      names.push_back(ug.name(c));
    }
    groups.push_back(std::move(names));
  }
  ojson chains = ojson::array();
  for (const auto& ch : report.chains) {
    ojson entry = {{"from", ug.name(ch.from)},
                   {"to", ug.name(ch.to)},
                   {"length", ch.trace.steps.size()}};
    entry.update(trace_json(spa, ch.trace));
    chains.push_back(std::move(entry));
  }
  doc["max_len"] = opt.max_len;
  doc["found"] = report.found();
  doc["groups"] = std::move(groups);
  doc["chains"] = std::move(chains);
  if (!report.found()) {
    doc["note"] = "no collapse within the bound; this is inconclusive";
  }
  if (opt.verify && report.found()) {
    for (const auto& ch : report.chains) {
      if (ch.trace.start != UWord{ch.from} || ch.trace.end() != UWord{ch.to} ||
          !replay_trace(spa, ch.trace) || ch.from == ch.to) {
        throw ReplayFailure("collapse chain does not replay");
      }
    }
    doc["verification"] = {{"replayed", true}, {"chains", report.chains.size()}};
  }
  return report.found() ? kExitNegative : kExitPositive;
}

// unital-globalize

int cmd_unital_globalize(const InstanceFile& inst, const Options&, ojson& doc) {
  auto spa = need_spa(inst);
  need_ideals(spa);
  const auto& g = spa.group();
  const auto& S = spa.semigroup();
  try {
    auto u = build_unital_globalization(spa);
    const auto& names = u.product.names();
    ojson table = ojson::array();
    for (Elem a = 0; a < u.product.size(); ++a) {
      ojson row = ojson::array();
      for (Elem b = 0; b < u.product.size(); ++b) {
        row.push_back(names[u.product.mul(a, b)]);
      }
      table.push_back(std::move(row));
    }
    ojson units = ojson::object();
    for (Elem x = 0; x < g.size(); ++x) {
      units[g.name(x)] = S.name(u.units[x]);
    }
    doc["unital"] = true;
    doc["elements"] = names;
    doc["table"] = std::move(table);
    doc["units"] = std::move(units);
    doc["embedding"] = embedding_json(S.names(), u.embedding, names);
    doc["action"] = action_json(u.action);
    return kExitPositive;
  } catch (const NotUnitalError& e) {
    doc["unital"] = false;
    doc["x"] = g.name(e.x());
    doc["reason"] = e.what();
    return kExitNegative;
  }
}

// amalgam

int cmd_amalgam(const InstanceFile& inst, const Options& opt, ojson& doc) {
  Amalgam am;
  if (inst.amalgam) {
    am = *inst.amalgam;
  } else if (inst.semigroup && inst.action) {
    am = amalgam_from_partial_action(need_spa(inst));
  } else if (inst.algebra && inst.action) {
    try {
      am = amalgam_from_partial_action(*inst.action, *inst.algebra);
    } catch (const PreconditionError& e) {
      throw InputError("/theta", e.what());
    }
  } else {
    throw InputError("", "this command needs an \"amalgam\" or a partial action on a structure");
  }
  const std::size_t n = am.index_count();
  ojson intersections = ojson::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      ojson elems = ojson::array();
      for (Elem a : am.intersection(i, j)) {
        elems.push_back(am.algebras[i].name(a));
      }
      intersections.push_back(
          {{"i", am.indices[i]}, {"j", am.indices[j]}, {"elements", std::move(elems)}});
    }
  }
  auto neumann = check_neumann_conditions(am);
  doc["kind"] = am.kind == Amalgam::Kind::semigroup ? "semigroup" : "partial_algebra";
  doc["indices"] = am.indices;
  doc["intersections"] = std::move(intersections);
  doc["neumann_conditions"] = neumann.valid() ? "pass" : "fail";
  doc["neumann_scope"] = am.kind == Amalgam::Kind::semigroup
                             ? "extended from group amalgams to semigroup amalgams"
                             : "checked on the partial algebra amalgam";
  if (!neumann.valid()) {
    doc["neumann_violations"] = violations_json(neumann);
  }
  if (am.kind != Amalgam::Kind::semigroup) {
    doc["max_len"] = nullptr;
    doc["violation"] = nullptr;
    doc["note"] = "bounded closure is only available for semigroup amalgams";
    return kExitPositive;
  }
  if (opt.max_len < 1) {
    throw InputError("", "--max-len must be at least 1");
  }
  auto report = bounded_embeddability_check(am, opt.max_len, 1);
  doc["max_len"] = opt.max_len;
  ojson pairs = ojson::array();
  for (const auto& v : report.violations) {
    pairs.push_back({render_letter(am, v.left), render_letter(am, v.right)});
  }
  if (report.violation_found()) {
    const auto& v = report.violations.front();
    ojson words = ojson::array();
    for (const auto& w : v.chain.words) {
      words.push_back(render_amalgam_word(am, w));
    }
    ojson steps = ojson::array();
    for (const auto& st : v.chain.steps) {
      steps.push_back(amalgam_step_json(am, st));
    }
    doc["violation"] = {{"left", render_letter(am, v.left)},
                        {"right", render_letter(am, v.right)},
                        {"words", std::move(words)},
                        {"steps", std::move(steps)}};
  } else {
    doc["violation"] = nullptr;
    doc["note"] = "no violation within the bound; this is inconclusive";
  }
  doc["violations"] = std::move(pairs);
  if (opt.verify && report.violation_found()) {
    const auto& v = report.violations.front();
    AmalgamLetters letters(am);
    auto [i, a] = letters.decode(v.left);
    auto [j, b] = letters.decode(v.right);
    const Word l{v.left};
    const Word r{v.right};
    const bool ends = (v.chain.start == l && v.chain.end() == r) ||
                      (v.chain.start == r && v.chain.end() == l);
    if (!ends || !replay_amalgam_derivation(am, v.chain) || am.map(i, j)[a] == b) {
      throw ReplayFailure("amalgam violation does not replay");
    }
    doc["verification"] = {{"replayed", true}};
  }
  return report.violation_found() ? kExitNegative : kExitPositive;
}

ojson issues_json(const std::vector<InputIssue>& issues) {
  ojson out = ojson::array();
  for (const auto& i : issues) {
    out.push_back({{"pointer", i.pointer}, {"message", i.message}});
  }
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Globalization of partial actions on finite structures"};
  app.name("pglob");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "Seed for randomized internals")->default_val(0);
  app.add_option("--jobs", opt.jobs, "Worker threads for the criterion checks")
      ->default_val(1)
      ->check(CLI::Range(1u, 256u));
  app.add_flag("--verify-witness", opt.verify, "Replay every reported witness");

  using Handler = int (*)(const InstanceFile&, const Options&, ojson&);
  struct Command {
    const char* name;
    const char* help;
    Handler handler;
  };
  const Command commands[] = {
      {"validate", "Validate every structure in the file", cmd_validate},
      {"globalize-set", "Universal globalization of a partial action on a set",
       cmd_globalize_set},
      {"check-algebra", "Decide globalizability on a partial algebra", cmd_check_algebra},
      {"check-semigroup", "Decide globalizability on a semigroup with ideal domains",
       cmd_check_semigroup},
      {"normalize", "Normal form of a word over the globalization letters", cmd_normalize},
      {"find-witness", "Bounded search for collapsed letters", cmd_find_witness},
      {"unital-globalize", "Globalization for unital domains", cmd_unital_globalize},
      {"amalgam", "Amalgam of the partial action and bounded embeddability check",
       cmd_amalgam},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", opt.file, "Instance file, or - for stdin")->required();
    std::string name = c.name;
    if (name == "find-witness" || name == "amalgam") {
      sub->add_option("--max-len", opt.max_len, "Word length bound")->default_val(4);
    }
    if (name == "normalize") {
      sub->add_option("--word", opt.word, "Word such as [1,v][1,t]")->required();
    }
    if (name == "check-algebra") {
      sub->add_option("--term", opt.term, "Term in prefix syntax, e.g. f0(u,t)");
    }
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPositive;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    out << ojson{{"error", "usage"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitInput;
  }

  std::size_t which = 0;
  while (which < subs.size() && !subs[which]->parsed()) {
    ++which;
  }
  const Command& cmd = commands[which];

  ojson doc;
  doc["command"] = cmd.name;
  try {
    InstanceFile inst = load_instance(opt.file);
    for (const auto& w : inst.warnings) {
      err << "warning: unknown key " << w << "\n";
    }
    int code = cmd.handler(inst, opt, doc);
    out << doc.dump(2) << "\n";
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    doc["error"] = "invalid input";
    doc["issues"] = issues_json(e.issues());
    out << doc.dump(2) << "\n";
    return kExitInput;
  } catch (const ReplayFailure& e) {
    err << "error: " << e.what() << "\n";
    doc["error"] = "witness replay failed";
    doc["message"] = e.what();
    out << doc.dump(2) << "\n";
    return kExitInternal;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    doc["error"] = "internal check failed";
    doc["message"] = e.what();
    out << doc.dump(2) << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    // Structural, axiom and precondition failures all stem from the input.
    err << "error: " << e.what() << "\n";
    doc["error"] = "invalid input";
    doc["issues"] = issues_json({{"", e.what()}});
    out << doc.dump(2) << "\n";
    return kExitInput;
  }
}

}  // namespace pglob

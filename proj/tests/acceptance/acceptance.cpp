// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pglob/cli.hpp"
#include "pglob/term.hpp"
#include "support/generators.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace pglob;
using namespace pglob::testing;
using nlohmann::json;

namespace {

// Pinned thresholds.
constexpr double kExampleSeconds = 1.0;
constexpr double kSetGlobalizationSeconds = 30.0;
constexpr std::size_t kSetActions = 1000;
constexpr std::size_t kSemigroupInstances = 200;
constexpr std::size_t kNormalFormLength = 5;
constexpr std::size_t kAlgebraActions = 500;
constexpr std::size_t kCongruenceInstances = 300;
constexpr std::size_t kAmalgamBound = 4;
constexpr int kDeterminismRuns = 3;

const std::string kData = PGLOB_TEST_DATA;
const std::string kGolden = PGLOB_TEST_GOLDEN;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
  int code = 0;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str()};
}

// Corpora shared by several criteria.

std::vector<SemigroupInstance> semigroup_corpus() {
  Rng rng(20240501);
  const auto groups = small_groups(4);
  std::vector<SemigroupInstance> out{example_instance()};
  std::size_t positive = 0, negative = 0;
  while (out.size() < kSemigroupInstances + 40 || positive < 40 || negative < 40) {
    const auto& g = pick_group(rng, groups);
    auto inst = random_ideal_action(rng, g, 5);
    if (!inst) continue;
    if (naive_criterion(inst->action, inst->semigroup)) {
      if (positive >= kSemigroupInstances) continue;
      ++positive;
    } else {
      if (negative >= kSemigroupInstances) continue;
      ++negative;
    }
    out.push_back(std::move(*inst));
  }
  return out;
}

std::vector<SemigroupInstance> unital_corpus() {
  Rng rng(777);
  const auto groups = small_groups(4);
  std::vector<SemigroupInstance> out{unital_example_instance()};
  for (std::size_t attempts = 0; out.size() < 120 && attempts < 20000; ++attempts) {
    auto inst = random_unital_action(rng, pick_group(rng, groups), 6);
    if (inst) out.push_back(std::move(*inst));
  }
  return out;
}

// 1. The worked example.

Outcome criterion_example() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string file = kData + "/example.json";

  auto check = cli({"check-semigroup", "--verify-witness", file});
  auto doc = json::parse(check.out);
  const auto& w = doc["criterion"]["witness"];
  const bool reported = check.code == kExitNegative && w["x"] == "x" && w["lhs"] == "0" &&
                        w["rhs"] == "u" && doc["verification"]["replayed"] == true;

  auto inst = example_instance();
  SemigroupPartialAction spa(inst.action, inst.semigroup);
  const Elem u = 1, t = 3, x = 1;
  const bool u_in_dx = inst.action.in_domain(x, *inst.semigroup.index_of(w["u"].get<std::string>()));
  const CriterionWitness expected{x, u, t, t, 0, u};
  auto all = criterion_violations(spa);
  const bool enumerated = std::find(all.begin(), all.end(), expected) != all.end();

  auto find = cli({"find-witness", "--max-len", "3", "--verify-witness", file});
  auto fdoc = json::parse(find.out);
  const std::vector<std::string> chain{"[1,v]", "[1,u][x,t]", "[1,t][1,v][x,t]", "[1,t][1,0]",
                                       "[1,0]"};
  bool chain_found = false;
  for (const auto& c : fdoc["chains"]) {
    if (c["from"] != "[1,v]" || c["to"] != "[1,0]") continue;
    auto words = c["words"].get<std::vector<std::string>>();
    auto a = words, b = chain;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    chain_found = words.front() == chain.front() && words.back() == chain.back() && a == b;
  }
  const bool replayed = find.code == kExitNegative && fdoc["verification"]["replayed"] == true;
  const double secs = seconds_since(t0);

  o.pass = reported && u_in_dx && enumerated && chain_found && replayed && secs < kExampleSeconds;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "witness=%d u-in-Dx=%d s=t=t-witness-enumerated=%d chain=%d replayed=%d %.3fs",
                reported, u_in_dx, enumerated, chain_found, replayed, secs);
  o.detail = buf;
  return o;
}

// 2. Universal globalization of set actions.

Outcome criterion_set_globalization() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1);
  const auto groups = small_groups(6);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kSetActions; ++i) {
    const auto& g = pick_group(rng, groups);
    auto pa = random_partial_action(g, rng, 6);
    UniversalGlobalization ug(pa);
    auto global = ug.as_action();
    bool ok = naive_partial_action(global) && global.is_global();

    const std::size_t n = pa.carrier_size();
    auto labels = naive_orbit_labels(pa);
    ok = ok && labels.has_value();
    for (std::size_t p = 0; ok && p < g.size() * n; ++p) {
      for (std::size_t q = 0; q < g.size() * n; ++q) {
        const bool same = ug.class_of(static_cast<Elem>(p / n), static_cast<Elem>(p % n)) ==
                          ug.class_of(static_cast<Elem>(q / n), static_cast<Elem>(q % n));
        if (same != ((*labels)[p] == (*labels)[q])) ok = false;
      }
    }
    std::set<ClassId> image;
    for (Elem a = 0; a < n; ++a) image.insert(ug.embed(a));
    ok = ok && image.size() == n;
    for (Elem x = 0; ok && x < g.size(); ++x) {
      for (Elem a = 0; a < n; ++a) {
        const ClassId moved = ug.act(x, ug.embed(a));
        const bool inside = image.count(moved) > 0;
        if (pa.defined(x, a) != inside) ok = false;
        if (pa.defined(x, a) && moved != ug.embed(pa.act(x, a))) ok = false;
      }
    }
    if (!ok) ++failures;
  }
  const double secs = seconds_since(t0);
  o.pass = failures == 0 && secs < kSetGlobalizationSeconds;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu actions, %zu failures, %.2fs", kSetActions, failures, secs);
  o.detail = buf;
  return o;
}

// 3. Criterion, weak confluence and unique normal forms agree.

Outcome criterion_three_way(const std::vector<SemigroupInstance>& corpus) {
  Outcome o;
  std::size_t disagreements = 0, positive = 0, negative = 0, instances = 0;
  for (const auto& inst : corpus) {
    if (inst.action.group().size() > 4 || inst.semigroup.size() > 5) continue;
    ++instances;
    SemigroupPartialAction spa(inst.action, inst.semigroup);
    const bool crit = check_criterion(spa).holds;
    bool conf = false;
    try {
      conf = check_weak_confluence(spa).confluent;
    } catch (const InvariantViolation&) {
      conf = !crit;
    }
    const bool unf = check_unique_normal_forms(spa, kNormalFormLength).unique;
    const bool naive = naive_criterion(inst.action, inst.semigroup);
    if (crit != conf || crit != unf || crit != naive) ++disagreements;
    (crit ? positive : negative)++;
  }
  o.pass = disagreements == 0 && instances >= kSemigroupInstances && positive > 0 && negative > 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu instances (%zu globalizable, %zu not), %zu disagreements, words <= %zu",
                instances, positive, negative, disagreements, kNormalFormLength);
  o.detail = buf;
  return o;
}

// 4. Sufficient conditions imply the criterion.

Outcome criterion_sufficient(const std::vector<SemigroupInstance>& a,
                             const std::vector<SemigroupInstance>& b) {
  Outcome o;
  std::size_t idem = 0, reductive = 0, unital = 0, counterexamples = 0;
  for (const auto* corpus : {&a, &b}) {
    for (const auto& inst : *corpus) {
      SemigroupPartialAction spa(inst.action, inst.semigroup);
      auto sc = check_sufficient_conditions(spa);
      if (!(sc.all_idempotent || sc.all_weakly_reductive || sc.all_unital)) continue;
      idem += sc.all_idempotent;
      reductive += sc.all_weakly_reductive;
      unital += sc.all_unital;
      if (!naive_criterion(inst.action, inst.semigroup)) ++counterexamples;
    }
  }
  o.pass = counterexamples == 0 && idem > 0 && reductive > 0 && unital > 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "idempotent %zu, weakly reductive %zu, unital %zu instances; %zu counterexamples",
                idem, reductive, unital, counterexamples);
  o.detail = buf;
  return o;
}

// 5. The unital globalization.

bool check_unital(const SemigroupInstance& inst) {
  SemigroupPartialAction spa(inst.action, inst.semigroup);
  auto u = build_unital_globalization(spa);
  const auto& p = u.product;
  const auto& s = inst.semigroup;
  const auto& g = inst.action.group();
  if (!naive_associative(p)) return false;
  std::set<Elem> image(u.embedding.begin(), u.embedding.end());
  if (image.size() != s.size()) return false;
  for (Elem a = 0; a < s.size(); ++a) {
    for (Elem b = 0; b < s.size(); ++b) {
      if (p.mul(u.embedding[a], u.embedding[b]) != u.embedding[s.mul(a, b)]) return false;
    }
  }
  for (Elem q = 0; q < p.size(); ++q) {
    for (Elem e : image) {
      if (!image.count(p.mul(q, e)) || !image.count(p.mul(e, q))) return false;
    }
  }
  for (Elem x = 0; x < g.size(); ++x) {
    for (Elem q = 0; q < p.size(); ++q) {
      if (!u.action.defined(x, q)) return false;
      for (Elem r = 0; r < p.size(); ++r) {
        if (u.action.act(x, p.mul(q, r)) != p.mul(u.action.act(x, q), u.action.act(x, r))) {
          return false;
        }
      }
    }
    for (Elem a = 0; a < s.size(); ++a) {
      const Elem moved = u.action.act(x, u.embedding[a]);
      if (inst.action.defined(x, a) != (image.count(moved) > 0)) return false;
      if (inst.action.defined(x, a) && moved != u.embedding[inst.action.act(x, a)]) return false;
    }
  }
  return !s.is_inverse() || p.is_inverse();
}

Outcome criterion_unital(const std::vector<SemigroupInstance>& unital_corpus,
                         const std::vector<SemigroupInstance>& semigroup_corpus) {
  Outcome o;
  std::size_t checked = 0, failures = 0, inverse = 0;
  for (const auto* corpus : {&unital_corpus, &semigroup_corpus}) {
    for (const auto& inst : *corpus) {
      SemigroupPartialAction spa(inst.action, inst.semigroup);
      if (!check_sufficient_conditions(spa).all_unital) continue;
      ++checked;
      inverse += inst.semigroup.is_inverse();
      try {
        if (!check_unital(inst)) ++failures;
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  // The {0,1} instance: three classes with the derived products.
  auto ex = unital_example_instance();
  auto u = build_unital_globalization(SemigroupPartialAction(ex.action, ex.semigroup));
  const auto& p = u.product;
  auto id = [&](const char* name) { return *p.index_of(name); };
  const bool example = p.size() == 3 && p.mul(id("[1,1]"), id("[x,1]")) == id("[1,0]") &&
                       p.mul(id("[x,1]"), id("[x,1]")) == id("[x,1]");
  o.pass = failures == 0 && example && checked > 1;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu unital instances (%zu inverse), %zu failures, example=%d",
                checked, inverse, failures, example);
  o.detail = buf;
  return o;
}

// 6. Partial algebras: criterion versus functionality of the lifted graphs.

Outcome criterion_partial_algebras() {
  Outcome o;
  Rng rng(6);
  const auto groups = small_groups(4);
  std::size_t disagreements = 0, positive = 0, negative = 0, totals = 0, total_mismatch = 0;
  for (std::size_t i = 0; i < kAlgebraActions; ++i) {
    const auto& g = pick_group(rng, groups);
    std::optional<PartialAction> pa;
    std::optional<FinitePartialAlgebra> alg;
    if (i % 4 == 3) {
      for (int tries = 0; tries < 50 && !pa; ++tries) {
        if (auto r = random_total_restriction(rng, g, 5, 2, 2)) {
          pa = r->first;
          alg = r->second;
        }
      }
    }
    if (!pa) {
      pa = random_partial_action(g, rng, 5);
      std::vector<unsigned> arities(uniform(rng, 1, 2));
      for (auto& a : arities) a = static_cast<unsigned>(uniform(rng, 0, 2));
      const double p = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
      alg = make_compatible(rng, *pa, random_algebra(rng, pa->carrier(), arities, p));
    }
    auto verdict = check_globalizability(*pa, *alg);
    auto lifted = lift_relational_system(*pa, relational_form(*alg));
    bool functional = true;
    for (std::size_t r = 0; r < lifted.system.relations.size(); ++r) {
      functional = functional && is_functional(lifted.system, r).functional;
    }
    if (verdict.globalizable != functional ||
        verdict.globalizable != naive_globalizable(*pa, *alg)) {
      ++disagreements;
    }
    (verdict.globalizable ? positive : negative)++;
    if (alg->is_total()) {
      ++totals;
      if (verdict.globalizable != naive_domains_closed(*pa, *alg)) ++total_mismatch;
    }
  }
  o.pass = disagreements == 0 && total_mismatch == 0 && positive > 0 && negative > 0 && totals > 0;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "%zu actions (%zu globalizable, %zu not), %zu disagreements; %zu total algebras, "
                "%zu closure mismatches",
                kAlgebraActions, positive, negative, disagreements, totals, total_mismatch);
  o.detail = buf;
  return o;
}

// 7. Congruence calculus.

std::vector<ElementPair> mapped_pairs(const std::vector<ElementPair>& pairs,
                                      const std::vector<Elem>& map) {
  std::vector<ElementPair> out;
  for (auto [a, b] : pairs) out.emplace_back(map[a], map[b]);
  return out;
}

Outcome criterion_congruences() {
  Outcome o;
  Rng rng(7);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kCongruenceInstances; ++i) {
    const std::size_t n = uniform(rng, 1, 5);
    const double p = std::uniform_real_distribution<double>(0.4, 1.0)(rng);
    auto alg = random_algebra(rng, n, 2, 2, p);
    auto hom = random_homomorphism(rng, alg, 1);
    while (hom.target.size() > 5) hom = random_homomorphism(rng, alg, 0);
    bool ok = naive_homomorphism(alg, hom.target, hom.map);

    // Preimage congruence.
    auto target_c = congruence_closure(hom.target, random_pairs(rng, hom.target.size(), 2));
    auto pre = preimage_congruence(alg, hom.target, hom.map, target_c);
    std::vector<std::size_t> pre_labels(n);
    for (Elem a = 0; a < n; ++a) pre_labels[a] = pre.rep(a);
    ok = ok && has_substitution_property(alg, pre_labels);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        ok = ok && pre.related(a, b) == target_c.related(hom.map[a], hom.map[b]);
      }
    }

    // phi(rho)* = phi(rho*)*, with closures checked against brute force.
    auto rho = random_pairs(rng, n, 3);
    auto rho_star = congruence_closure(alg, rho);
    auto oracle = least_congruence(alg, rho);
    for (Elem a = 0; a < n; ++a) ok = ok && rho_star.rep(a) == oracle[a];
    auto lhs = congruence_closure(hom.target, mapped_pairs(rho, hom.map));
    auto rhs = congruence_closure(hom.target, image_pairs(congruence_pairs(rho_star), hom.map));
    ok = ok && lhs == rhs;

    // (A/P)/P(sigma)* and (A/S)/S(rho)* are isomorphic.
    auto sigma = random_pairs(rng, n, 3);
    auto sigma_star = congruence_closure(alg, sigma);
    auto qp = quotient(alg, rho_star);
    auto qs = quotient(alg, sigma_star);
    std::vector<Elem> nat_p(n), nat_s(n);
    for (Elem a = 0; a < n; ++a) {
      nat_p[a] = static_cast<Elem>(rho_star.block_index(a));
      nat_s[a] = static_cast<Elem>(sigma_star.block_index(a));
    }
    auto left = quotient(qp, congruence_closure(qp, mapped_pairs(sigma, nat_p)));
    auto right = quotient(qs, congruence_closure(qs, mapped_pairs(rho, nat_s)));
    auto iso = find_isomorphism(left, right);
    ok = ok && iso.has_value();
    if (iso) {
      std::vector<Elem> inv(iso->size());
      for (Elem a = 0; a < iso->size(); ++a) inv[(*iso)[a]] = a;
      ok = ok && naive_homomorphism(left, right, *iso) && naive_homomorphism(right, left, inv);
    }
    auto joined = rho;
    joined.insert(joined.end(), sigma.begin(), sigma.end());
    ok = ok && left.size() == congruence_closure(alg, joined).block_count();
    if (!ok) ++failures;
  }
  o.pass = failures == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu failures", kCongruenceInstances, failures);
  o.detail = buf;
  return o;
}

// 8. Amalgam embeddability agrees with the criterion.

Outcome criterion_amalgams(const std::vector<SemigroupInstance>& a,
                           const std::vector<SemigroupInstance>& b) {
  Outcome o;
  std::size_t checked = 0, inconsistencies = 0, certified = 0;
  for (const auto* corpus : {&a, &b}) {
    for (const auto& inst : *corpus) {
      SemigroupPartialAction spa(inst.action, inst.semigroup);
      const bool crit = naive_criterion(inst.action, inst.semigroup);
      auto am = amalgam_from_partial_action(spa);
      auto report = bounded_embeddability_check(am, kAmalgamBound, 1);
      ++checked;
      if (crit == report.violation_found()) {
        ++inconsistencies;
        continue;
      }
      if (!crit) {
        const auto& v = report.violations.front();
        AmalgamLetters letters(am);
        auto [i, x] = letters.decode(v.left);
        auto [j, y] = letters.decode(v.right);
        const bool ends = v.chain.words.front() == Word{v.left} &&
                          v.chain.end() == Word{v.right};
        if (ends && replay_amalgam_derivation(am, v.chain) && am.map(i, j)[x] != y) {
          ++certified;
        } else {
          ++inconsistencies;
        }
      }
    }
  }
  o.pass = inconsistencies == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu certified violations, %zu inconsistencies",
                checked, certified, inconsistencies);
  o.detail = buf;
  return o;
}

// 9. Determinism of the command line against the golden corpus.

Outcome criterion_determinism() {
  Outcome o;
  const auto cases = read_golden_manifest(kGolden, kData);
  std::size_t runs = 0, mismatches = 0, golden_mismatches = 0;
  for (const auto& c : cases) {
    const std::string expected = read_file(kGolden + "/" + c.name + ".json");
    for (int r = 0; r < kDeterminismRuns; ++r) {
      auto run = cli(c.args);
      ++runs;
      if (run.out != expected || run.code != c.exit_code) ++golden_mismatches;
    }
    for (const char* jobs : {"1", "2"}) {
      auto args = c.args;
      args.insert(args.begin(), {"--jobs", jobs});
      auto run = cli(args);
      ++runs;
      if (run.out != expected || run.code != c.exit_code) ++mismatches;
    }
  }
  o.pass = !cases.empty() && mismatches == 0 && golden_mismatches == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu golden commands, %zu runs, %zu golden mismatches, %zu --jobs mismatches",
                cases.size(), runs, golden_mismatches, mismatches);
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const auto semigroups = semigroup_corpus();
  const auto unitals = unital_corpus();

  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion_example},
      {2, criterion_set_globalization},
      {3, [&] { return criterion_three_way(semigroups); }},
      {4, [&] { return criterion_sufficient(semigroups, unitals); }},
      {5, [&] { return criterion_unital(unitals, semigroups); }},
      {6, criterion_partial_algebras},
      {7, criterion_congruences},
      {8, [&] { return criterion_amalgams(semigroups, unitals); }},
      {9, criterion_determinism},
  };
  bool all = true;
  for (auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s [%.2fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

#include "catch_amalgamated.hpp"

#include <set>

#include "pglob/set_globalization.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pglob;
using namespace pglob::testing;

namespace {

PartialAction z4_restriction() {
  auto g = cyclic_group(4);
  std::vector<Elem> table(8, kUndefined);
  table[0] = 0;
  table[1] = 1;
  table[1 * 2 + 0] = 1;  // 1 + 1 = 2
  table[3 * 2 + 1] = 0;  // 3 + 2 = 1
  return PartialAction(g, {"1", "2"}, table);
}

}  // namespace

TEST_CASE("the Z4 restriction globalizes to Z4", "[globalization]") {
  auto pa = z4_restriction();
  UniversalGlobalization ug(pa);
  REQUIRE(ug.size() == 4);
  CHECK(ug.name(ug.embed(0)) == "[0,1]");
  CHECK(ug.name(ug.embed(1)) == "[0,2]");
  CHECK(ug.class_of(1, 0) == ug.embed(1));
  CHECK(ug.parse_name("[3,2]") == ug.embed(0));
  CHECK_FALSE(ug.parse_name("[3,x]").has_value());
  auto global = ug.as_action();
  CHECK(global.is_global());
  CHECK(verify_globalization(pa, global, ug.embedding()).valid());
}

TEST_CASE("verify_globalization reports each failing direction", "[globalization]") {
  auto pa = z4_restriction();
  auto global = UniversalGlobalization(pa).as_action();
  SECTION("not injective") {
    std::vector<Elem> iota{0, 0};
    CHECK(verify_globalization(pa, global, iota).has_rule("iota-injective"));
  }
  SECTION("if direction") {
    // Z4 acting on itself with 1 -> 0 and 2 -> 2 puts 2 * iota(1) in the image.
    std::vector<Elem> table(16);
    for (Elem x = 0; x < 4; ++x) {
      for (Elem a = 0; a < 4; ++a) table[x * 4 + a] = (x + a) % 4;
    }
    PartialAction z4(cyclic_group(4), default_names(4), table);
    std::vector<Elem> iota{0, 2};
    auto r = verify_globalization(pa, z4, iota);
    CHECK(r.has_rule("if"));
    CHECK(r.has_rule("iota-morphism"));
  }
}

TEST_CASE("classes follow the orbit relation", "[globalization][property]") {
  Rng rng(31);
  const auto groups = small_groups(6);
  for (int i = 0; i < 300; ++i) {
    const auto& g = pick_group(rng, groups);
    auto pa = random_partial_action(g, rng, 6);
    UniversalGlobalization ug(pa);
    const std::size_t n = pa.carrier_size();
    auto labels = naive_orbit_labels(pa);
    REQUIRE(labels.has_value());
    for (std::size_t p = 0; p < g.size() * n; ++p) {
      const ClassId c = ug.class_of(static_cast<Elem>(p / n), static_cast<Elem>(p % n));
      const std::size_t q = (*labels)[p];
      // Representatives are least members in (group, carrier) order.
      REQUIRE(ug.cls(c).rep_slot == q / n);
      REQUIRE(ug.cls(c).rep_elem == q % n);
    }
    auto global = ug.as_action();
    REQUIRE(naive_partial_action(global));
    REQUIRE(verify_globalization(pa, global, ug.embedding()).valid());
  }
}

TEST_CASE("morphisms into global actions factor through the globalization",
          "[globalization][property]") {
  Rng rng(32);
  const auto groups = small_groups(6);
  for (int i = 0; i < 200; ++i) {
    const auto& g = pick_group(rng, groups);
    // A restriction of a global action maps into it by inclusion.
    auto global = random_global_action(g, rng, 7);
    std::vector<Elem> subset;
    for (Elem a = 0; a < global.carrier_size(); ++a) {
      if (coin(rng)) subset.push_back(a);
    }
    if (subset.empty()) subset.push_back(0);
    auto pa = restrict_action(global, subset);
    UniversalGlobalization ug(pa);
    auto psi = factor_morphism(ug, pa, global, subset);
    REQUIRE(psi.size() == ug.size());
    for (Elem a = 0; a < subset.size(); ++a) REQUIRE(psi[ug.embed(a)] == subset[a]);
    for (Elem x = 0; x < g.size(); ++x) {
      for (ClassId c = 0; c < ug.size(); ++c) {
        REQUIRE(psi[ug.act(x, c)] == global.act(x, psi[c]));
      }
    }
  }
}

TEST_CASE("factor_morphism rejects a non-morphism", "[globalization]") {
  auto pa = z4_restriction();
  UniversalGlobalization ug(pa);
  auto global = ug.as_action();
  std::vector<Elem> phi{ug.embed(0), ug.embed(0)};
  CHECK_THROWS_AS(factor_morphism(ug, pa, global, phi), PreconditionError);
}

TEST_CASE("an invalid action cannot be globalized", "[globalization]") {
  auto g = cyclic_group(2, {"1", "x"});
  PartialAction bad(g, {"a", "b"}, {0, 1, 1, kUndefined});
  CHECK_THROWS_AS(UniversalGlobalization(bad), AxiomError);
}

TEST_CASE("the example action has five classes", "[globalization]") {
  auto inst = example_instance();
  UniversalGlobalization ug(inst.action);
  REQUIRE(ug.size() == 5);
  using P = std::pair<Elem, Elem>;
  std::vector<std::vector<P>> members;
  for (const auto& c : ug.classes()) members.push_back(c.members);
  CHECK(members == std::vector<std::vector<P>>{
                       {{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}, {{0, 3}}, {{1, 3}}});
  CHECK(ug.names() == std::vector<std::string>{"[1,0]", "[1,u]", "[1,v]", "[1,t]", "[x,t]"});
}

TEST_CASE("global and trivial actions", "[globalization]") {
  Rng rng(33);
  const auto groups = small_groups(6);
  for (int i = 0; i < 50; ++i) {
    const auto& g = pick_group(rng, groups);
    auto global = random_global_action(g, rng, 6);
    UniversalGlobalization ug(global);
    REQUIRE(ug.size() == global.carrier_size());
    std::set<ClassId> image;
    for (Elem a = 0; a < global.carrier_size(); ++a) image.insert(ug.embed(a));
    REQUIRE(image.size() == ug.size());

    const std::size_t n = uniform(rng, 1, 4);
    std::vector<Elem> table(g.size() * n, kUndefined);
    for (Elem a = 0; a < n; ++a) table[g.identity() * n + a] = a;
    PartialAction trivial(g, default_names(n), table);
    REQUIRE(UniversalGlobalization(trivial).size() == g.size() * n);
  }
}

TEST_CASE("factoring through the globalization itself", "[globalization]") {
  auto inst = example_instance();
  UniversalGlobalization ug(inst.action);
  auto global = ug.as_action();
  auto psi = factor_morphism(ug, inst.action, global, ug.embedding());
  CHECK(psi == std::vector<Elem>{0, 1, 2, 3, 4});
}

TEST_CASE("injective morphisms factor injectively", "[globalization][property]") {
  Rng rng(34);
  const auto groups = small_groups(6);
  for (int i = 0; i < 100; ++i) {
    const auto& g = pick_group(rng, groups);
    auto pa = random_partial_action(g, rng, 5);
    UniversalGlobalization ug(pa);
    // Two copies of the globalization side by side; phi lands in the second.
    auto global = ug.as_action();
    const std::size_t m = ug.size();
    std::vector<Elem> table(g.size() * 2 * m);
    for (Elem x = 0; x < g.size(); ++x) {
      for (Elem c = 0; c < m; ++c) {
        table[x * 2 * m + c] = global.act(x, c);
        table[x * 2 * m + m + c] = static_cast<Elem>(m + global.act(x, c));
      }
    }
    PartialAction doubled(g, default_names(2 * m), table);
    std::vector<Elem> phi;
    for (Elem a = 0; a < pa.carrier_size(); ++a) phi.push_back(static_cast<Elem>(m + ug.embed(a)));
    auto psi = factor_morphism(ug, pa, doubled, phi);
    REQUIRE(std::set<Elem>(psi.begin(), psi.end()).size() == psi.size());
  }
}

#include "catch_amalgamated.hpp"

#include <numeric>

#include "pglob/partial_action.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pglob;
using namespace pglob::testing;

namespace {

PartialAction z4_global() {
  auto g = cyclic_group(4);
  std::vector<Elem> table(16);
  for (Elem x = 0; x < 4; ++x) {
    for (Elem a = 0; a < 4; ++a) table[x * 4 + a] = (x + a) % 4;
  }
  return PartialAction(g, default_names(4), table);
}

}  // namespace

TEST_CASE("restricting Z4 to {1,2} gives D_1 = {2} and D_3 = {1}", "[partial-action]") {
  std::vector<Elem> subset{1, 2};
  auto pa = restrict_action(z4_global(), subset);
  REQUIRE(validate_partial_action(pa).valid());
  // Carrier indices follow the subset order: 0 is "1", 1 is "2".
  CHECK(pa.domain(1) == std::vector<Elem>{1});
  CHECK(pa.domain(3) == std::vector<Elem>{0});
  CHECK(pa.domain(2).empty());
  CHECK(pa.act(1, 0) == 1);
  CHECK_FALSE(pa.defined(1, 1));
  CHECK_FALSE(pa.is_global());
}

TEST_CASE("each axiom is reported with its witness", "[partial-action]") {
  auto g = cyclic_group(2, {"1", "x"});
  const std::vector<std::string> names{"a", "b"};

  SECTION("unit") {
    PartialAction pa(g, names, {1, 0, kUndefined, kUndefined});
    auto r = validate_partial_action(pa);
    REQUIRE(r.has_rule("axiom-1"));
  }
  SECTION("inverse") {
    // x a = b but x b is undefined.
    PartialAction pa(g, names, {0, 1, 1, kUndefined});
    auto r = validate_partial_action(pa);
    REQUIRE(r.has_rule("axiom-2"));
    CHECK(r.find("axiom-2")->witness == std::vector<std::size_t>{1, 0});
  }
  SECTION("composition") {
    auto z3 = cyclic_group(3);
    // 1 a = b, 1 b = a, 2 a = b: then 1(1 a) = a must equal 2 a.
    PartialAction pa(z3, names, {0, 1, 1, 0, 1, 0});
    auto r = validate_partial_action(pa);
    CHECK(r.has_rule("axiom-3"));
  }
}

TEST_CASE("tables with the wrong shape are structural errors", "[partial-action]") {
  auto g = cyclic_group(2);
  CHECK_THROWS_AS(PartialAction(g, {"a"}, {0}), StructuralError);
  CHECK_THROWS_AS(PartialAction(g, {"a"}, {0, 3}), StructuralError);
}

TEST_CASE("restrictions of global actions are partial actions", "[partial-action][property]") {
  Rng rng(21);
  const auto groups = small_groups(6);
  for (int i = 0; i < 300; ++i) {
    const auto& g = pick_group(rng, groups);
    auto global = random_global_action(g, rng, 8);
    REQUIRE(global.is_global());
    REQUIRE(naive_partial_action(global));
    auto pa = random_partial_action(g, rng, 6);
    REQUIRE(naive_partial_action(pa));
    REQUIRE(validate_partial_action(pa).valid());
    for (Elem x = 0; x < g.size(); ++x) {
      for (Elem a : pa.domain(x)) REQUIRE(pa.defined(g.inv(x), a));
    }
  }
}

TEST_CASE("validation agrees with the naive axioms on arbitrary tables", "[partial-action][property]") {
  Rng rng(22);
  const auto groups = small_groups(4);
  for (int i = 0; i < 500; ++i) {
    const auto& g = pick_group(rng, groups);
    const std::size_t n = uniform(rng, 1, 3);
    std::vector<Elem> table(g.size() * n);
    for (auto& c : table) {
      c = coin(rng, 0.4) ? kUndefined : static_cast<Elem>(uniform(rng, 0, n - 1));
    }
    PartialAction pa(g, default_names(n), table);
    REQUIRE(validate_partial_action(pa).valid() == naive_partial_action(pa));
  }
}

TEST_CASE("morphism check finds an undefined image", "[partial-action]") {
  std::vector<Elem> subset{1, 2};
  auto pa = restrict_action(z4_global(), subset);
  auto global = z4_global();
  std::vector<Elem> inclusion{1, 2};
  CHECK(check_morphism(pa, global, inclusion).ok);
  std::vector<Elem> into_pa{0, 1};
  auto to_self = check_morphism(global, pa, std::vector<Elem>{0, 0, 1, 1});
  CHECK_FALSE(to_self.ok);
  CHECK(to_self.witness.has_value());
  CHECK(compose_maps(into_pa, inclusion) == std::vector<Elem>{1, 2});
}

TEST_CASE("the example action is valid", "[partial-action]") {
  auto inst = example_instance();
  CHECK(validate_partial_action(inst.action).valid());
  CHECK(inst.action.domain(1) == std::vector<Elem>{0, 1, 2});
}

TEST_CASE("a non-injective theta_x violates the inverse axiom at (x,v)", "[partial-action]") {
  auto inst = example_instance();
  // x0 = 0, xu = u, xv = u.
  std::vector<Elem> table{0, 1, 2, 3, 0, 1, 1, kUndefined};
  PartialAction pa(inst.action.group(), inst.action.carrier(), table);
  auto r = validate_partial_action(pa);
  REQUIRE(r.has_rule("axiom-2"));
  CHECK(r.find("axiom-2")->witness == std::vector<std::size_t>{1, 2});
}

TEST_CASE("restrictions to the whole carrier and to a point", "[partial-action]") {
  auto global = z4_global();
  std::vector<Elem> all{0, 1, 2, 3};
  CHECK(restrict_action(global, all) == global);
  auto z2 = cyclic_group(2, {"1", "x"});
  PartialAction swap(z2, {"a", "b"}, {0, 1, 1, 0});
  std::vector<Elem> a{0};
  CHECK(restrict_action(swap, a).domain(1).empty());
}

TEST_CASE("a map collapsing a domain fails the morphism check", "[partial-action]") {
  auto z2 = cyclic_group(2, {"1", "x"});
  PartialAction swap(z2, {"a", "b"}, {0, 1, 1, 0});
  std::vector<Elem> id{0, 1};
  CHECK(check_morphism(swap, swap, id).ok);
  // Both points go to c, which x does not move.
  PartialAction target(z2, {"c", "d"}, {0, 1, kUndefined, kUndefined});
  std::vector<Elem> collapse{0, 0};
  auto m = check_morphism(swap, target, collapse);
  CHECK_FALSE(m.ok);
  CHECK(m.witness == std::pair<Elem, Elem>{1, 0});
}

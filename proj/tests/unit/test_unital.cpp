#include "catch_amalgamated.hpp"

#include <algorithm>
#include <set>

#include "pglob/semigroup_globalization.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pglob;
using namespace pglob::testing;

TEST_CASE("the {0,1} example globalizes to three classes", "[unital]") {
  auto inst = unital_example_instance();
  SemigroupPartialAction spa(inst.action, inst.semigroup);
  auto sc = check_sufficient_conditions(spa);
  CHECK(sc.all_unital);
  REQUIRE(sc.per_element[1].unit == Elem{0});
  auto u = build_unital_globalization(spa);
  const auto& p = u.product;
  REQUIRE(p.size() == 3);
  auto id = [&](const char* n) { return *p.index_of(n); };
  CHECK(p.mul(id("[1,1]"), id("[x,1]")) == id("[1,0]"));
  CHECK(p.mul(id("[x,1]"), id("[1,1]")) == id("[1,0]"));
  CHECK(p.mul(id("[x,1]"), id("[x,1]")) == id("[x,1]"));
  CHECK(u.embedding == std::vector<Elem>{id("[1,0]"), id("[1,1]")});
  CHECK(u.units == std::vector<Elem>{1, 0});
  CHECK(u.action.act(1, id("[1,1]")) == id("[x,1]"));
  CHECK(p.is_inverse());
}

TEST_CASE("a domain without a unit is rejected", "[unital]") {
  auto inst = example_instance();
  SemigroupPartialAction spa(inst.action, inst.semigroup);
  CHECK_THROWS_AS(build_unital_globalization(spa), NotUnitalError);
  try {
    build_unital_globalization(spa);
  } catch (const NotUnitalError& e) {
    CHECK(e.x() == 0);
  }
}

TEST_CASE("unital globalizations are semigroup globalizations", "[unital][property]") {
  Rng rng(81);
  const auto groups = small_groups(4);
  int checked = 0;
  for (int attempt = 0; attempt < 5000 && checked < 80; ++attempt) {
    auto inst = random_unital_action(rng, pick_group(rng, groups), 5);
    if (!inst) continue;
    SemigroupPartialAction spa(inst->action, inst->semigroup);
    if (!check_sufficient_conditions(spa).all_unital) continue;
    ++checked;
    REQUIRE(naive_criterion(inst->action, inst->semigroup));
    auto u = build_unital_globalization(spa);
    const auto& p = u.product;
    const auto& s = inst->semigroup;
    REQUIRE(naive_associative(p));
    REQUIRE(p.size() == spa.ug().size());
    std::set<Elem> image(u.embedding.begin(), u.embedding.end());
    REQUIRE(image.size() == s.size());
    for (Elem a = 0; a < s.size(); ++a) {
      for (Elem b = 0; b < s.size(); ++b) {
        REQUIRE(p.mul(u.embedding[a], u.embedding[b]) == u.embedding[s.mul(a, b)]);
      }
      for (Elem q = 0; q < p.size(); ++q) {
        REQUIRE(image.count(p.mul(q, u.embedding[a])));
        REQUIRE(image.count(p.mul(u.embedding[a], q)));
      }
    }
    const auto& g = inst->action.group();
    for (Elem x = 0; x < g.size(); ++x) {
      for (Elem q = 0; q < p.size(); ++q) {
        for (Elem r = 0; r < p.size(); ++r) {
          REQUIRE(u.action.act(x, p.mul(q, r)) == p.mul(u.action.act(x, q), u.action.act(x, r)));
        }
      }
    }
    if (s.is_inverse()) REQUIRE(p.is_inverse());
  }
  CHECK(checked > 0);
}

TEST_CASE("a trivial group gives back the semigroup", "[unital]") {
  Rng rng(82);
  auto s = random_semilattice_monoid(rng, 4);
  PartialAction pa(cyclic_group(1), s.names(), [&] {
    std::vector<Elem> row(s.size());
    for (Elem a = 0; a < s.size(); ++a) row[a] = a;
    return row;
  }());
  auto u = build_unital_globalization(SemigroupPartialAction(pa, s));
  REQUIRE(u.product.size() == s.size());
  for (Elem a = 0; a < s.size(); ++a) {
    for (Elem b = 0; b < s.size(); ++b) {
      CHECK(u.product.mul(u.embedding[a], u.embedding[b]) == u.embedding[s.mul(a, b)]);
    }
  }
}

TEST_CASE("a semilattice with a swapped principal ideal", "[unital]") {
  // 0 < e, f < h < 1 with e f = 0; x swaps e and f inside hS = {0, e, f, h}.
  const std::vector<unsigned> masks{0, 1, 2, 3, 7};
  auto s = semigroup_from(5, [&](Elem a, Elem b) {
    const unsigned m = masks[a] & masks[b];
    return static_cast<Elem>(std::find(masks.begin(), masks.end(), m) - masks.begin());
  });
  auto g = cyclic_group(2, {"1", "x"});
  std::vector<Elem> table{0, 1, 2, 3, 4, 0, 2, 1, 3, kUndefined};
  SemigroupPartialAction spa(PartialAction(g, s.names(), table), s);
  auto sc = check_sufficient_conditions(spa);
  REQUIRE(sc.all_unital);
  CHECK(sc.per_element[1].unit == Elem{3});
  auto u = build_unital_globalization(spa);
  CHECK(u.product.size() == 6);
  CHECK(naive_associative(u.product));
  CHECK(u.product.is_inverse());
  CHECK(check_weak_confluence(spa).confluent);
}

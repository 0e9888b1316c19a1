#include "catch_amalgamated.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "pglob/io.hpp"
#include "support/golden.hpp"

using namespace pglob;
using nlohmann::json;

namespace {

const std::string kData = PGLOB_TEST_DATA;

json example_json() { return json::parse(testing::read_file(kData + "/example.json")); }

bool has_issue(const InputError& e, const std::string& pointer) {
  return std::any_of(e.issues().begin(), e.issues().end(),
                     [&](const InputIssue& i) { return i.pointer == pointer; });
}

std::vector<InputIssue> issues_of(const json& doc) {
  try {
    parse_instance_text(doc.dump());
  } catch (const InputError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST_CASE("the example file loads", "[io]") {
  auto inst = load_instance(kData + "/example.json");
  REQUIRE(inst.group.has_value());
  REQUIRE(inst.semigroup.has_value());
  REQUIRE(inst.action.has_value());
  CHECK(inst.carrier == std::vector<std::string>{"0", "u", "v", "t"});
  CHECK(inst.algebra->op_count() == 1);
  CHECK(inst.action->act(1, 1) == 2);
  CHECK_FALSE(inst.action->defined(1, 3));
  CHECK(inst.warnings.empty());
}

TEST_CASE("empty and malformed documents are input errors", "[io]") {
  CHECK_THROWS_AS(parse_instance_text(""), InputError);
  CHECK_THROWS_AS(parse_instance_text("{\"group\": "), InputError);
  CHECK_THROWS_AS(parse_instance_text("[]"), InputError);
  CHECK_THROWS_AS(parse_instance_text("{}"), InputError);
  CHECK_THROWS_AS(load_instance(kData + "/missing.json"), InputError);
}

TEST_CASE("an inverse axiom failure points at theta", "[io]") {
  auto doc = example_json();
  doc["theta"]["x"]["t"] = "v";
  auto issues = issues_of(doc);
  REQUIRE_FALSE(issues.empty());
  CHECK(issues[0].pointer == "/theta");
  CHECK(issues[0].message.find("axiom-2") != std::string::npos);
}

TEST_CASE("bad references carry JSON pointers", "[io]") {
  auto doc = example_json();
  doc["theta"]["y"] = json::object();
  doc["semigroup"]["table"][0][1] = "w";
  try {
    parse_instance_text(doc.dump());
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(has_issue(e, "/semigroup/table/0/1"));
  }
  auto doc2 = example_json();
  doc2["theta"]["y"] = json::object();
  auto issues = issues_of(doc2);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].pointer == "/theta/y");
}

TEST_CASE("non-associative tables are rejected", "[io]") {
  auto doc = example_json();
  doc["semigroup"]["table"][3][3] = "t";
  auto issues = issues_of(doc);
  REQUIRE_FALSE(issues.empty());
  CHECK(issues[0].pointer == "/semigroup/table");
}

TEST_CASE("unknown keys become warnings", "[io]") {
  auto doc = example_json();
  doc["comment"] = "hello";
  doc["group"]["order"] = 2;
  auto inst = parse_instance_text(doc.dump());
  CHECK(inst.warnings == std::vector<std::string>{"/comment", "/group/order"});
}

TEST_CASE("partial algebra tables accept nested, flat and nullary forms", "[io]") {
  const std::string text = R"({
    "algebra": {"kind": "partial_algebra", "elements": ["a", "b"], "signature": [2, 2, 0],
                "ops": [{"table": [["a", "-"], ["-", "b"]]},
                        {"table": ["a", "*", "*", "b"], "undefined": "*"},
                        {"table": ["b"]}]}
  })";
  auto inst = parse_instance_text(text);
  REQUIRE(inst.algebra.has_value());
  CHECK(inst.algebra->op(0).cells == inst.algebra->op(1).cells);
  CHECK(inst.algebra->op(2).cells == std::vector<Elem>{1});
  CHECK(inst.carrier == std::vector<std::string>{"a", "b"});
}

TEST_CASE("amalgam maps imply their inverses", "[io]") {
  auto inst = load_instance(kData + "/amalgam.json");
  REQUIRE(inst.amalgam.has_value());
  const auto& am = *inst.amalgam;
  CHECK(am.map(1, 0) == std::vector<Elem>{0, 1});
  CHECK(validate_amalgam(am).valid());
}

TEST_CASE("relations are read by element name", "[io]") {
  auto inst = load_instance(kData + "/relations.json");
  REQUIRE(inst.relations.has_value());
  REQUIRE(inst.relations->relations.size() == 1);
  CHECK(inst.relations->relations[0].contains({0, 1}));
}

TEST_CASE("streams parse like files", "[io]") {
  std::istringstream in(testing::read_file(kData + "/unital.json"));
  auto inst = parse_instance(in);
  REQUIRE(inst.semigroup.has_value());
  CHECK(inst.semigroup->size() == 2);
}

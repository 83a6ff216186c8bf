#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "random_gen.hpp"
#include "trend/dlr.hpp"
#include "trend/reason.hpp"
#include "trend/text.hpp"

using namespace trend;
using namespace trend::reason;

namespace {

Schema parsed(const std::string& text) {
  ParseResult result = parse_schema(text);
  REQUIRE(result.ok());
  return *result.schema;
}

Schema fixture(const std::string& name) {
  std::ifstream in(std::string(TREND_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parsed(buf.str());
}

}  // namespace

TEST_CASE("unknown goal elements are rejected") {
  CHECK_THROWS_AS(find_witness(parsed(""), "C"), Error);
}

TEST_CASE("the disjoint-cover-isa fixture has no witness up to bounds") {
  Schema schema = fixture("unsat_disjoint_cover.trend");
  Bounds bounds;
  bounds.max_objects = 2;
  bounds.max_horizon = 3;
  auto result = find_witness(schema, "C1", bounds);
  REQUIRE(std::holds_alternative<ExhaustedBounds>(result));
  const auto& lattice = std::get<ExhaustedBounds>(result).lattice;
  CHECK(lattice.max_objects == 2);
  CHECK(lattice.max_horizon == 3);
  CHECK(lattice_text(lattice).find("(2 objects, 3 time points)") !=
        std::string::npos);
}

TEST_CASE("a temporal class gets the minimal one-object witness") {
  Schema schema = parsed("class C temporal;");
  Bounds bounds;
  bounds.max_objects = 1;
  bounds.max_horizon = 2;
  auto result = find_witness(schema, "C", bounds);
  REQUIRE(std::holds_alternative<Witness>(result));
  const Witness& w = std::get<Witness>(result);
  CHECK(w.t == 0);
  CHECK(w.state.horizon == 2);
  CHECK(w.state.in_class("C", 0, "o1"));
  CHECK(!w.state.in_class("C", 1, "o1"));
}

TEST_CASE("declared isa subsumption holds at any bounds") {
  Schema schema = parsed("class C1; class C2;\nisa C1 C2;");
  auto result = check_subsumption(schema, "C1", "C2");
  CHECK(std::holds_alternative<HoldsUpToBounds>(result));
}

TEST_CASE("unrelated classes separate immediately") {
  Schema schema = parsed("class C; class D;");
  auto result = check_subsumption(schema, "C", "D");
  REQUIRE(std::holds_alternative<CounterExample>(result));
  const auto& cex = std::get<CounterExample>(result);
  CHECK(cex.state.in_class("C", cex.t, cex.instance));
  CHECK(!cex.state.in_class("D", cex.t, cex.instance));
}

TEST_CASE("an empty-forced sibling makes the cover collapse to one branch") {
  Schema schema = fixture("unsat_disjoint_cover.trend");
  // C1 is forced empty, so cover {C1, C2} C means C ⊑ C2.
  auto result = check_subsumption(schema, "C", "C2");
  CHECK(std::holds_alternative<HoldsUpToBounds>(result));
}

TEST_CASE("subsumption rejects mixed kinds and unknown names") {
  Schema schema = parsed(
      "class C;\nrel R(a: C, b: C);");
  CHECK_THROWS_AS(check_subsumption(schema, "C", "R"), Error);
  CHECK_THROWS_AS(check_subsumption(schema, "C", "Nope"), Error);
}

TEST_CASE("candidate statements already in the schema are implied") {
  Schema schema = parsed("class A; class B;\nisa A B;");
  auto result = check_implication(schema, "isa A B;");
  CHECK(std::holds_alternative<HoldsUpToBounds>(result));
}

TEST_CASE("a snapshot class is not temporal: counterexample found") {
  Schema schema = parsed("class C snapshot;");
  auto result = check_implication(schema, "class C temporal;");
  REQUIRE(std::holds_alternative<CounterExample>(result));
  const auto& cex = std::get<CounterExample>(result);
  // the separating state keeps some object in C at every time point
  bool constant_member = false;
  for (const auto& o : cex.state.objects) {
    bool always = true;
    for (int t = 0; t < cex.state.horizon; ++t)
      always = always && cex.state.in_class("C", t, o);
    constant_member = constant_member || always;
  }
  CHECK(constant_member);
}

TEST_CASE("isa chains imply their transitive closure") {
  Schema schema = parsed(
      "class C1; class C2; class C3;\nisa C1 C2;\nisa C2 C3;");
  auto result = check_implication(schema, "isa C1 C3;");
  CHECK(std::holds_alternative<HoldsUpToBounds>(result));
}

TEST_CASE("rejected candidates raise errors") {
  Schema schema = parsed("class A;");
  CHECK_THROWS_AS(check_implication(schema, "isa A Missing;"), Error);
  CHECK_THROWS_AS(check_implication(schema, "class Ghost temporal;"), Error);
}

TEST_CASE("witnesses verify against check_state and the DLR oracle") {
  std::mt19937 rng(47);
  testgen::SchemaOptions options;
  options.max_classes = 3;
  options.max_rels = 1;
  options.max_attrs = 1;
  options.max_transitions = 2;
  int witnesses = 0;
  for (int i = 0; i < 25; ++i) {
    Schema schema = testgen::random_schema(rng, options);
    if (schema.classes.empty()) continue;
    Bounds bounds;
    bounds.max_objects = 2;
    bounds.max_horizon = 3;
    WitnessResult result;
    try {
      result = find_witness(schema, schema.classes[0].name, bounds);
    } catch (const Error&) {
      continue;
    }
    if (const Witness* w = std::get_if<Witness>(&result)) {
      ++witnesses;
      CHECK(check_state(schema, w->state).empty());
      CHECK(dlr::kb_satisfied(dlr::translate(schema), w->state).satisfied);
    }
  }
  CHECK(witnesses > 5);
}

TEST_CASE("search is deterministic and anti-monotone in the bounds") {
  Schema schema = parsed(
      "class A; class B temporal;\nisa B A;\nEXT A -> B;");
  Bounds small;
  small.max_objects = 2;
  small.max_horizon = 2;
  Bounds large;
  large.max_objects = 3;
  large.max_horizon = 4;
  auto r1 = find_witness(schema, "B", small);
  auto r2 = find_witness(schema, "B", small);
  auto r3 = find_witness(schema, "B", large);
  REQUIRE(std::holds_alternative<Witness>(r1));
  const auto& w1 = std::get<Witness>(r1);
  const auto& w2 = std::get<Witness>(r2);
  const auto& w3 = std::get<Witness>(r3);
  CHECK(state_to_json(w1.state, schema) == state_to_json(w2.state, schema));
  CHECK(state_to_json(w1.state, schema) == state_to_json(w3.state, schema));
}

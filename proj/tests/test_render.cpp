#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "random_gen.hpp"
#include "trend/render.hpp"
#include "trend/text.hpp"

using namespace trend;
using namespace trend::render;

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

TEST_CASE("temporal classes carry the ASCII marker when asked") {
  Schema schema = parsed("class Traveller temporal;");
  Options ascii;
  ascii.ascii_only = true;
  CHECK(to_dot(schema, ascii).find("Traveller (T)") != std::string::npos);
  CHECK(to_dot(schema).find("⏰") != std::string::npos);
}

TEST_CASE("optional transitions dash, past mandatory ones stay solid") {
  Schema schema = parsed(
      "class Client; class Traveller;\nEXT Client -> Traveller;\n"
      "class Academic; class EmeritusProf;\n"
      "chg Academic -> EmeritusProf mandatory;");
  std::string dot = to_dot(schema);
  CHECK(dot.find("\"Client\" -> \"Traveller\" [label=\"EXT\", style=dashed]") !=
        std::string::npos);
  // migration direction preserved for the past: Academic → EmeritusProf
  CHECK(dot.find("\"Academic\" -> \"EmeritusProf\" [label=\"CHG-\", "
                 "style=solid]") != std::string::npos);
}

TEST_CASE("label variant switches the transition vocabulary") {
  Schema schema = parsed("class A; class B;\nEXT A -> B;\nCHG B -> A;");
  Options dev;
  dev.labels = KeywordStyle::DevDex;
  std::string dot = to_dot(schema, dev);
  CHECK(dot.find("DEX") != std::string::npos);
  CHECK(dot.find("DEV") != std::string::npos);
  CHECK(dot.find("\"EXT\"") == std::string::npos);
}

TEST_CASE("fixtures render to well-formed DOT with exact counts") {
  for (const char* name :
       {"tourism.trend", "employee_academic.trend", "unsat_disjoint_cover.trend"}) {
    Schema schema = fixture(name);
    for (bool ascii : {false, true}) {
      Options options;
      options.ascii_only = ascii;
      DotCheck check = check_dot(to_dot(schema, options));
      for (const auto& p : check.problems) MESSAGE(name, ": ", p);
      CHECK(check.ok);
      DotStats expected = expected_stats(schema);
      CHECK(check.nodes == expected.nodes);
      CHECK(check.edges == expected.edges);
    }
  }
}

TEST_CASE("random schemas render to well-formed DOT with exact counts") {
  std::mt19937 rng(59);
  for (int i = 0; i < 60; ++i) {
    Schema schema = testgen::random_schema(rng);
    DotCheck check = check_dot(to_dot(schema));
    CHECK(check.ok);
    DotStats expected = expected_stats(schema);
    CHECK(check.nodes == expected.nodes);
    CHECK(check.edges == expected.edges);
  }
}

TEST_CASE("rendering is deterministic") {
  Schema sink = testgen::kitchen_sink_schema();
  CHECK(to_dot(sink) == to_dot(sink));
}

TEST_CASE("the checker flags malformed DOT") {
  CHECK(!check_dot("graph g {\n}\n").ok);                      // not a digraph
  CHECK(!check_dot("digraph g {\n  \"a\" [color=\"x\"];\n}\n").ok);  // unknown attr
  CHECK(!check_dot("digraph g {\n  \"a\";\n").ok);             // unbalanced
  CHECK(!check_dot("digraph g {\n  a -> b;\n}\n").ok);         // unquoted ids
  CHECK(check_dot("digraph g {\n  \"a\" [label=\"x\"];\n}\n").ok);
}

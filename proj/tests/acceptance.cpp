// Acceptance suite: runs each acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <variant>

#include "naive_checker.hpp"
#include "random_gen.hpp"
#include "trend/dlr.hpp"
#include "trend/reason.hpp"
#include "trend/render.hpp"
#include "trend/semantics.hpp"
#include "trend/text.hpp"
#include "trend/verbal.hpp"

using namespace trend;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_fixtures;
int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, const std::string& name, bool pass, double elapsed,
            double budget, const std::string& detail) {
  const bool in_budget = elapsed < budget;
  const bool ok = pass && in_budget;
  if (!ok) ++g_failures;
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << name
       << " [" << detail << "] (" << elapsed << "s of <" << budget << "s)";
  if (pass && !in_budget) line << " — over time budget";
  std::cout << line.str() << "\n";
}

std::string slurp(const std::string& name) {
  std::ifstream in(g_fixtures + "/" + name);
  if (!in) {
    std::cerr << "missing fixture " << name << "\n";
    std::exit(2);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Schema parse_fixture(const std::string& name) {
  ParseResult result = parse_schema(slurp(name));
  if (!result.ok()) {
    std::cerr << "fixture " << name << " failed to parse\n";
    for (const auto& d : result.diagnostics)
      std::cerr << "  " << format_diagnostic(d) << "\n";
    std::exit(2);
  }
  return *result.schema;
}

testgen::SchemaOptions corpus_options() {
  testgen::SchemaOptions options;  // ≤4 classes, ≤2 rels, ≤6 transitions
  return options;
}

// 1. parse ∘ serialize is the identity on fixtures and 500 random schemas.
void criterion_round_trip() {
  auto start = Clock::now();
  int checked = 0, failed = 0;
  auto round_trips = [&](const Schema& s) {
    for (auto style : {KeywordStyle::ChgExt, KeywordStyle::DevDex}) {
      ++checked;
      ParseResult again = parse_schema(serialize_schema(s, style));
      if (!again.ok() || !(*again.schema == s)) ++failed;
    }
  };
  round_trips(parse_fixture("employee_academic.trend"));
  round_trips(parse_fixture("tourism.trend"));
  round_trips(testgen::kitchen_sink_schema());
  std::mt19937 rng(101);
  for (int i = 0; i < 500; ++i) round_trips(testgen::random_schema(rng));
  report(1, "round-trip identity", failed == 0, seconds_since(start), 10.0,
         std::to_string(checked) + " round trips, " + std::to_string(failed) +
             " failed");
}

// 2. verbalize(tourism model) reproduces the corpus statements.
void criterion_verbalization() {
  auto start = Clock::now();
  Schema schema = parse_fixture("tourism.trend");
  std::vector<std::string> expected;
  std::istringstream corpus(slurp("tourism_sentences.txt"));
  std::string line;
  while (std::getline(corpus, line))
    if (!line.empty()) expected.push_back(line);
  auto sentences = verbal::verbalize(schema);
  int matched = 0;
  const std::size_t n = std::min(sentences.size(), expected.size());
  for (std::size_t i = 0; i < n; ++i)
    if (verbal::normalize_sentence(sentences[i]) ==
        verbal::normalize_sentence(expected[i]))
      ++matched;
  const bool pass = sentences.size() == expected.size() &&
                    matched == static_cast<int>(expected.size());
  report(2, "tourism verbalization golden", pass, seconds_since(start), 1.0,
         std::to_string(matched) + "/" + std::to_string(expected.size()) +
             " statements (corpus holds " + std::to_string(expected.size()) +
             ")");
}

// 3. check_state emptiness agrees with kb_satisfied∘translate.
void criterion_dlr_oracle() {
  auto start = Clock::now();
  std::mt19937 rng(103);
  int agreements = 0, cases = 0, legal_cases = 0;
  for (int i = 0; i < 1000; ++i) {
    Schema schema = testgen::random_schema(rng, corpus_options());
    TemporalState state = testgen::random_state(rng, schema, 3, 4);
    ++cases;
    const bool legal = check_state(schema, state).empty();
    if (legal) ++legal_cases;
    const bool satisfied =
        dlr::kb_satisfied(dlr::translate(schema), state).satisfied;
    if (legal == satisfied) ++agreements;
  }
  const bool mixed = legal_cases > 50 && legal_cases < 950;
  report(3, "semantics/DLR oracle equivalence", agreements == cases && mixed,
         seconds_since(start), 60.0,
         std::to_string(agreements) + "/" + std::to_string(cases) +
             " agree, " + std::to_string(legal_cases) + " legal");
}

// 4. check_state agrees with the naive Definition-2 expander.
void criterion_naive_oracle() {
  auto start = Clock::now();
  std::mt19937 rng(103);  // same corpus as criterion 3
  int agreements = 0, cases = 0;
  std::size_t findings_total = 0;
  for (int i = 0; i < 1000; ++i) {
    Schema schema = testgen::random_schema(rng, corpus_options());
    TemporalState state = testgen::random_state(rng, schema, 3, 4);
    ++cases;
    auto ours = testgen::findings_of(check_state(schema, state));
    findings_total += ours.size();
    if (ours == testgen::naive_check(schema, state)) ++agreements;
  }
  report(4, "brute-force equivalence", agreements == cases && findings_total > 0,
         seconds_since(start), 60.0,
         std::to_string(agreements) + "/" + std::to_string(cases) +
             " agree over " + std::to_string(findings_total) + " findings");
}

// 5. Q-variants with n=1 equal the unquantified conditions.
void criterion_quantitative_collapse() {
  auto start = Clock::now();
  std::mt19937 rng(107);
  Schema classes = *parse_schema("class A; class B;").schema;
  Schema rels =
      *parse_schema("class C;\nrel R1(a: C, b: C);\nrel R2(a: C, b: C);")
           .schema;
  int states = 0, failures = 0;
  for (int i = 0; i < 200; ++i) {
    ++states;
    TemporalState cs = testgen::random_state(rng, classes, 3, 4);
    for (auto kind : {TransitionKind::Extension, TransitionKind::Change})
      for (auto tense : {Tense::Future, Tense::Past}) {
        TransitionConstraint plain;
        plain.kind = kind;
        plain.tense = tense;
        plain.source = "A";
        plain.target = "B";
        TransitionConstraint quant = plain;
        quant.offset = 1;
        for (const auto& o : cs.objects)
          for (int t = 0; t < cs.horizon; ++t)
            if (transition_holds(classes, cs, plain, o, t) !=
                transition_holds(classes, cs, quant, o, t))
              ++failures;
      }
    TemporalState rs = testgen::random_state(rng, rels, 2, 3);
    std::vector<Tuple> tuples;
    for (const auto& a : rs.objects)
      for (const auto& b : rs.objects) tuples.push_back({a, b});
    for (auto kind : {TransitionKind::Extension, TransitionKind::Change})
      for (auto tense : {Tense::Future, Tense::Past}) {
        TransitionConstraint plain;
        plain.subject = SubjectKind::Relationship;
        plain.kind = kind;
        plain.tense = tense;
        plain.source = "R1";
        plain.target = "R2";
        TransitionConstraint quant = plain;
        quant.offset = 1;
        for (const auto& tuple : tuples)
          for (int t = 0; t < rs.horizon; ++t)
            if (transition_holds(rels, rs, plain, tuple, t) !=
                transition_holds(rels, rs, quant, tuple, t))
              ++failures;
      }
  }
  report(5, "quantitative collapse at n=1", failures == 0,
         seconds_since(start), 10.0,
         std::to_string(states) + " states, " + std::to_string(failures) +
             " mismatches");
}

// 6. Reasoning fixtures and witness self-verification.
void criterion_reasoning() {
  auto start = Clock::now();
  std::ostringstream detail;
  bool pass = true;

  Schema unsat = parse_fixture("unsat_disjoint_cover.trend");
  reason::Bounds bounds;  // 2 objects, 3 time points
  auto a = reason::find_witness(unsat, "C1", bounds);
  const bool a_ok = std::holds_alternative<reason::ExhaustedBounds>(a);
  pass = pass && a_ok;
  detail << "unsat=" << (a_ok ? "exhausted" : "WITNESS?");

  ParseResult sub = parse_schema("class C1; class C2;\nisa C1 C2;");
  auto b = reason::check_subsumption(*sub.schema, "C1", "C2", bounds);
  const bool b_ok = std::holds_alternative<reason::HoldsUpToBounds>(b);
  pass = pass && b_ok;
  detail << " isa-subsumption=" << (b_ok ? "holds" : "FAILED");

  ParseResult chain =
      parse_schema("class C1; class C2; class C3;\nisa C1 C2;\nisa C2 C3;");
  auto c = reason::check_implication(*chain.schema, "isa C1 C3;", bounds);
  const bool c_ok = std::holds_alternative<reason::HoldsUpToBounds>(c);
  pass = pass && c_ok;
  detail << " transitive-isa=" << (c_ok ? "holds" : "FAILED");

  std::mt19937 rng(109);
  testgen::SchemaOptions options;
  options.max_classes = 3;
  options.max_rels = 1;
  options.max_attrs = 1;
  options.max_transitions = 2;
  int witnesses = 0, verified = 0;
  for (int i = 0; i < 30; ++i) {
    Schema schema = testgen::random_schema(rng, options);
    if (schema.classes.empty()) continue;
    auto result = reason::find_witness(schema, schema.classes[0].name, bounds);
    if (const auto* w = std::get_if<reason::Witness>(&result)) {
      ++witnesses;
      if (check_state(schema, w->state).empty()) ++verified;
    }
  }
  pass = pass && witnesses == verified && witnesses > 0;
  detail << " witnesses=" << verified << "/" << witnesses << " verified";

  report(6, "reasoning fixtures", pass, seconds_since(start), 10.0,
         detail.str());
}

// 7. dev-dex and chg-ext round trips coincide, violations byte-identical.
void criterion_label_invariance() {
  auto start = Clock::now();
  std::mt19937 rng(113);
  int schemas = 0, failures = 0;
  for (int i = 0; i < 100; ++i) {
    Schema schema = testgen::random_schema(rng);
    ++schemas;
    ParseResult chg = parse_schema(serialize_schema(schema, KeywordStyle::ChgExt));
    ParseResult dev = parse_schema(serialize_schema(schema, KeywordStyle::DevDex));
    if (!chg.ok() || !dev.ok() || !(*chg.schema == *dev.schema)) {
      ++failures;
      continue;
    }
    TemporalState state = testgen::random_state(rng, schema, 2, 3);
    std::ostringstream va, vb;
    for (const auto& v : check_state(*chg.schema, state))
      va << format_violation(v) << "\n";
    for (const auto& v : check_state(*dev.schema, state))
      vb << format_violation(v) << "\n";
    if (va.str() != vb.str()) ++failures;
  }
  report(7, "label invariance", failures == 0, seconds_since(start), 10.0,
         std::to_string(schemas) + " schemas, " + std::to_string(failures) +
             " failed");
}

// 8. DOT output is well-formed with exact node/edge counts.
void criterion_dot() {
  auto start = Clock::now();
  int checked = 0, failures = 0;
  auto verify = [&](const Schema& schema) {
    for (bool ascii : {false, true}) {
      ++checked;
      render::Options options;
      options.ascii_only = ascii;
      render::DotCheck check = render::check_dot(render::to_dot(schema, options));
      render::DotStats want = render::expected_stats(schema);
      if (!check.ok || check.nodes != want.nodes || check.edges != want.edges)
        ++failures;
    }
  };
  verify(parse_fixture("tourism.trend"));
  verify(parse_fixture("employee_academic.trend"));
  verify(parse_fixture("unsat_disjoint_cover.trend"));
  verify(testgen::kitchen_sink_schema());
  std::mt19937 rng(127);
  for (int i = 0; i < 50; ++i) verify(testgen::random_schema(rng));
  report(8, "DOT validity and counts", failures == 0, seconds_since(start),
         10.0,
         std::to_string(checked) + " renders, " + std::to_string(failures) +
             " failed");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <fixtures-dir>\n";
    return 2;
  }
  g_fixtures = argv[1];
  criterion_round_trip();
  criterion_verbalization();
  criterion_dlr_oracle();
  criterion_naive_oracle();
  criterion_quantitative_collapse();
  criterion_reasoning();
  criterion_label_invariance();
  criterion_dot();
  if (g_failures == 0) {
    std::cout << "acceptance: all criteria pass\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion(s) failing\n";
  return 1;
}

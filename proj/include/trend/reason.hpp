#pragma once

#include <string>
#include <variant>

#include "trend/model.hpp"
#include "trend/semantics.hpp"
#include "trend/state.hpp"

namespace trend::reason {

/// Whether the flow of time is read as ⟨N,<⟩ or ⟨Z,<⟩. Bounded evaluation
/// closes the window at both ends either way, so the choice only labels
/// the verdicts; reported for honesty about what was decided.
enum class TimeFlow { Naturals, Integers };

struct Bounds {
  unsigned max_objects = 2;
  unsigned max_horizon = 3;
  unsigned max_domain_values = 2;
  TimeFlow time_flow = TimeFlow::Naturals;
};

struct SearchedLattice {
  unsigned max_objects = 0;
  unsigned max_horizon = 0;
  TimeFlow time_flow = TimeFlow::Naturals;
};

std::string lattice_text(const SearchedLattice& lattice);

struct Witness {
  TemporalState state;
  int t = 0;                // a time point where the goal is nonempty
  std::string element;
};

struct ExhaustedBounds {
  SearchedLattice lattice;
};

using WitnessResult = std::variant<Witness, ExhaustedBounds>;

/// Bounded satisfiability: the lexicographically-first legal state (small
/// extensions first, earlier presence breaking ties) with a nonempty goal
/// extension, enumerated over horizons 1..maxHorizon then object counts.
/// Every witness passes check_state with zero violations before return.
/// Throws Error("unknown-element").
WitnessResult find_witness(
    const Schema& schema, const std::string& element,
    const Bounds& bounds = {},
    SemanticsVariant variant = SemanticsVariant::TargetTriggered);

struct CounterExample {
  TemporalState state;
  std::string instance;
  int t = 0;
  std::string note;
};

struct HoldsUpToBounds {
  SearchedLattice lattice;
};

using CheckResult = std::variant<CounterExample, HoldsUpToBounds>;

/// Bounded subsumption: a legal state with an instance in sub \ sup at
/// some t, or HoldsUpToBounds. Throws Error("unknown-element") and
/// Error("kind-mismatch").
CheckResult check_subsumption(
    const Schema& schema, const std::string& sub, const std::string& sup,
    const Bounds& bounds = {},
    SemanticsVariant variant = SemanticsVariant::TargetTriggered);

/// Merges one candidate statement into a schema: a transition constraint,
/// isa/isar/isau, disjoint/disjointr/cover, or a re-marking of the form
/// "class C temporal;" / "rel R snapshot;". Returns the extended schema or
/// a diagnostic.
std::variant<Schema, Diagnostic> apply_candidate(const Schema& schema,
                                                 const std::string& stmt);

/// Bounded logical implication: a legal state of the schema violating the
/// candidate, or HoldsUpToBounds.
CheckResult check_implication(
    const Schema& schema, const std::string& candidate_stmt,
    const Bounds& bounds = {},
    SemanticsVariant variant = SemanticsVariant::TargetTriggered);

}  // namespace trend::reason

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "trend/model.hpp"
#include "trend/state.hpp"

namespace trend {

/// Which side of a past-mandatory transition carries the obligation.
/// Target-triggered (default): every target member must descend from an
/// earlier occurrence of the transition condition (C2 ⊑ ◇⁻ext) — the
/// reading the knowledge-base translation uses. Source-triggered keeps
/// the alternative reading for experimentation. The choice feeds both
/// check_state and the DLR translation so the two stay aligned.
enum class SemanticsVariant { TargetTriggered, SourceTriggered };

/// A located breach of one legality bullet. `rule` is drawn from a closed
/// catalogue: isa_C, isa_R, isa_U, rel-typing, card_R, card_A, disj_C,
/// disj_R, cover, snapshot-class, temporal-class, snapshot-rel,
/// temporal-rel, snapshot-attr, temporal-attr, attr-s, attr-t, id, FRZ,
/// and the transition keywords (MEXT, mchg, MQEXTR, PEXT, ...).
struct Violation {
  std::string rule;
  std::vector<std::string> elements;
  std::vector<int> times;
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

std::string format_violation(const Violation& v);

/// The instance a transition condition is evaluated for: an object for
/// class transitions, a role-ordered tuple for relationship transitions,
/// an (object, value) pair for attribute transitions.
using SubjectInstance = std::variant<ObjectId, Tuple, AttrPair>;

/// Decides legality of a finite temporal database state: empty result
/// iff the state satisfies every schema constraint at every time point.
/// Throws Error("ill-formed-state") for states breaking the TemporalState
/// invariants. Pure; deterministic violation order.
std::vector<Violation> check_state(
    const Schema& schema, const TemporalState& state,
    SemanticsVariant variant = SemanticsVariant::TargetTriggered);

/// Whether the transition condition of `constraint` holds for the instance
/// at t, transition sets inlined. A condition that references a time point
/// outside the window is false. Throws Error("kind-mismatch") when the
/// instance does not fit the constraint's subject kind.
bool transition_holds(const Schema& schema, const TemporalState& state,
                      const TransitionConstraint& constraint,
                      const SubjectInstance& instance, int t);

/// Whether a mandatory constraint's obligation is discharged for the
/// instance at t: future-mandatory triggers on source membership and needs
/// a strictly later witness; past-mandatory triggers per `variant` and
/// needs a strictly earlier witness of the future-form condition.
/// Persistent constraints additionally require the target to hold at every
/// later point once the condition fires. Throws Error("not-mandatory").
bool mandatory_obligation_met(
    const Schema& schema, const TemporalState& state,
    const TransitionConstraint& constraint, const SubjectInstance& instance,
    int t, SemanticsVariant variant = SemanticsVariant::TargetTriggered);

}  // namespace trend

#pragma once

#include <string>
#include <vector>

#include "trend/model.hpp"
#include "trend/semantics.hpp"
#include "trend/state.hpp"

namespace trend::testgen {

struct NaiveFinding {
  std::string rule;
  int t = 0;
  std::string element;

  friend auto operator<=>(const NaiveFinding&, const NaiveFinding&) = default;
};

/// Independent legality oracle: expands every semantics bullet by direct
/// exhaustive quantification over objects/tuples/pairs and time points,
/// sharing no evaluation code with check_state. Same documented
/// resolutions: past-mandatory trigger per variant, future-form obligation
/// witnesses, out-of-window references falsify transition conditions.
std::vector<NaiveFinding> naive_check(
    const Schema& schema, const TemporalState& state,
    SemanticsVariant variant = SemanticsVariant::TargetTriggered);

/// The same findings projected from check_state, for set comparison.
std::vector<NaiveFinding> findings_of(const std::vector<Violation>& violations);

}  // namespace trend::testgen

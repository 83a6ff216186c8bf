#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trend/model.hpp"

namespace trend {

using ObjectId = std::string;
using Value = std::string;
/// Relationship tuple, objects in the relationship's declared role order.
using Tuple = std::vector<ObjectId>;
/// Attribute pair (object, value).
using AttrPair = std::pair<ObjectId, Value>;

/// A finite temporal database state B over time points 0..horizon-1.
/// Out-of-window time points have empty extensions by convention.
struct TemporalState {
  int horizon = 1;
  std::vector<ObjectId> objects;
  std::map<std::string, std::vector<Value>> domains;
  std::map<std::string, std::vector<std::set<ObjectId>>> classes;
  std::map<std::string, std::vector<std::set<Tuple>>> relationships;
  std::map<std::string, std::vector<std::set<AttrPair>>> attributes;  // "C.A"

  bool in_window(int t) const { return t >= 0 && t < horizon; }

  bool in_class(const std::string& cls, int t, const ObjectId& o) const;
  bool in_rel(const std::string& rel, int t, const Tuple& r) const;
  bool in_attr(const std::string& attr, int t, const AttrPair& a) const;

  const std::set<ObjectId>& class_ext(const std::string& cls, int t) const;
  const std::set<Tuple>& rel_ext(const std::string& rel, int t) const;
  const std::set<AttrPair>& attr_ext(const std::string& attr, int t) const;

  /// Mutating helpers for building states in code.
  void put_class(const std::string& cls, int t, const ObjectId& o);
  void put_rel(const std::string& rel, int t, Tuple r);
  void put_attr(const std::string& attr, int t, AttrPair a);
};

/// Checks the TemporalState well-formedness invariants against a schema:
/// declared names only, time keys inside the window, tuple role sets equal
/// to the declared roles, values drawn from the declared domain, objects
/// and values disjoint. Throws Error("ill-formed-state") on the first break.
void ensure_well_formed(const Schema& schema, const TemporalState& state);

/// .state.json interchange. Absent keys mean empty extensions.
TemporalState parse_state_json(const std::string& text, const Schema& schema);
std::string state_to_json(const TemporalState& state, const Schema& schema);

}  // namespace trend

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "trend/diagnostics.hpp"

namespace trend {

enum class Temporality : std::uint8_t { Snapshot, Mixed, Temporary };

enum class TransitionKind : std::uint8_t { Extension, Change, Frozen };
enum class Tense : std::uint8_t { Future, Past };
enum class Modality : std::uint8_t { Optional, Mandatory };
enum class SubjectKind : std::uint8_t { Class, Relationship, Attribute };

/// [min, max] participation bounds; absent max means unbounded.
struct Cardinality {
  unsigned min = 0;
  std::optional<unsigned> max;

  friend auto operator<=>(const Cardinality&, const Cardinality&) = default;
};

inline constexpr Cardinality kDefaultAttrCard{1, 1};
inline constexpr Cardinality kDefaultRoleCard{0, std::nullopt};

struct AttrDecl {
  std::string name;
  std::string domain;
  Temporality marking = Temporality::Mixed;
  bool is_id = false;
  Cardinality card = kDefaultAttrCard;

  friend auto operator<=>(const AttrDecl&, const AttrDecl&) = default;
};

struct ClassDecl {
  std::string name;
  Temporality temporality = Temporality::Mixed;
  std::vector<AttrDecl> attributes;  // declaration order

  const AttrDecl* find_attribute(const std::string& attr) const;

  friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

struct RoleDecl {
  std::string name;
  std::string player;
  Cardinality card = kDefaultRoleCard;

  friend auto operator<=>(const RoleDecl&, const RoleDecl&) = default;
};

struct RelDecl {
  std::string name;
  Temporality temporality = Temporality::Mixed;
  std::vector<RoleDecl> roles;  // declaration order; positions are semantic

  std::size_t arity() const { return roles.size(); }
  const RoleDecl* find_role(const std::string& role) const;
  std::optional<std::size_t> role_position(const std::string& role) const;

  friend bool operator==(const RelDecl&, const RelDecl&) = default;
};

/// One element of the transition-constraint set E.
///
/// Class and relationship subjects name declared classes/relationships;
/// attribute subjects use qualified "Class.attr" names. Frozen constraints
/// have a single endpoint, stored as source == target.
struct TransitionConstraint {
  SubjectKind subject = SubjectKind::Class;
  TransitionKind kind = TransitionKind::Extension;
  Tense tense = Tense::Future;
  Modality modality = Modality::Optional;
  std::optional<unsigned> offset;  // quantitative n, in chronons (>= 1)
  bool persistent = false;
  std::string source;
  std::string target;

  bool quantitative() const { return offset.has_value(); }
  /// Chronon distance used by the transition condition (1 when unquantified).
  unsigned step() const { return offset.value_or(1); }

  friend auto operator<=>(const TransitionConstraint&,
                          const TransitionConstraint&) = default;
};

/// Canonical keyword, e.g. "EXT", "mchgR", "PEXT", "MQCHG", "FRZ".
/// Uppercase spells future tense, lowercase past; the R/A suffix marks the
/// subject; P/M/Q prefixes mark persistence, mandatory and quantitative.
std::string transition_keyword(const TransitionConstraint& c);

struct RoleRef {
  std::string rel;
  std::string role;

  friend auto operator<=>(const RoleRef&, const RoleRef&) = default;
};

/// disj / cover group: {members} against a shared superelement.
struct Group {
  std::vector<std::string> members;
  std::string super;

  friend auto operator<=>(const Group&, const Group&) = default;
};

/// A validated TREND conceptual data model. Immutable after construction;
/// all operations on it are pure.
struct Schema {
  std::vector<ClassDecl> classes;        // declaration order
  std::vector<RelDecl> relationships;    // declaration order
  std::vector<std::pair<std::string, std::string>> isa_c;  // (sub, super)
  std::vector<std::pair<std::string, std::string>> isa_r;
  std::vector<std::pair<RoleRef, RoleRef>> isa_u;
  std::vector<Group> disj_c;
  std::vector<Group> disj_r;
  std::vector<Group> cover;
  std::vector<TransitionConstraint> transitions;  // declaration order
  std::optional<std::string> chronon_unit;        // metadata only

  const ClassDecl* find_class(const std::string& name) const;
  const RelDecl* find_relationship(const std::string& name) const;
  /// Looks up a qualified "Class.attr" name.
  const AttrDecl* find_attribute(const std::string& qualified,
                                 const ClassDecl** owner = nullptr) const;
  /// The declared identifier attribute of a class, if any.
  const AttrDecl* id_attribute(const std::string& class_name) const;

  bool empty() const {
    return classes.empty() && relationships.empty() && isa_c.empty() &&
           isa_r.empty() && isa_u.empty() && disj_c.empty() &&
           disj_r.empty() && cover.empty() && transitions.empty() &&
           !chronon_unit.has_value();
  }
};

/// Structural, order-insensitive equality (sets compared as sorted values).
bool operator==(const Schema& a, const Schema& b);
inline bool operator!=(const Schema& a, const Schema& b) { return !(a == b); }

/// Unvalidated declarations, as produced by the parser or built by hand.
/// Containers mirror Schema; nothing is checked until build_schema.
struct RawSchema {
  std::vector<ClassDecl> classes;
  std::vector<RelDecl> relationships;
  std::vector<std::pair<std::string, std::string>> isa_c;
  std::vector<std::pair<std::string, std::string>> isa_r;
  std::vector<std::pair<RoleRef, RoleRef>> isa_u;
  std::vector<Group> disj_c;
  std::vector<Group> disj_r;
  std::vector<Group> cover;
  std::vector<TransitionConstraint> transitions;
  std::optional<std::string> chronon_unit;
};

struct BuildResult {
  std::optional<Schema> schema;  // set iff diagnostics has no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return schema.has_value(); }
};

/// Validates raw declarations against the model invariants: name uniqueness
/// per namespace, reference closure, arity compatibility, cardinality sanity,
/// transition well-formedness, id marking. Unmarked id attributes are
/// promoted to snapshot; duplicate transition constraints collapse.
BuildResult build_schema(RawSchema raw);

/// player(R, U_i) = C_i. Throws Error("unknown-relationship"/"unknown-role").
const std::string& player(const Schema& schema, const std::string& rel,
                          const std::string& role);

/// role(R, C) — every role of R played by the class; size > 1 for rings.
std::set<std::string> roles_of(const Schema& schema, const std::string& rel,
                               const std::string& class_name);

/// "Class.attr" helpers.
std::string qualify(const std::string& class_name, const std::string& attr);
std::pair<std::string, std::string> split_qualified(
    const std::string& qualified);

}  // namespace trend

#include "trend/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace trend {

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  out << (d.severity == Severity::Error ? "error" : "warning");
  out << "[" << d.code << "]";
  if (d.span) out << " " << d.span->line << ":" << d.span->column;
  out << ": " << d.message;
  return out.str();
}

const AttrDecl* ClassDecl::find_attribute(const std::string& attr) const {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

const RoleDecl* RelDecl::find_role(const std::string& role) const {
  for (const auto& r : roles)
    if (r.name == role) return &r;
  return nullptr;
}

std::optional<std::size_t> RelDecl::role_position(
    const std::string& role) const {
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i].name == role) return i;
  return std::nullopt;
}

std::string transition_keyword(const TransitionConstraint& c) {
  if (c.kind == TransitionKind::Frozen) return "FRZ";
  std::string word;
  if (c.persistent) word += 'P';
  if (c.modality == Modality::Mandatory) word += 'M';
  if (c.quantitative()) word += 'Q';
  word += (c.kind == TransitionKind::Extension) ? "EXT" : "CHG";
  if (c.tense == Tense::Past)
    for (auto& ch : word)
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (c.subject == SubjectKind::Relationship) word += 'R';
  if (c.subject == SubjectKind::Attribute) word += 'A';
  return word;
}

const ClassDecl* Schema::find_class(const std::string& name) const {
  for (const auto& c : classes)
    if (c.name == name) return &c;
  return nullptr;
}

const RelDecl* Schema::find_relationship(const std::string& name) const {
  for (const auto& r : relationships)
    if (r.name == name) return &r;
  return nullptr;
}

const AttrDecl* Schema::find_attribute(const std::string& qualified,
                                       const ClassDecl** owner) const {
  auto [cls, attr] = split_qualified(qualified);
  const ClassDecl* c = find_class(cls);
  if (!c) return nullptr;
  const AttrDecl* a = c->find_attribute(attr);
  if (a && owner) *owner = c;
  return a;
}

const AttrDecl* Schema::id_attribute(const std::string& class_name) const {
  const ClassDecl* c = find_class(class_name);
  if (!c) return nullptr;
  for (const auto& a : c->attributes)
    if (a.is_id) return &a;
  return nullptr;
}

std::string qualify(const std::string& class_name, const std::string& attr) {
  return class_name + "." + attr;
}

std::pair<std::string, std::string> split_qualified(
    const std::string& qualified) {
  auto dot = qualified.find('.');
  if (dot == std::string::npos) return {qualified, ""};
  return {qualified.substr(0, dot), qualified.substr(dot + 1)};
}

namespace {

// Canonical form used by structural equality: every set-like container
// sorted, declaration order erased.
struct CanonicalSchema {
  std::vector<ClassDecl> classes;
  std::vector<RelDecl> relationships;
  std::vector<std::pair<std::string, std::string>> isa_c, isa_r;
  std::vector<std::pair<RoleRef, RoleRef>> isa_u;
  std::vector<Group> disj_c, disj_r, cover;
  std::vector<TransitionConstraint> transitions;
  std::optional<std::string> chronon_unit;

  friend bool operator==(const CanonicalSchema&,
                         const CanonicalSchema&) = default;
};

Group sorted_group(Group g) {
  std::sort(g.members.begin(), g.members.end());
  return g;
}

CanonicalSchema canonicalize(const Schema& s) {
  CanonicalSchema c;
  c.classes = s.classes;
  for (auto& cls : c.classes)
    std::sort(cls.attributes.begin(), cls.attributes.end());
  std::sort(c.classes.begin(), c.classes.end(),
            [](const ClassDecl& a, const ClassDecl& b) {
              return a.name < b.name;
            });
  c.relationships = s.relationships;  // role order stays: positions matter
  std::sort(c.relationships.begin(), c.relationships.end(),
            [](const RelDecl& a, const RelDecl& b) { return a.name < b.name; });
  c.isa_c = s.isa_c;
  std::sort(c.isa_c.begin(), c.isa_c.end());
  c.isa_r = s.isa_r;
  std::sort(c.isa_r.begin(), c.isa_r.end());
  c.isa_u = s.isa_u;
  std::sort(c.isa_u.begin(), c.isa_u.end());
  for (const auto& g : s.disj_c) c.disj_c.push_back(sorted_group(g));
  std::sort(c.disj_c.begin(), c.disj_c.end());
  for (const auto& g : s.disj_r) c.disj_r.push_back(sorted_group(g));
  std::sort(c.disj_r.begin(), c.disj_r.end());
  for (const auto& g : s.cover) c.cover.push_back(sorted_group(g));
  std::sort(c.cover.begin(), c.cover.end());
  c.transitions = s.transitions;
  std::sort(c.transitions.begin(), c.transitions.end());
  c.chronon_unit = s.chronon_unit;
  return c;
}

}  // namespace

bool operator==(const Schema& a, const Schema& b) {
  return canonicalize(a) == canonicalize(b);
}

namespace {

class Validator {
public:
  explicit Validator(RawSchema raw) : raw_(std::move(raw)) {}

  BuildResult run() {
    check_class_decls();
    check_rel_decls();
    check_isa();
    check_groups();
    check_transitions();
    BuildResult result;
    result.diagnostics = std::move(diags_);
    for (const auto& d : result.diagnostics)
      if (d.severity == Severity::Error) return result;
    Schema schema;
    schema.classes = std::move(raw_.classes);
    schema.relationships = std::move(raw_.relationships);
    schema.isa_c = std::move(raw_.isa_c);
    schema.isa_r = std::move(raw_.isa_r);
    schema.isa_u = std::move(raw_.isa_u);
    schema.disj_c = std::move(raw_.disj_c);
    schema.disj_r = std::move(raw_.disj_r);
    schema.cover = std::move(raw_.cover);
    dedupe_transitions();
    schema.transitions = std::move(raw_.transitions);
    schema.chronon_unit = std::move(raw_.chronon_unit);
    result.schema = std::move(schema);
    return result;
  }

private:
  void error(std::string code, std::string message) {
    diags_.push_back({std::move(code), std::move(message), std::nullopt,
                      Severity::Error});
  }

  void check_class_decls() {
    std::unordered_set<std::string> seen;
    for (auto& c : raw_.classes) {
      if (!seen.insert(c.name).second)
        error("duplicate-name", "class '" + c.name + "' declared twice");
      std::unordered_set<std::string> attrs;
      int ids = 0;
      for (auto& a : c.attributes) {
        if (!attrs.insert(a.name).second)
          error("duplicate-name", "attribute '" + qualify(c.name, a.name) +
                                      "' declared twice");
        if (a.card.max && a.card.min > *a.card.max)
          error("invalid-cardinality",
                "attribute '" + qualify(c.name, a.name) + "' has min > max");
        if (a.is_id) {
          ++ids;
          if (a.marking == Temporality::Temporary)
            error("invalid-id", "identifier attribute '" +
                                    qualify(c.name, a.name) +
                                    "' cannot be temporal");
          else
            a.marking = Temporality::Snapshot;  // id implies snapshot
        }
      }
      if (ids > 1)
        error("invalid-id", "class '" + c.name +
                                "' declares more than one identifier");
    }
  }

  void check_rel_decls() {
    std::unordered_set<std::string> seen;
    for (const auto& r : raw_.relationships) {
      if (!seen.insert(r.name).second)
        error("duplicate-name",
              "relationship '" + r.name + "' declared twice");
      if (r.roles.size() < 2)
        error("arity-mismatch",
              "relationship '" + r.name + "' needs at least two roles");
      std::unordered_set<std::string> roles;
      for (const auto& role : r.roles) {
        if (!roles.insert(role.name).second)
          error("duplicate-name", "role '" + r.name + "." + role.name +
                                      "' declared twice");
        require_class(role.player,
                      "role '" + r.name + "." + role.name + "'");
        if (role.card.max && role.card.min > *role.card.max)
          error("invalid-cardinality",
                "role '" + r.name + "." + role.name + "' has min > max");
      }
    }
  }

  void require_class(const std::string& name, const std::string& where) {
    for (const auto& c : raw_.classes)
      if (c.name == name) return;
    error("dangling-reference",
          where + " references undeclared class '" + name + "'");
  }

  const RelDecl* require_rel(const std::string& name,
                             const std::string& where) {
    for (const auto& r : raw_.relationships)
      if (r.name == name) return &r;
    error("dangling-reference",
          where + " references undeclared relationship '" + name + "'");
    return nullptr;
  }

  void require_attr(const std::string& qualified, const std::string& where) {
    auto [cls, attr] = split_qualified(qualified);
    if (attr.empty()) {
      error("dangling-reference",
            where + " needs a qualified Class.attr name, got '" + qualified +
                "'");
      return;
    }
    for (const auto& c : raw_.classes)
      if (c.name == cls) {
        for (const auto& a : c.attributes)
          if (a.name == attr) return;
        error("dangling-reference", where + " references undeclared attribute '" +
                                        qualified + "'");
        return;
      }
    error("dangling-reference",
          where + " references undeclared class '" + cls + "'");
  }

  void check_isa() {
    for (const auto& [sub, super] : raw_.isa_c) {
      require_class(sub, "isa");
      require_class(super, "isa");
    }
    for (const auto& [sub, super] : raw_.isa_r) {
      const RelDecl* a = require_rel(sub, "isar");
      const RelDecl* b = require_rel(super, "isar");
      if (a && b && a->roles.size() != b->roles.size())
        error("arity-mismatch", "isar between '" + sub + "' (arity " +
                                    std::to_string(a->roles.size()) +
                                    ") and '" + super + "' (arity " +
                                    std::to_string(b->roles.size()) + ")");
    }
    for (const auto& [u1, u2] : raw_.isa_u) {
      const RelDecl* a = require_rel(u1.rel, "isau");
      const RelDecl* b = require_rel(u2.rel, "isau");
      if (a && !a->find_role(u1.role))
        error("dangling-reference", "isau references undeclared role '" +
                                        u1.rel + "." + u1.role + "'");
      if (b && !b->find_role(u2.role))
        error("dangling-reference", "isau references undeclared role '" +
                                        u2.rel + "." + u2.role + "'");
    }
  }

  void check_groups() {
    auto check = [&](const std::vector<Group>& groups, bool rel,
                     const char* what) {
      for (const auto& g : groups) {
        if (rel) {
          require_rel(g.super, what);
          for (const auto& m : g.members) require_rel(m, what);
        } else {
          require_class(g.super, what);
          for (const auto& m : g.members) require_class(m, what);
        }
        if (g.members.empty())
          error("invalid-group", std::string(what) + " group over '" +
                                     g.super + "' has no members");
      }
    };
    check(raw_.disj_c, false, "disjoint");
    check(raw_.disj_r, true, "disjointr");
    check(raw_.cover, false, "cover");
  }

  void check_transitions() {
    for (const auto& t : raw_.transitions) {
      const std::string word = transition_keyword(t);
      if (t.offset && *t.offset < 1)
        error("invalid-transition",
              word + " offset must be a positive chronon count");
      switch (t.subject) {
        case SubjectKind::Class:
          require_class(t.source, word);
          require_class(t.target, word);
          break;
        case SubjectKind::Relationship: {
          const RelDecl* a = require_rel(t.source, word);
          const RelDecl* b = require_rel(t.target, word);
          if (a && b && a->roles.size() != b->roles.size())
            error("arity-mismatch", word + " between '" + t.source +
                                        "' and '" + t.target +
                                        "' of different arities");
          break;
        }
        case SubjectKind::Attribute:
          require_attr(t.source, word);
          if (t.kind != TransitionKind::Frozen) require_attr(t.target, word);
          break;
      }
      if (t.kind == TransitionKind::Frozen) {
        if (t.subject != SubjectKind::Attribute)
          error("invalid-transition", "FRZ applies to attributes only");
        if (t.source != t.target)
          error("invalid-transition", "FRZ has a single endpoint");
        if (t.modality == Modality::Mandatory || t.persistent || t.offset ||
            t.tense == Tense::Past)
          error("invalid-transition",
                "FRZ takes no tense, modality, offset or persistence");
        continue;
      }
      if (t.source == t.target)
        error("invalid-transition",
              word + " must connect two distinct elements");
      if (t.subject == SubjectKind::Attribute) {
        if (t.kind != TransitionKind::Change)
          error("invalid-transition",
                "attribute transitions support change (chgA) only");
        if (t.tense != Tense::Future)
          error("invalid-transition",
                "attribute transitions are future-tense only");
        if (t.modality != Modality::Optional)
          error("invalid-transition",
                "attribute transitions are optional only");
      }
    }
  }

  void dedupe_transitions() {
    std::vector<TransitionConstraint> unique;
    for (const auto& t : raw_.transitions)
      if (std::find(unique.begin(), unique.end(), t) == unique.end())
        unique.push_back(t);
    raw_.transitions = std::move(unique);
  }

  RawSchema raw_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

BuildResult build_schema(RawSchema raw) {
  return Validator(std::move(raw)).run();
}

const std::string& player(const Schema& schema, const std::string& rel,
                          const std::string& role) {
  const RelDecl* r = schema.find_relationship(rel);
  if (!r) throw Error("unknown-relationship", "unknown relationship '" + rel + "'");
  const RoleDecl* decl = r->find_role(role);
  if (!decl)
    throw Error("unknown-role",
                "relationship '" + rel + "' has no role '" + role + "'");
  return decl->player;
}

std::set<std::string> roles_of(const Schema& schema, const std::string& rel,
                               const std::string& class_name) {
  const RelDecl* r = schema.find_relationship(rel);
  if (!r) throw Error("unknown-relationship", "unknown relationship '" + rel + "'");
  std::set<std::string> result;
  for (const auto& role : r->roles)
    if (role.player == class_name) result.insert(role.name);
  return result;
}

}  // namespace trend

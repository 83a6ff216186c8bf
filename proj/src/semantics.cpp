#include "trend/semantics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace trend {

namespace {

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i];
  }
  return s + ")";
}

std::string pair_text(const AttrPair& a) {
  return "(" + a.first + "," + a.second + ")";
}

// Uniform membership view over the three extension kinds, so the
// transition formulas are written once.
template <typename Inst>
struct Members;

template <>
struct Members<ObjectId> {
  static bool in(const TemporalState& s, const std::string& name, int t,
                 const ObjectId& o) {
    return s.in_class(name, t, o);
  }
};
template <>
struct Members<Tuple> {
  static bool in(const TemporalState& s, const std::string& name, int t,
                 const Tuple& r) {
    return s.in_rel(name, t, r);
  }
};
template <>
struct Members<AttrPair> {
  static bool in(const TemporalState& s, const std::string& name, int t,
                 const AttrPair& a) {
    return s.in_attr(name, t, a);
  }
};

// Future-form condition at t over step n: the shape every obligation
// witnesses, quantified or not.
template <typename Inst>
bool future_condition(const TemporalState& s, TransitionKind kind,
                      const std::string& src, const std::string& tgt,
                      unsigned n, const Inst& x, int t) {
  const int tn = t + static_cast<int>(n);
  if (!s.in_window(t) || !s.in_window(tn)) return false;
  auto in = [&](const std::string& name, int at) {
    return Members<Inst>::in(s, name, at, x);
  };
  if (kind == TransitionKind::Extension)
    return in(src, t) && !in(tgt, t) && in(tgt, tn);
  return in(src, t) && !in(tgt, t) && in(tgt, tn) && !in(src, tn);
}

// Past-form condition: the unquantified formulas with t-1 replaced by t-n.
template <typename Inst>
bool past_condition(const TemporalState& s, TransitionKind kind,
                    const std::string& src, const std::string& tgt,
                    unsigned n, const Inst& x, int t) {
  const int tn = t - static_cast<int>(n);
  if (!s.in_window(t) || !s.in_window(tn)) return false;
  auto in = [&](const std::string& name, int at) {
    return Members<Inst>::in(s, name, at, x);
  };
  if (kind == TransitionKind::Extension)
    return in(src, t) && in(tgt, t) && !in(tgt, tn);
  return !in(src, t) && in(tgt, t) && in(src, tn) && !in(tgt, tn);
}

template <typename Inst>
bool condition(const TemporalState& s, const TransitionConstraint& c,
               const Inst& x, int t) {
  if (c.tense == Tense::Future)
    return future_condition(s, c.kind, c.source, c.target, c.step(), x, t);
  return past_condition(s, c.kind, c.source, c.target, c.step(), x, t);
}

// Attribute change: unquantified chgA uses an existential lookahead; the
// quantified form pins t+n.
bool chga_condition(const TemporalState& s, const TransitionConstraint& c,
                    const AttrPair& a, int t) {
  if (!s.in_window(t)) return false;
  if (!s.in_attr(c.source, t, a) || s.in_attr(c.target, t, a)) return false;
  if (c.quantitative()) {
    const int tn = t + static_cast<int>(c.step());
    return s.in_window(tn) && s.in_attr(c.target, tn, a) &&
           !s.in_attr(c.source, tn, a);
  }
  for (int v = t + 1; v < s.horizon; ++v)
    if (s.in_attr(c.target, v, a) && !s.in_attr(c.source, v, a)) return true;
  return false;
}

bool frozen_condition(const TemporalState& s, const std::string& attr,
                      const AttrPair& a, int t) {
  if (!s.in_attr(attr, t, a)) return true;
  for (int v = t + 1; v < s.horizon; ++v)
    if (!s.in_attr(attr, v, a)) return false;
  return true;
}

template <typename Inst>
bool obligation_met(const TemporalState& s, const TransitionConstraint& c,
                    const Inst& x, int t, SemanticsVariant variant) {
  auto in = [&](const std::string& name, int at) {
    return Members<Inst>::in(s, name, at, x);
  };
  auto witness = [&](int at) {
    return future_condition(s, c.kind, c.source, c.target, c.step(), x, at);
  };
  if (c.tense == Tense::Future) {
    if (!in(c.source, t)) return true;
    for (int v = t + 1; v < s.horizon; ++v)
      if (witness(v)) return true;
    return false;
  }
  const std::string& trigger =
      variant == SemanticsVariant::TargetTriggered ? c.target : c.source;
  if (!in(trigger, t)) return true;
  for (int v = 0; v < t; ++v)
    if (witness(v)) return true;
  return false;
}

template <typename Inst>
bool persistence_met(const TemporalState& s, const TransitionConstraint& c,
                     const Inst& x, int t, int* failed_at = nullptr) {
  if (!condition(s, c, x, t)) return true;
  for (int v = t + 1; v < s.horizon; ++v)
    if (!Members<Inst>::in(s, c.target, v, x)) {
      if (failed_at) *failed_at = v;
      return false;
    }
  return true;
}

std::string persistence_rule(const TransitionConstraint& c) {
  std::string base = c.kind == TransitionKind::Extension ? "EXT" : "CHG";
  if (c.subject == SubjectKind::Relationship) base += "R";
  return "P" + base;
}

class Checker {
public:
  Checker(const Schema& schema, const TemporalState& state,
          SemanticsVariant variant)
      : schema_(schema), state_(state), variant_(variant) {}

  std::vector<Violation> run() {
    class_rules();
    rel_rules();
    attr_rules();
    id_rules();
    group_rules();
    isa_rules();
    card_rules();
    transition_rules();
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

private:
  void violate(std::string rule, std::vector<std::string> elements,
               std::vector<int> times, std::string message) {
    out_.push_back({std::move(rule), std::move(elements), std::move(times),
                    std::move(message)});
  }

  void class_rules() {
    for (const auto& c : schema_.classes) {
      if (c.temporality == Temporality::Mixed) continue;
      for (int t = 0; t < state_.horizon; ++t)
        for (const auto& o : state_.class_ext(c.name, t)) {
          if (c.temporality == Temporality::Snapshot) {
            for (int v = 0; v < state_.horizon; ++v)
              if (!state_.in_class(c.name, v, o)) {
                violate("snapshot-class", {c.name, o}, {t, v},
                        "'" + o + "' leaves snapshot class '" + c.name +
                            "' at t=" + std::to_string(v));
                break;
              }
          } else {  // Temporary
            bool absent_somewhere = false;
            for (int v = 0; v < state_.horizon && !absent_somewhere; ++v)
              absent_somewhere = v != t && !state_.in_class(c.name, v, o);
            if (!absent_somewhere)
              violate("temporal-class", {c.name, o}, {t},
                      "'" + o + "' never leaves temporal class '" + c.name +
                          "'");
          }
        }
    }
  }

  void rel_rules() {
    for (const auto& r : schema_.relationships) {
      for (int t = 0; t < state_.horizon; ++t)
        for (const auto& tuple : state_.rel_ext(r.name, t)) {
          for (std::size_t i = 0; i < r.roles.size(); ++i)
            if (!state_.in_class(r.roles[i].player, t, tuple[i]))
              violate("rel-typing",
                      {r.name, r.roles[i].name, tuple[i]}, {t},
                      "player of '" + r.name + "." + r.roles[i].name +
                          "' is outside '" + r.roles[i].player + "'");
          if (r.temporality == Temporality::Snapshot) {
            for (int v = 0; v < state_.horizon; ++v)
              if (!state_.in_rel(r.name, v, tuple)) {
                violate("snapshot-rel", {r.name, tuple_text(tuple)}, {t, v},
                        "tuple leaves snapshot relationship '" + r.name +
                            "' at t=" + std::to_string(v));
                break;
              }
          } else if (r.temporality == Temporality::Temporary) {
            bool absent = false;
            for (int v = 0; v < state_.horizon && !absent; ++v)
              absent = v != t && !state_.in_rel(r.name, v, tuple);
            if (!absent)
              violate("temporal-rel", {r.name, tuple_text(tuple)}, {t},
                      "tuple never leaves temporal relationship '" + r.name +
                          "'");
          }
        }
    }
  }

  void attr_rules() {
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        const std::string q = qualify(c.name, a.name);
        if (a.marking == Temporality::Mixed) continue;
        for (int t = 0; t < state_.horizon; ++t) {
          // Global A^S / A^T bullets over every pair.
          for (const auto& pair : state_.attr_ext(q, t)) {
            if (a.marking == Temporality::Snapshot) {
              for (int v = 0; v < state_.horizon; ++v)
                if (!state_.in_attr(q, v, pair)) {
                  violate("snapshot-attr", {q, pair_text(pair)}, {t, v},
                          "pair leaves snapshot attribute '" + q + "' at t=" +
                              std::to_string(v));
                  break;
                }
            } else {
              bool absent = false;
              for (int v = 0; v < state_.horizon && !absent; ++v)
                absent = v != t && !state_.in_attr(q, v, pair);
              if (!absent)
                violate("temporal-attr", {q, pair_text(pair)}, {t},
                        "pair never leaves temporal attribute '" + q + "'");
            }
          }
          // Per-class guarded s/t bullets (pairs of class members).
          for (const auto& pair : state_.attr_ext(q, t)) {
            if (!state_.in_class(c.name, t, pair.first)) continue;
            if (a.marking == Temporality::Snapshot) {
              for (int v = 0; v < state_.horizon; ++v)
                if (!state_.in_attr(q, v, pair)) {
                  violate("attr-s", {c.name, q, pair_text(pair)}, {t, v},
                          "snapshot attribute pair of a '" + c.name +
                              "' member is missing at t=" + std::to_string(v));
                  break;
                }
            } else {
              bool absent = false;
              for (int v = 0; v < state_.horizon && !absent; ++v)
                absent = v != t && !state_.in_attr(q, v, pair);
              if (!absent)
                violate("attr-t", {c.name, q, pair_text(pair)}, {t},
                        "temporal attribute pair of a '" + c.name +
                            "' member never lapses");
            }
          }
        }
      }
  }

  void id_rules() {
    for (const auto& c : schema_.classes) {
      const AttrDecl* id = nullptr;
      for (const auto& a : c.attributes)
        if (a.is_id) id = &a;
      if (!id) continue;
      const std::string q = qualify(c.name, id->name);
      for (int t = 0; t < state_.horizon; ++t) {
        // Per-value uniqueness among class members.
        std::map<Value, std::vector<ObjectId>> holders;
        for (const auto& [o, v] : state_.attr_ext(q, t))
          if (state_.in_class(c.name, t, o)) holders[v].push_back(o);
        for (const auto& [v, os] : holders)
          if (os.size() > 1)
            violate("id", {c.name, q, v}, {t},
                    "identifier value '" + v + "' shared by " +
                        std::to_string(os.size()) + " members of '" + c.name +
                        "'");
        // Exactly one eternal value per member.
        for (const auto& o : state_.class_ext(c.name, t)) {
          int eternal = 0;
          for (const auto& [obj, v] : state_.attr_ext(q, t)) {
            if (obj != o) continue;
            bool always = true;
            for (int w = 0; w < state_.horizon && always; ++w)
              always = state_.in_attr(q, w, {obj, v});
            if (always) ++eternal;
          }
          if (eternal != 1)
            violate("id", {c.name, q, o}, {t},
                    "'" + o + "' must hold exactly one unchanging '" + q +
                        "' value, has " + std::to_string(eternal));
        }
      }
    }
  }

  void group_rules() {
    for (const auto& g : schema_.disj_c)
      for (int t = 0; t < state_.horizon; ++t) {
        for (const auto& m : g.members)
          for (const auto& o : state_.class_ext(m, t))
            if (!state_.in_class(g.super, t, o))
              violate("disj_C", {m, g.super, o}, {t},
                      "'" + o + "' is in '" + m + "' but not in '" + g.super +
                          "'");
        for (std::size_t i = 0; i < g.members.size(); ++i)
          for (std::size_t j = i + 1; j < g.members.size(); ++j)
            for (const auto& o : state_.class_ext(g.members[i], t))
              if (state_.in_class(g.members[j], t, o))
                violate("disj_C", {g.members[i], g.members[j], o}, {t},
                        "'" + o + "' is in disjoint classes '" + g.members[i] +
                            "' and '" + g.members[j] + "'");
      }
    for (const auto& g : schema_.disj_r)
      for (int t = 0; t < state_.horizon; ++t) {
        for (const auto& m : g.members)
          for (const auto& tuple : state_.rel_ext(m, t))
            if (!state_.in_rel(g.super, t, tuple))
              violate("disj_R", {m, g.super, tuple_text(tuple)}, {t},
                      "tuple in '" + m + "' missing from '" + g.super + "'");
        for (std::size_t i = 0; i < g.members.size(); ++i)
          for (std::size_t j = i + 1; j < g.members.size(); ++j)
            for (const auto& tuple : state_.rel_ext(g.members[i], t))
              if (state_.in_rel(g.members[j], t, tuple))
                violate("disj_R",
                        {g.members[i], g.members[j], tuple_text(tuple)}, {t},
                        "tuple in disjoint relationships '" + g.members[i] +
                            "' and '" + g.members[j] + "'");
      }
    for (const auto& g : schema_.cover)
      for (int t = 0; t < state_.horizon; ++t) {
        for (const auto& m : g.members)
          for (const auto& o : state_.class_ext(m, t))
            if (!state_.in_class(g.super, t, o))
              violate("cover", {m, g.super, o}, {t},
                      "'" + o + "' is in '" + m + "' but not in '" + g.super +
                          "'");
        for (const auto& o : state_.class_ext(g.super, t)) {
          bool covered = false;
          for (const auto& m : g.members)
            covered = covered || state_.in_class(m, t, o);
          if (!covered)
            violate("cover", {g.super, o}, {t},
                    "'" + o + "' is in '" + g.super +
                        "' but in none of its covering classes");
        }
      }
  }

  void isa_rules() {
    for (const auto& [sub, super] : schema_.isa_c)
      for (int t = 0; t < state_.horizon; ++t)
        for (const auto& o : state_.class_ext(sub, t))
          if (!state_.in_class(super, t, o))
            violate("isa_C", {sub, super, o}, {t},
                    "'" + o + "' is in '" + sub + "' but not in '" + super +
                        "'");
    for (const auto& [sub, super] : schema_.isa_r)
      for (int t = 0; t < state_.horizon; ++t)
        for (const auto& tuple : state_.rel_ext(sub, t))
          if (!state_.in_rel(super, t, tuple))
            violate("isa_R", {sub, super, tuple_text(tuple)}, {t},
                    "tuple in '" + sub + "' missing from '" + super + "'");
    for (const auto& [u1, u2] : schema_.isa_u) {
      const RelDecl* r1 = schema_.find_relationship(u1.rel);
      const RelDecl* r2 = schema_.find_relationship(u2.rel);
      auto p1 = r1->role_position(u1.role);
      auto p2 = r2->role_position(u2.role);
      for (int t = 0; t < state_.horizon; ++t) {
        std::set<ObjectId> upper;
        for (const auto& tuple : state_.rel_ext(u2.rel, t))
          upper.insert(tuple[*p2]);
        for (const auto& tuple : state_.rel_ext(u1.rel, t))
          if (!upper.count(tuple[*p1]))
            violate("isa_U",
                    {u1.rel + "." + u1.role, u2.rel + "." + u2.role,
                     tuple[*p1]},
                    {t},
                    "'" + tuple[*p1] + "' plays '" + u1.role +
                        "' without playing '" + u2.role + "'");
      }
    }
  }

  void card_rules() {
    for (const auto& r : schema_.relationships)
      for (std::size_t i = 0; i < r.roles.size(); ++i) {
        const RoleDecl& role = r.roles[i];
        if (role.card == kDefaultRoleCard) continue;
        for (int t = 0; t < state_.horizon; ++t)
          for (const auto& o : state_.class_ext(role.player, t)) {
            unsigned count = 0;
            for (const auto& tuple : state_.rel_ext(r.name, t))
              if (tuple[i] == o) ++count;
            if (count < role.card.min || (role.card.max && count > *role.card.max))
              violate("card_R", {role.player, r.name, role.name, o}, {t},
                      "'" + o + "' plays '" + r.name + "." + role.name +
                          "' " + std::to_string(count) + " times");
          }
      }
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        if (a.card.min == 0 && !a.card.max) continue;
        const std::string q = qualify(c.name, a.name);
        for (int t = 0; t < state_.horizon; ++t)
          for (const auto& o : state_.class_ext(c.name, t)) {
            unsigned count = 0;
            for (const auto& pair : state_.attr_ext(q, t))
              if (pair.first == o) ++count;
            if (count < a.card.min || (a.card.max && count > *a.card.max))
              violate("card_A", {c.name, q, o}, {t},
                      "'" + o + "' carries " + std::to_string(count) +
                          " values of '" + q + "'");
          }
      }
  }

  template <typename Inst>
  void mandatory_rule(const TransitionConstraint& c,
                      const std::set<Inst>& (*ext)(const TemporalState&,
                                                   const std::string&, int),
                      std::string (*text)(const Inst&)) {
    const std::string rule = transition_keyword(c);
    const std::string& trigger =
        c.tense == Tense::Future
            ? c.source
            : (variant_ == SemanticsVariant::TargetTriggered ? c.target
                                                             : c.source);
    for (int t = 0; t < state_.horizon; ++t)
      for (const auto& x : ext(state_, trigger, t))
        if (!obligation_met(state_, c, x, t, variant_))
          violate(rule, {c.source, c.target, text(x)}, {t},
                  "obligation of " + rule + " " + c.source + "->" + c.target +
                      " not met for " + text(x));
  }

  template <typename Inst>
  void persistence_rule_for(const TransitionConstraint& c,
                            const std::set<Inst>& (*ext)(const TemporalState&,
                                                         const std::string&,
                                                         int),
                            std::string (*text)(const Inst&)) {
    for (int t = 0; t < state_.horizon; ++t) {
      // Candidates: instances in the source (future) or target (past) at t.
      const std::string& pool =
          c.tense == Tense::Future ? c.source : c.target;
      for (const auto& x : ext(state_, pool, t)) {
        int failed = -1;
        if (!persistence_met(state_, c, x, t, &failed))
          violate(persistence_rule(c), {c.source, c.target, text(x)},
                  {t, failed},
                  text(x) + " leaves '" + c.target + "' at t=" +
                      std::to_string(failed) + " after transitioning at t=" +
                      std::to_string(t));
      }
    }
  }

  void transition_rules() {
    static const auto class_ext = +[](const TemporalState& s,
                                      const std::string& n, int t)
        -> const std::set<ObjectId>& { return s.class_ext(n, t); };
    static const auto rel_ext = +[](const TemporalState& s,
                                    const std::string& n, int t)
        -> const std::set<Tuple>& { return s.rel_ext(n, t); };
    static const auto obj_text = +[](const ObjectId& o) { return o; };
    static const auto tup_text = +[](const Tuple& t) { return tuple_text(t); };

    for (const auto& c : schema_.transitions) {
      if (c.kind == TransitionKind::Frozen) {
        for (int t = 0; t < state_.horizon; ++t)
          for (const auto& pair : state_.attr_ext(c.source, t))
            for (int v = t + 1; v < state_.horizon; ++v)
              if (!state_.in_attr(c.source, v, pair)) {
                violate("FRZ", {c.source, pair_text(pair)}, {t, v},
                        "frozen pair " + pair_text(pair) + " of '" + c.source +
                            "' vanishes at t=" + std::to_string(v));
                break;
              }
        continue;
      }
      if (c.subject == SubjectKind::Class) {
        if (c.modality == Modality::Mandatory)
          mandatory_rule<ObjectId>(c, class_ext, obj_text);
        if (c.persistent) persistence_rule_for<ObjectId>(c, class_ext, obj_text);
      } else if (c.subject == SubjectKind::Relationship) {
        if (c.modality == Modality::Mandatory)
          mandatory_rule<Tuple>(c, rel_ext, tup_text);
        if (c.persistent) persistence_rule_for<Tuple>(c, rel_ext, tup_text);
      }
      // Optional, non-persistent transitions license behaviour only.
    }
  }

  const Schema& schema_;
  const TemporalState& state_;
  SemanticsVariant variant_;
  std::vector<Violation> out_;
};

}  // namespace

std::string format_violation(const Violation& v) {
  std::ostringstream out;
  out << v.rule << " [";
  for (std::size_t i = 0; i < v.elements.size(); ++i) {
    if (i) out << ", ";
    out << v.elements[i];
  }
  out << "] @";
  for (std::size_t i = 0; i < v.times.size(); ++i) {
    if (i) out << ",";
    out << "t=" << v.times[i];
  }
  out << ": " << v.message;
  return out.str();
}

std::vector<Violation> check_state(const Schema& schema,
                                   const TemporalState& state,
                                   SemanticsVariant variant) {
  ensure_well_formed(schema, state);
  return Checker(schema, state, variant).run();
}

bool transition_holds(const Schema& schema, const TemporalState& state,
                      const TransitionConstraint& constraint,
                      const SubjectInstance& instance, int t) {
  (void)schema;
  switch (constraint.subject) {
    case SubjectKind::Class: {
      const auto* o = std::get_if<ObjectId>(&instance);
      if (!o) throw Error("kind-mismatch", "class transition needs an object");
      return condition(state, constraint, *o, t);
    }
    case SubjectKind::Relationship: {
      const auto* tup = std::get_if<Tuple>(&instance);
      if (!tup)
        throw Error("kind-mismatch", "relationship transition needs a tuple");
      return condition(state, constraint, *tup, t);
    }
    case SubjectKind::Attribute: {
      const auto* pair = std::get_if<AttrPair>(&instance);
      if (!pair)
        throw Error("kind-mismatch",
                    "attribute transition needs an (object, value) pair");
      if (constraint.kind == TransitionKind::Frozen)
        return frozen_condition(state, constraint.source, *pair, t);
      return chga_condition(state, constraint, *pair, t);
    }
  }
  return false;
}

bool mandatory_obligation_met(const Schema& schema, const TemporalState& state,
                              const TransitionConstraint& constraint,
                              const SubjectInstance& instance, int t,
                              SemanticsVariant variant) {
  (void)schema;
  if (constraint.modality != Modality::Mandatory)
    throw Error("not-mandatory", "constraint " +
                                     transition_keyword(constraint) +
                                     " is not mandatory");
  bool met = false;
  if (constraint.subject == SubjectKind::Class) {
    const auto* o = std::get_if<ObjectId>(&instance);
    if (!o) throw Error("kind-mismatch", "class transition needs an object");
    met = obligation_met(state, constraint, *o, t, variant);
    if (met && constraint.persistent)
      met = persistence_met(state, constraint, *o, t);
  } else if (constraint.subject == SubjectKind::Relationship) {
    const auto* tup = std::get_if<Tuple>(&instance);
    if (!tup)
      throw Error("kind-mismatch", "relationship transition needs a tuple");
    met = obligation_met(state, constraint, *tup, t, variant);
    if (met && constraint.persistent)
      met = persistence_met(state, constraint, *tup, t);
  } else {
    throw Error("kind-mismatch", "attribute transitions are never mandatory");
  }
  return met;
}

}  // namespace trend

#include "naive_checker.hpp"

#include <algorithm>
#include <set>

namespace trend::testgen {

namespace {

// Everything below quantifies explicitly over candidate elements and all
// time points, reading the formulas off the semantics bullets one by one.

std::string text_of(const Tuple& tuple) {
  std::string s = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ",";
    s += tuple[i];
  }
  return s + ")";
}

std::string text_of(const AttrPair& pair) {
  return "(" + pair.first + "," + pair.second + ")";
}

struct World {
  const Schema& schema;
  const TemporalState& state;
  int H;
  std::vector<ObjectId> objects;
  std::vector<Tuple> tuple_universe;    // any tuple seen anywhere
  std::vector<AttrPair> pair_universe;  // objects × declared values

  World(const Schema& s, const TemporalState& st)
      : schema(s), state(st), H(st.horizon), objects(st.objects) {
    std::set<Tuple> tuples;
    for (const auto& [rel, per_t] : st.relationships)
      for (const auto& ext : per_t)
        for (const auto& tuple : ext) tuples.insert(tuple);
    tuple_universe.assign(tuples.begin(), tuples.end());
    std::set<AttrPair> pairs;
    for (const auto& o : st.objects)
      for (const auto& [dom, values] : st.domains)
        for (const auto& v : values) pairs.insert({o, v});
    pair_universe.assign(pairs.begin(), pairs.end());
  }

  bool inC(const std::string& c, int t, const ObjectId& o) const {
    return t >= 0 && t < H && state.in_class(c, t, o);
  }
  bool inR(const std::string& r, int t, const Tuple& x) const {
    return t >= 0 && t < H && state.in_rel(r, t, x);
  }
  bool inA(const std::string& a, int t, const AttrPair& x) const {
    return t >= 0 && t < H && state.in_attr(a, t, x);
  }
};

struct Collector {
  std::set<NaiveFinding> found;
  void add(std::string rule, int t, std::string element) {
    found.insert({std::move(rule), t, std::move(element)});
  }
};

std::string text_element(const ObjectId& o) { return o; }
std::string text_element(const Tuple& t) { return text_of(t); }

template <typename In, typename Elem>
void transition_findings(const World& w, Collector& out,
                         const TransitionConstraint& c,
                         const std::vector<Elem>& universe, In in,
                         SemanticsVariant variant) {
  const unsigned n = c.step();
  auto fcond = [&](const Elem& x, int t) {
    const int tn = t + static_cast<int>(n);
    if (tn < 0 || tn >= w.H) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t, x) && !in(c.target, t, x) && in(c.target, tn, x);
    return in(c.source, t, x) && !in(c.target, t, x) && in(c.target, tn, x) &&
           !in(c.source, tn, x);
  };
  auto pcond = [&](const Elem& x, int t) {
    const int tn = t - static_cast<int>(n);
    if (tn < 0 || tn >= w.H) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t, x) && in(c.target, t, x) && !in(c.target, tn, x);
    return !in(c.source, t, x) && in(c.target, t, x) && in(c.source, tn, x) &&
           !in(c.target, tn, x);
  };
  if (c.modality == Modality::Mandatory) {
    const std::string& trigger =
        c.tense == Tense::Future
            ? c.source
            : (variant == SemanticsVariant::TargetTriggered ? c.target
                                                            : c.source);
    for (int t = 0; t < w.H; ++t)
      for (const auto& x : universe) {
        if (!in(trigger, t, x)) continue;
        bool witnessed = false;
        if (c.tense == Tense::Future) {
          for (int v = t + 1; v < w.H; ++v)
            if (fcond(x, v)) witnessed = true;
        } else {
          for (int v = 0; v < t; ++v)
            if (fcond(x, v)) witnessed = true;
        }
        if (!witnessed) out.add(transition_keyword(c), t, text_element(x));
      }
  }
  if (c.persistent) {
    std::string rule = std::string("P") +
                       (c.kind == TransitionKind::Extension ? "EXT" : "CHG") +
                       (c.subject == SubjectKind::Relationship ? "R" : "");
    for (int t = 0; t < w.H; ++t)
      for (const auto& x : universe) {
        const bool fired =
            c.tense == Tense::Future ? fcond(x, t) : pcond(x, t);
        if (!fired) continue;
        for (int v = t + 1; v < w.H; ++v)
          if (!in(c.target, v, x)) out.add(rule, t, text_element(x));
      }
  }
}

}  // namespace

std::vector<NaiveFinding> naive_check(const Schema& schema,
                                      const TemporalState& state,
                                      SemanticsVariant variant) {
  World w(schema, state);
  Collector out;

  for (const auto& [sub, super] : schema.isa_c)
    for (int t = 0; t < w.H; ++t)
      for (const auto& o : w.objects)
        if (w.inC(sub, t, o) && !w.inC(super, t, o)) out.add("isa_C", t, o);

  for (const auto& [sub, super] : schema.isa_r)
    for (int t = 0; t < w.H; ++t)
      for (const auto& x : w.tuple_universe)
        if (w.inR(sub, t, x) && !w.inR(super, t, x))
          out.add("isa_R", t, text_of(x));

  for (const auto& [u1, u2] : schema.isa_u) {
    const RelDecl* r1 = schema.find_relationship(u1.rel);
    const RelDecl* r2 = schema.find_relationship(u2.rel);
    const std::size_t p1 = *r1->role_position(u1.role);
    const std::size_t p2 = *r2->role_position(u2.role);
    for (int t = 0; t < w.H; ++t)
      for (const auto& o : w.objects) {
        bool plays1 = false, plays2 = false;
        for (const auto& x : w.tuple_universe) {
          if (x.size() == r1->arity() && w.inR(u1.rel, t, x) && x[p1] == o)
            plays1 = true;
          if (x.size() == r2->arity() && w.inR(u2.rel, t, x) && x[p2] == o)
            plays2 = true;
        }
        if (plays1 && !plays2) out.add("isa_U", t, o);
      }
  }

  for (const auto& r : schema.relationships) {
    for (int t = 0; t < w.H; ++t)
      for (const auto& x : w.tuple_universe) {
        if (x.size() != r.arity() || !w.inR(r.name, t, x)) continue;
        for (std::size_t i = 0; i < r.arity(); ++i)
          if (!w.inC(r.roles[i].player, t, x[i]))
            out.add("rel-typing", t, x[i]);
        if (r.temporality == Temporality::Snapshot) {
          for (int v = 0; v < w.H; ++v)
            if (!w.inR(r.name, v, x)) out.add("snapshot-rel", t, text_of(x));
        } else if (r.temporality == Temporality::Temporary) {
          bool absent = false;
          for (int v = 0; v < w.H; ++v)
            if (v != t && !w.inR(r.name, v, x)) absent = true;
          if (!absent) out.add("temporal-rel", t, text_of(x));
        }
      }
    for (std::size_t i = 0; i < r.roles.size(); ++i) {
      const RoleDecl& role = r.roles[i];
      if (role.card == kDefaultRoleCard) continue;
      for (int t = 0; t < w.H; ++t)
        for (const auto& o : w.objects) {
          if (!w.inC(role.player, t, o)) continue;
          unsigned k = 0;
          for (const auto& x : w.tuple_universe)
            if (x.size() == r.arity() && w.inR(r.name, t, x) && x[i] == o) ++k;
          if (k < role.card.min || (role.card.max && k > *role.card.max))
            out.add("card_R", t, o);
        }
    }
  }

  for (const auto& c : schema.classes) {
    for (int t = 0; t < w.H; ++t)
      for (const auto& o : w.objects) {
        if (!w.inC(c.name, t, o)) continue;
        if (c.temporality == Temporality::Snapshot) {
          for (int v = 0; v < w.H; ++v)
            if (!w.inC(c.name, v, o)) out.add("snapshot-class", t, o);
        } else if (c.temporality == Temporality::Temporary) {
          bool absent = false;
          for (int v = 0; v < w.H; ++v)
            if (v != t && !w.inC(c.name, v, o)) absent = true;
          if (!absent) out.add("temporal-class", t, o);
        }
      }
    for (const auto& a : c.attributes) {
      const std::string q = qualify(c.name, a.name);
      if (!(a.card.min == 0 && !a.card.max))
        for (int t = 0; t < w.H; ++t)
          for (const auto& o : w.objects) {
            if (!w.inC(c.name, t, o)) continue;
            unsigned k = 0;
            for (const auto& p : w.pair_universe)
              if (p.first == o && w.inA(q, t, p)) ++k;
            if (k < a.card.min || (a.card.max && k > *a.card.max))
              out.add("card_A", t, o);
          }
      for (int t = 0; t < w.H; ++t)
        for (const auto& p : w.pair_universe) {
          if (!w.inA(q, t, p)) continue;
          if (a.marking == Temporality::Snapshot) {
            for (int v = 0; v < w.H; ++v)
              if (!w.inA(q, v, p)) out.add("snapshot-attr", t, text_of(p));
            if (w.inC(c.name, t, p.first))
              for (int v = 0; v < w.H; ++v)
                if (!w.inA(q, v, p)) out.add("attr-s", t, text_of(p));
          } else if (a.marking == Temporality::Temporary) {
            bool absent = false;
            for (int v = 0; v < w.H; ++v)
              if (v != t && !w.inA(q, v, p)) absent = true;
            if (!absent) {
              out.add("temporal-attr", t, text_of(p));
              if (w.inC(c.name, t, p.first)) out.add("attr-t", t, text_of(p));
            }
          }
        }
      if (a.is_id)
        for (int t = 0; t < w.H; ++t) {
          std::set<Value> values;
          for (const auto& p : w.pair_universe) values.insert(p.second);
          for (const auto& v : values) {
            unsigned holders = 0;
            for (const auto& o : w.objects)
              if (w.inC(c.name, t, o) && w.inA(q, t, {o, v})) ++holders;
            if (holders > 1) out.add("id", t, v);
          }
          for (const auto& o : w.objects) {
            if (!w.inC(c.name, t, o)) continue;
            unsigned eternal = 0;
            for (const auto& v : values) {
              bool always = true;
              for (int u = 0; u < w.H; ++u)
                if (!w.inA(q, u, {o, v})) always = false;
              if (always) ++eternal;
            }
            if (eternal != 1) out.add("id", t, o);
          }
        }
    }
  }

  for (const auto& g : schema.disj_c)
    for (int t = 0; t < w.H; ++t)
      for (const auto& o : w.objects) {
        for (const auto& m : g.members)
          if (w.inC(m, t, o) && !w.inC(g.super, t, o)) out.add("disj_C", t, o);
        for (std::size_t i = 0; i < g.members.size(); ++i)
          for (std::size_t j = i + 1; j < g.members.size(); ++j)
            if (w.inC(g.members[i], t, o) && w.inC(g.members[j], t, o))
              out.add("disj_C", t, o);
      }

  for (const auto& g : schema.disj_r)
    for (int t = 0; t < w.H; ++t)
      for (const auto& x : w.tuple_universe) {
        for (const auto& m : g.members)
          if (w.inR(m, t, x) && !w.inR(g.super, t, x))
            out.add("disj_R", t, text_of(x));
        for (std::size_t i = 0; i < g.members.size(); ++i)
          for (std::size_t j = i + 1; j < g.members.size(); ++j)
            if (w.inR(g.members[i], t, x) && w.inR(g.members[j], t, x))
              out.add("disj_R", t, text_of(x));
      }

  for (const auto& g : schema.cover)
    for (int t = 0; t < w.H; ++t)
      for (const auto& o : w.objects) {
        for (const auto& m : g.members)
          if (w.inC(m, t, o) && !w.inC(g.super, t, o)) out.add("cover", t, o);
        if (w.inC(g.super, t, o)) {
          bool somewhere = false;
          for (const auto& m : g.members)
            if (w.inC(m, t, o)) somewhere = true;
          if (!somewhere) out.add("cover", t, o);
        }
      }

  for (const auto& c : schema.transitions) {
    if (c.kind == TransitionKind::Frozen) {
      for (int t = 0; t < w.H; ++t)
        for (const auto& p : w.pair_universe) {
          if (!w.inA(c.source, t, p)) continue;
          for (int v = t + 1; v < w.H; ++v)
            if (!w.inA(c.source, v, p)) out.add("FRZ", t, text_of(p));
        }
      continue;
    }
    if (c.subject == SubjectKind::Class) {
      transition_findings(
          w, out, c, w.objects,
          [&](const std::string& n, int t, const ObjectId& o) {
            return w.inC(n, t, o);
          },
          variant);
    } else if (c.subject == SubjectKind::Relationship) {
      const RelDecl* src = schema.find_relationship(c.source);
      std::vector<Tuple> aligned;
      for (const auto& x : w.tuple_universe)
        if (x.size() == src->arity()) aligned.push_back(x);
      transition_findings(
          w, out, c, aligned,
          [&](const std::string& n, int t, const Tuple& x) {
            return w.inR(n, t, x);
          },
          variant);
    }
    // Optional attribute changes impose nothing.
  }

  return {out.found.begin(), out.found.end()};
}

std::vector<NaiveFinding> findings_of(
    const std::vector<Violation>& violations) {
  std::set<NaiveFinding> set;
  for (const auto& v : violations)
    set.insert({v.rule, v.times.empty() ? 0 : v.times.front(),
                v.elements.empty() ? "" : v.elements.back()});
  return {set.begin(), set.end()};
}

}  // namespace trend::testgen

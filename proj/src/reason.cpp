#include "trend/reason.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "trend/text.hpp"

namespace trend::reason {

namespace {

int popcount(unsigned x) {
  int n = 0;
  while (x) {
    n += x & 1u;
    x >>= 1;
  }
  return n;
}

// Canonical trace order: fewer memberships first; among equals, presence
// at earlier time points first, then smaller bitmasks. Keeps witnesses
// minimal and the enumeration deterministic.
struct TraceLess {
  bool operator()(const std::vector<unsigned>& a,
                  const std::vector<unsigned>& b) const {
    int pa = 0, pb = 0;
    for (unsigned m : a) pa += popcount(m);
    for (unsigned m : b) pb += popcount(m);
    if (pa != pb) return pa < pb;
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (popcount(a[t]) != popcount(b[t]))
        return popcount(a[t]) > popcount(b[t]);
      if (a[t] != b[t]) return a[t] < b[t];
    }
    return false;
  }
};

struct SearchSpace {
  const Schema& schema;
  const Bounds& bounds;
  SemanticsVariant variant;
  int horizon = 1;
  std::vector<ObjectId> objects;
  std::map<std::string, std::vector<Value>> domains;

  std::vector<std::string> class_names;
  std::vector<std::vector<unsigned>> object_traces;  // valid per-object

  // Relationship groups share an arity so tuples align positionally.
  struct RelGroup {
    std::size_t arity;
    std::vector<const RelDecl*> rels;
    std::vector<Tuple> tuples;  // canonical order
  };
  std::vector<RelGroup> rel_groups;
};

unsigned class_bit(const SearchSpace& space, const std::string& name) {
  for (std::size_t i = 0; i < space.class_names.size(); ++i)
    if (space.class_names[i] == name) return 1u << i;
  return 0;
}

bool mask_locally_legal(const SearchSpace& space, unsigned mask) {
  auto has = [&](const std::string& n) { return mask & class_bit(space, n); };
  for (const auto& [sub, super] : space.schema.isa_c)
    if (has(sub) && !has(super)) return false;
  for (const auto& g : space.schema.disj_c) {
    for (const auto& m : g.members)
      if (has(m) && !has(g.super)) return false;
    int present = 0;
    for (const auto& m : g.members)
      if (has(m)) ++present;
    if (present > 1) return false;
  }
  for (const auto& g : space.schema.cover) {
    for (const auto& m : g.members)
      if (has(m) && !has(g.super)) return false;
    if (has(g.super)) {
      bool covered = false;
      for (const auto& m : g.members) covered = covered || has(m);
      if (!covered) return false;
    }
  }
  return true;
}

// Per-object legality of a full class trace: temporality plus every
// class-level transition obligation, which only mention this object.
bool trace_legal(const SearchSpace& space, const std::vector<unsigned>& trace) {
  const int H = space.horizon;
  auto in = [&](const std::string& cls, int t) {
    if (t < 0 || t >= H) return false;
    return (trace[static_cast<std::size_t>(t)] & class_bit(space, cls)) != 0;
  };
  for (std::size_t ci = 0; ci < space.class_names.size(); ++ci) {
    const ClassDecl& c = space.schema.classes[ci];
    for (int t = 0; t < H; ++t) {
      if (!(trace[static_cast<std::size_t>(t)] & (1u << ci))) continue;
      if (c.temporality == Temporality::Snapshot) {
        for (int v = 0; v < H; ++v)
          if (!(trace[static_cast<std::size_t>(v)] & (1u << ci))) return false;
      } else if (c.temporality == Temporality::Temporary) {
        bool absent = false;
        for (int v = 0; v < H && !absent; ++v)
          absent = v != t && !(trace[static_cast<std::size_t>(v)] & (1u << ci));
        if (!absent) return false;
      }
    }
  }
  auto future_cond = [&](const TransitionConstraint& c, int t) {
    const int tn = t + static_cast<int>(c.step());
    if (tn >= H) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t) && !in(c.target, t) && in(c.target, tn);
    return in(c.source, t) && !in(c.target, t) && in(c.target, tn) &&
           !in(c.source, tn);
  };
  auto past_cond = [&](const TransitionConstraint& c, int t) {
    const int tn = t - static_cast<int>(c.step());
    if (tn < 0) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t) && in(c.target, t) && !in(c.target, tn);
    return !in(c.source, t) && in(c.target, t) && in(c.source, tn) &&
           !in(c.target, tn);
  };
  for (const auto& c : space.schema.transitions) {
    if (c.subject != SubjectKind::Class) continue;
    if (c.modality == Modality::Mandatory) {
      const std::string& trigger =
          c.tense == Tense::Future
              ? c.source
              : (space.variant == SemanticsVariant::TargetTriggered ? c.target
                                                                    : c.source);
      for (int t = 0; t < H; ++t) {
        if (!in(trigger, t)) continue;
        bool met = false;
        if (c.tense == Tense::Future) {
          for (int v = t + 1; v < H && !met; ++v) met = future_cond(c, v);
        } else {
          for (int v = 0; v < t && !met; ++v) met = future_cond(c, v);
        }
        if (!met) return false;
      }
    }
    if (c.persistent) {
      for (int t = 0; t < H; ++t) {
        bool fires = c.tense == Tense::Future ? future_cond(c, t)
                                              : past_cond(c, t);
        if (!fires) continue;
        for (int v = t + 1; v < H; ++v)
          if (!in(c.target, v)) return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<unsigned>> build_object_traces(SearchSpace& space) {
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << space.class_names.size()); ++m)
    if (mask_locally_legal(space, m)) masks.push_back(m);
  std::vector<std::vector<unsigned>> traces;
  std::vector<unsigned> current(static_cast<std::size_t>(space.horizon), 0);
  std::function<void(int)> grow = [&](int t) {
    if (t == space.horizon) {
      if (trace_legal(space, current)) traces.push_back(current);
      return;
    }
    for (unsigned m : masks) {
      current[static_cast<std::size_t>(t)] = m;
      grow(t + 1);
    }
  };
  grow(0);
  std::sort(traces.begin(), traces.end(), TraceLess{});
  return traces;
}

// Presence matrix of one tuple across the relationships of its arity
// group: bit r of row t says the tuple is in rels[r] at t.
using TupleTrace = std::vector<unsigned>;

bool tuple_trace_legal(const SearchSpace& space,
                       const SearchSpace::RelGroup& group, const Tuple& tuple,
                       const TupleTrace& trace, const TemporalState& classes) {
  const int H = space.horizon;
  auto rel_bit = [&](const std::string& name) -> unsigned {
    for (std::size_t r = 0; r < group.rels.size(); ++r)
      if (group.rels[r]->name == name) return 1u << r;
    return 0;
  };
  auto in = [&](const std::string& rel, int t) {
    if (t < 0 || t >= H) return false;
    unsigned bit = rel_bit(rel);
    return bit && (trace[static_cast<std::size_t>(t)] & bit);
  };
  for (std::size_t r = 0; r < group.rels.size(); ++r) {
    const RelDecl& decl = *group.rels[r];
    for (int t = 0; t < H; ++t) {
      if (!(trace[static_cast<std::size_t>(t)] & (1u << r))) continue;
      for (std::size_t i = 0; i < decl.roles.size(); ++i)
        if (!classes.in_class(decl.roles[i].player, t, tuple[i])) return false;
      if (decl.temporality == Temporality::Snapshot) {
        for (int v = 0; v < H; ++v)
          if (!(trace[static_cast<std::size_t>(v)] & (1u << r))) return false;
      } else if (decl.temporality == Temporality::Temporary) {
        bool absent = false;
        for (int v = 0; v < H && !absent; ++v)
          absent = v != t && !(trace[static_cast<std::size_t>(v)] & (1u << r));
        if (!absent) return false;
      }
    }
  }
  for (const auto& [sub, super] : space.schema.isa_r)
    if (rel_bit(sub))
      for (int t = 0; t < H; ++t)
        if (in(sub, t) && !in(super, t)) return false;
  for (const auto& g : space.schema.disj_r) {
    for (const auto& m : g.members)
      if (rel_bit(m))
        for (int t = 0; t < H; ++t)
          if (in(m, t) && !in(g.super, t)) return false;
    for (int t = 0; t < H; ++t) {
      int present = 0;
      for (const auto& m : g.members)
        if (in(m, t)) ++present;
      if (present > 1) return false;
    }
  }
  auto future_cond = [&](const TransitionConstraint& c, int t) {
    const int tn = t + static_cast<int>(c.step());
    if (tn >= H) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t) && !in(c.target, t) && in(c.target, tn);
    return in(c.source, t) && !in(c.target, t) && in(c.target, tn) &&
           !in(c.source, tn);
  };
  auto past_cond = [&](const TransitionConstraint& c, int t) {
    const int tn = t - static_cast<int>(c.step());
    if (tn < 0) return false;
    if (c.kind == TransitionKind::Extension)
      return in(c.source, t) && in(c.target, t) && !in(c.target, tn);
    return !in(c.source, t) && in(c.target, t) && in(c.source, tn) &&
           !in(c.target, tn);
  };
  for (const auto& c : space.schema.transitions) {
    if (c.subject != SubjectKind::Relationship) continue;
    if (!rel_bit(c.source) && !rel_bit(c.target)) continue;
    if (c.modality == Modality::Mandatory) {
      const std::string& trigger =
          c.tense == Tense::Future
              ? c.source
              : (space.variant == SemanticsVariant::TargetTriggered ? c.target
                                                                    : c.source);
      for (int t = 0; t < H; ++t) {
        if (!in(trigger, t)) continue;
        bool met = false;
        if (c.tense == Tense::Future) {
          for (int v = t + 1; v < H && !met; ++v) met = future_cond(c, v);
        } else {
          for (int v = 0; v < t && !met; ++v) met = future_cond(c, v);
        }
        if (!met) return false;
      }
    }
    if (c.persistent)
      for (int t = 0; t < H; ++t) {
        bool fires = c.tense == Tense::Future ? future_cond(c, t)
                                              : past_cond(c, t);
        if (!fires) continue;
        for (int v = t + 1; v < H; ++v)
          if (!in(c.target, v)) return false;
      }
  }
  return true;
}

// Value assignment of one (object, attribute): which pool values hold at
// each t. Bit v of row t says (object, pool[v]) ∈ A at t.
bool attr_trace_legal(const SearchSpace& space, const ClassDecl& cls,
                      const AttrDecl& attr, const ObjectId& object,
                      const std::vector<Value>& pool,
                      const std::vector<unsigned>& trace,
                      const TemporalState& classes) {
  const int H = space.horizon;
  auto holds = [&](int t, std::size_t v) {
    if (t < 0 || t >= H) return false;
    return (trace[static_cast<std::size_t>(t)] & (1u << v)) != 0;
  };
  const std::string q = qualify(cls.name, attr.name);
  for (std::size_t v = 0; v < pool.size(); ++v)
    for (int t = 0; t < H; ++t) {
      if (!holds(t, v)) continue;
      if (attr.marking == Temporality::Snapshot) {
        for (int w = 0; w < H; ++w)
          if (!holds(w, v)) return false;
      } else if (attr.marking == Temporality::Temporary) {
        bool absent = false;
        for (int w = 0; w < H && !absent; ++w) absent = w != t && !holds(w, v);
        if (!absent) return false;
      }
    }
  for (const auto& c : space.schema.transitions)
    if (c.kind == TransitionKind::Frozen && c.source == q)
      for (std::size_t v = 0; v < pool.size(); ++v)
        for (int t = 0; t + 1 < H; ++t)
          if (holds(t, v) && !holds(t + 1, v)) return false;
  // Cardinality while a member of the owning class.
  for (int t = 0; t < H; ++t) {
    if (!classes.in_class(cls.name, t, object)) continue;
    unsigned count = 0;
    for (std::size_t v = 0; v < pool.size(); ++v)
      if (holds(t, v)) ++count;
    if (count < attr.card.min || (attr.card.max && count > *attr.card.max))
      return false;
  }
  if (attr.is_id) {
    for (int t = 0; t < H; ++t) {
      if (!classes.in_class(cls.name, t, object)) continue;
      unsigned eternal = 0;
      for (std::size_t v = 0; v < pool.size(); ++v) {
        bool always = true;
        for (int w = 0; w < H && always; ++w) always = holds(w, v);
        if (always) ++eternal;
      }
      if (eternal != 1) return false;
    }
  }
  return true;
}

std::vector<std::vector<unsigned>> legal_bit_traces(
    int horizon, unsigned width,
    const std::function<bool(const std::vector<unsigned>&)>& legal) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current(static_cast<std::size_t>(horizon), 0);
  std::function<void(int)> grow = [&](int t) {
    if (t == horizon) {
      if (legal(current)) out.push_back(current);
      return;
    }
    for (unsigned m = 0; m < (1u << width); ++m) {
      current[static_cast<std::size_t>(t)] = m;
      grow(t + 1);
    }
  };
  grow(0);
  std::sort(out.begin(), out.end(), TraceLess{});
  return out;
}

using Goal = std::function<bool(const TemporalState&)>;

// Exhaustive enumeration in canonical order; the first legal state (zero
// check_state violations) accepted by the goal wins. A class-level
// feasibility predicate prunes whole class assignments before any
// relationship or attribute work when the goal only concerns classes.
struct Searcher {
  const Schema& schema;
  const Bounds& bounds;
  SemanticsVariant variant;

  std::optional<TemporalState> first_accepted(const Goal& goal,
                                              const Goal& class_feasible = {}) {
    return walk(goal, class_feasible);
  }

private:
  std::optional<TemporalState> walk(const Goal& accept,
                                    const Goal& class_feasible) {
    for (unsigned H = 1; H <= bounds.max_horizon; ++H)
      for (unsigned K = 1; K <= bounds.max_objects; ++K) {
        SearchSpace space{schema, bounds, variant, 1, {}, {}, {}, {}, {}};
        space.horizon = static_cast<int>(H);
        for (unsigned i = 1; i <= K; ++i)
          space.objects.push_back("o" + std::to_string(i));
        for (const auto& c : schema.classes) {
          space.class_names.push_back(c.name);
          for (const auto& a : c.attributes) {
            unsigned pool = bounds.max_domain_values;
            if (a.is_id) pool = std::max(pool, K);
            auto& values = space.domains[a.domain];
            for (unsigned v = values.size(); v < pool; ++v)
              values.push_back("v" + std::to_string(v + 1));
          }
        }
        std::vector<std::size_t> arities;
        for (const auto& r : schema.relationships)
          if (std::find(arities.begin(), arities.end(), r.arity()) ==
              arities.end())
            arities.push_back(r.arity());
        for (std::size_t arity : arities) {
          SearchSpace::RelGroup group{arity, {}, {}};
          for (const auto& r : schema.relationships)
            if (r.arity() == arity) group.rels.push_back(&r);
          space.rel_groups.push_back(std::move(group));
        }
        for (auto& group : space.rel_groups) {
          std::vector<Tuple> frontier{Tuple{}};
          for (std::size_t i = 0; i < group.arity; ++i) {
            std::vector<Tuple> grown;
            for (const auto& partial : frontier)
              for (const auto& o : space.objects) {
                Tuple t = partial;
                t.push_back(o);
                grown.push_back(std::move(t));
              }
            frontier = std::move(grown);
          }
          group.tuples = std::move(frontier);
        }
        space.object_traces = build_object_traces(space);
        if (auto found = assign_objects(space, accept, class_feasible))
          return found;
      }
    return std::nullopt;
  }

  std::optional<TemporalState> assign_objects(SearchSpace& space,
                                              const Goal& accept,
                                              const Goal& class_feasible) {
    const std::size_t K = space.objects.size();
    std::vector<std::size_t> choice(K, 0);
    if (space.object_traces.empty()) return std::nullopt;
    while (true) {
      TemporalState state;
      state.horizon = space.horizon;
      state.objects = space.objects;
      state.domains = space.domains;
      for (std::size_t oi = 0; oi < K; ++oi) {
        const auto& trace = space.object_traces[choice[oi]];
        for (int t = 0; t < space.horizon; ++t)
          for (std::size_t ci = 0; ci < space.class_names.size(); ++ci)
            if (trace[static_cast<std::size_t>(t)] & (1u << ci))
              state.put_class(space.class_names[ci], t, space.objects[oi]);
      }
      if (!class_feasible || class_feasible(state))
        if (auto found = assign_relationships(space, state, 0, accept))
          return found;
      // odometer
      std::size_t i = 0;
      while (i < K) {
        if (++choice[i] < space.object_traces.size()) break;
        choice[i] = 0;
        ++i;
      }
      if (i == K) return std::nullopt;
    }
  }

  static bool group_cards_ok(const SearchSpace& space,
                             const SearchSpace::RelGroup& group,
                             const TemporalState& state) {
    for (const RelDecl* rel : group.rels)
      for (std::size_t i = 0; i < rel->roles.size(); ++i) {
        const RoleDecl& role = rel->roles[i];
        if (role.card == kDefaultRoleCard) continue;
        for (int t = 0; t < space.horizon; ++t)
          for (const auto& o : state.class_ext(role.player, t)) {
            unsigned count = 0;
            for (const auto& tuple : state.rel_ext(rel->name, t))
              if (tuple[i] == o) ++count;
            if (count < role.card.min ||
                (role.card.max && count > *role.card.max))
              return false;
          }
      }
    return true;
  }

  std::optional<TemporalState> assign_relationships(SearchSpace& space,
                                                    TemporalState& state,
                                                    std::size_t group_index,
                                                    const Goal& accept) {
    if (group_index == space.rel_groups.size())
      return assign_attributes(space, state, accept);
    const auto& group = space.rel_groups[group_index];
    if (group.rels.empty())
      return assign_relationships(space, state, group_index + 1, accept);

    std::vector<std::vector<TupleTrace>> options;
    for (const auto& tuple : group.tuples)
      options.push_back(legal_bit_traces(
          space.horizon, static_cast<unsigned>(group.rels.size()),
          [&](const std::vector<unsigned>& trace) {
            return tuple_trace_legal(space, group, tuple, trace, state);
          }));
    for (const auto& opts : options)
      if (opts.empty()) return std::nullopt;

    std::vector<std::size_t> choice(group.tuples.size(), 0);
    while (true) {
      TemporalState with = state;
      for (std::size_t ti = 0; ti < group.tuples.size(); ++ti) {
        const auto& trace = options[ti][choice[ti]];
        for (int t = 0; t < space.horizon; ++t)
          for (std::size_t r = 0; r < group.rels.size(); ++r)
            if (trace[static_cast<std::size_t>(t)] & (1u << r))
              with.put_rel(group.rels[r]->name, t, group.tuples[ti]);
      }
      if (group_cards_ok(space, group, with))
        if (auto found =
                assign_relationships(space, with, group_index + 1, accept))
          return found;
      std::size_t i = 0;
      while (i < choice.size()) {
        if (++choice[i] < options[i].size()) break;
        choice[i] = 0;
        ++i;
      }
      if (i == choice.size()) return std::nullopt;
    }
  }

  std::optional<TemporalState> assign_attributes(SearchSpace& space,
                                                 TemporalState& state,
                                                 const Goal& accept) {
    struct Slot {
      const ClassDecl* cls;
      const AttrDecl* attr;
      ObjectId object;
      const std::vector<Value>* pool;
      std::vector<std::vector<unsigned>> options;
    };
    std::vector<Slot> slots;
    for (const auto& c : schema.classes)
      for (const auto& a : c.attributes)
        for (const auto& o : space.objects) {
          Slot slot{&c, &a, o, &space.domains[a.domain], {}};
          slot.options = legal_bit_traces(
              space.horizon, static_cast<unsigned>(slot.pool->size()),
              [&](const std::vector<unsigned>& trace) {
                return attr_trace_legal(space, c, a, o, *slot.pool, trace,
                                        state);
              });
          if (slot.options.empty()) return std::nullopt;
          slots.push_back(std::move(slot));
        }

    std::vector<std::size_t> choice(slots.size(), 0);
    while (true) {
      TemporalState with = state;
      for (std::size_t si = 0; si < slots.size(); ++si) {
        const auto& slot = slots[si];
        const auto& trace = slot.options[choice[si]];
        const std::string q = qualify(slot.cls->name, slot.attr->name);
        for (int t = 0; t < space.horizon; ++t)
          for (std::size_t v = 0; v < slot.pool->size(); ++v)
            if (trace[static_cast<std::size_t>(t)] & (1u << v))
              with.put_attr(q, t, {slot.object, (*slot.pool)[v]});
      }
      if (check_state(schema, with, variant).empty() && accept(with))
        return with;
      std::size_t i = 0;
      while (i < choice.size()) {
        if (++choice[i] < slots[i].options.size()) break;
        choice[i] = 0;
        ++i;
      }
      if (i == choice.size() || slots.empty()) return std::nullopt;
    }
  }
};

SearchedLattice lattice_of(const Bounds& b) {
  return {b.max_objects, b.max_horizon, b.time_flow};
}

}  // namespace

std::string lattice_text(const SearchedLattice& lattice) {
  std::ostringstream out;
  out << "(" << lattice.max_objects << " objects, " << lattice.max_horizon
      << " time points)"
      << "; finite-trace over "
      << (lattice.time_flow == TimeFlow::Naturals ? "N" : "Z");
  return out.str();
}

WitnessResult find_witness(const Schema& schema, const std::string& element,
                           const Bounds& bounds, SemanticsVariant variant) {
  const bool is_class = schema.find_class(element) != nullptr;
  const bool is_rel = schema.find_relationship(element) != nullptr;
  if (!is_class && !is_rel)
    throw Error("unknown-element",
                "'" + element + "' names no class or relationship");
  Searcher searcher{schema, bounds, variant};
  Goal accept = [&](const TemporalState& s) {
    for (int t = 0; t < s.horizon; ++t) {
      if (is_class && !s.class_ext(element, t).empty()) return true;
      if (is_rel && !s.rel_ext(element, t).empty()) return true;
    }
    return false;
  };
  Goal class_feasible;
  if (is_class) class_feasible = accept;
  auto found = searcher.first_accepted(accept, class_feasible);
  if (!found) return ExhaustedBounds{lattice_of(bounds)};
  int at = 0;
  for (int t = 0; t < found->horizon; ++t)
    if ((is_class && !found->class_ext(element, t).empty()) ||
        (is_rel && !found->rel_ext(element, t).empty())) {
      at = t;
      break;
    }
  // Self-verification: a witness must be a legal state.
  if (!check_state(schema, *found, variant).empty())
    throw Error("internal", "witness failed self-verification");
  return Witness{std::move(*found), at, element};
}

CheckResult check_subsumption(const Schema& schema, const std::string& sub,
                              const std::string& sup, const Bounds& bounds,
                              SemanticsVariant variant) {
  const bool sub_class = schema.find_class(sub) != nullptr;
  const bool sup_class = schema.find_class(sup) != nullptr;
  const bool sub_rel = schema.find_relationship(sub) != nullptr;
  const bool sup_rel = schema.find_relationship(sup) != nullptr;
  if ((!sub_class && !sub_rel) || (!sup_class && !sup_rel))
    throw Error("unknown-element", "subsumption endpoints must be declared");
  if (sub_class != sup_class)
    throw Error("kind-mismatch",
                "subsumption compares two classes or two relationships");
  if (sub_rel && schema.find_relationship(sub)->arity() !=
                     schema.find_relationship(sup)->arity())
    throw Error("kind-mismatch", "subsumption needs equal arities");

  Searcher searcher{schema, bounds, variant};
  std::string instance;
  int at = 0;
  Goal accept = [&](const TemporalState& s) {
    for (int t = 0; t < s.horizon; ++t) {
      if (sub_class) {
        for (const auto& o : s.class_ext(sub, t))
          if (!s.in_class(sup, t, o)) {
            instance = o;
            at = t;
            return true;
          }
      } else {
        for (const auto& tuple : s.rel_ext(sub, t))
          if (!s.in_rel(sup, t, tuple)) {
            instance = "(";
            for (std::size_t i = 0; i < tuple.size(); ++i) {
              if (i) instance += ",";
              instance += tuple[i];
            }
            instance += ")";
            at = t;
            return true;
          }
      }
    }
    return false;
  };
  Goal class_feasible;
  if (sub_class) class_feasible = accept;
  auto found = searcher.first_accepted(accept, class_feasible);
  if (!found) return HoldsUpToBounds{lattice_of(bounds)};
  return CounterExample{std::move(*found), instance, at,
                        "legal state separating " + sub + " from " + sup};
}

std::variant<Schema, Diagnostic> apply_candidate(const Schema& schema,
                                                 const std::string& raw_stmt) {
  std::string stmt = raw_stmt;
  while (!stmt.empty() && std::isspace(static_cast<unsigned char>(stmt.back())))
    stmt.pop_back();
  if (!stmt.empty() && stmt.back() != ';') stmt += ';';
  // Re-markings modify a declaration in place; everything else appends.
  {
    std::istringstream in(stmt);
    std::string kw, name, marking;
    in >> kw >> name >> marking;
    if (kw == "rel" && (marking == "temporal;" || marking == "snapshot;" ||
                        marking == "temporal" || marking == "snapshot")) {
      Schema changed = schema;
      for (auto& r : changed.relationships)
        if (r.name == name) {
          r.temporality = marking.starts_with("temporal")
                              ? Temporality::Temporary
                              : Temporality::Snapshot;
          return changed;
        }
      return Diagnostic{"unknown-element",
                        "candidate re-marks undeclared relationship '" + name +
                            "'",
                        std::nullopt, Severity::Error};
    }
  }
  ParseResult probe = parse_schema(stmt);
  if (probe.ok() && !probe.schema->classes.empty() &&
      probe.schema->classes.size() == 1 &&
      probe.schema->relationships.empty() &&
      probe.schema->transitions.empty()) {
    const ClassDecl& decl = probe.schema->classes.front();
    if (decl.attributes.empty()) {
      Schema changed = schema;
      for (auto& c : changed.classes)
        if (c.name == decl.name) {
          c.temporality = decl.temporality;
          return changed;
        }
      return Diagnostic{"unknown-element",
                        "candidate re-marks undeclared class '" + decl.name +
                            "'",
                        std::nullopt, Severity::Error};
    }
  }
  std::string text = serialize_schema(schema) + stmt + "\n";
  ParseResult merged = parse_schema(text);
  if (!merged.ok()) {
    for (const auto& d : merged.diagnostics)
      if (d.severity == Severity::Error)
        return Diagnostic{"invalid-candidate",
                          "candidate statement rejected: " + d.message,
                          std::nullopt, Severity::Error};
  }
  return *merged.schema;
}

CheckResult check_implication(const Schema& schema,
                              const std::string& candidate_stmt,
                              const Bounds& bounds, SemanticsVariant variant) {
  auto applied = apply_candidate(schema, candidate_stmt);
  if (std::holds_alternative<Diagnostic>(applied))
    throw Error(std::get<Diagnostic>(applied).code,
                std::get<Diagnostic>(applied).message);
  const Schema& augmented = std::get<Schema>(applied);

  Searcher searcher{schema, bounds, variant};
  std::string instance;
  int at = 0;
  auto found = searcher.first_accepted([&](const TemporalState& s) {
    auto violations = check_state(augmented, s, variant);
    if (violations.empty()) return false;
    const Violation& v = violations.front();
    instance = v.elements.empty() ? "" : v.elements.back();
    at = v.times.empty() ? 0 : v.times.front();
    return true;
  });
  if (!found) return HoldsUpToBounds{lattice_of(bounds)};
  return CounterExample{std::move(*found), instance, at,
                        "legal state violating the candidate"};
}

}  // namespace trend::reason

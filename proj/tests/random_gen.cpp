#include "random_gen.hpp"

#include <algorithm>

#include "trend/text.hpp"

namespace trend::testgen {

namespace {

unsigned pick(std::mt19937& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Temporality random_marking(std::mt19937& rng) {
  switch (pick(rng, 0, 3)) {
    case 0: return Temporality::Snapshot;
    case 1: return Temporality::Temporary;
    default: return Temporality::Mixed;  // unmarked twice as likely
  }
}

TransitionConstraint random_class_transition(std::mt19937& rng,
                                             const std::string& src,
                                             const std::string& tgt) {
  TransitionConstraint t;
  t.subject = SubjectKind::Class;
  t.kind = chance(rng, 0.5) ? TransitionKind::Extension
                            : TransitionKind::Change;
  t.tense = chance(rng, 0.5) ? Tense::Future : Tense::Past;
  t.modality = chance(rng, 0.4) ? Modality::Mandatory : Modality::Optional;
  if (chance(rng, 0.35)) t.offset = pick(rng, 1, 3);
  t.persistent = chance(rng, 0.2);
  t.source = src;
  t.target = tgt;
  return t;
}

}  // namespace

Schema random_schema(std::mt19937& rng, const SchemaOptions& options) {
  RawSchema raw;
  const unsigned n_classes = pick(rng, 1, std::max(1u, options.max_classes));
  for (unsigned i = 0; i < n_classes; ++i) {
    ClassDecl c;
    c.name = "C" + std::to_string(i + 1);
    c.temporality = random_marking(rng);
    const unsigned n_attrs = pick(rng, 0, options.max_attrs);
    for (unsigned a = 0; a < n_attrs; ++a) {
      AttrDecl attr;
      attr.name = "a" + std::to_string(a + 1);
      attr.domain = "D" + std::to_string(pick(rng, 1, 2));
      attr.marking = random_marking(rng);
      if (options.with_ids && a == 0 && chance(rng, 0.2) &&
          attr.marking != Temporality::Temporary)
        attr.is_id = true;
      if (chance(rng, 0.25))
        attr.card = Cardinality{0, pick(rng, 1, 2)};
      c.attributes.push_back(std::move(attr));
    }
    raw.classes.push_back(std::move(c));
  }

  const unsigned n_rels =
      options.max_rels == 0 ? 0 : pick(rng, 0, options.max_rels);
  for (unsigned i = 0; i < n_rels; ++i) {
    RelDecl r;
    r.name = "R" + std::to_string(i + 1);
    r.temporality = random_marking(rng);
    const unsigned arity = 2;
    for (unsigned u = 0; u < arity; ++u) {
      RoleDecl role;
      role.name = "r" + std::to_string(u + 1);
      role.player = "C" + std::to_string(pick(rng, 1, n_classes));
      if (chance(rng, 0.2)) role.card = Cardinality{0, pick(rng, 1, 2)};
      r.roles.push_back(std::move(role));
    }
    raw.relationships.push_back(std::move(r));
  }

  // Acyclic isa: subclasses carry larger indices.
  for (unsigned j = 2; j <= n_classes; ++j)
    if (chance(rng, 0.4))
      raw.isa_c.emplace_back("C" + std::to_string(j),
                             "C" + std::to_string(pick(rng, 1, j - 1)));
  if (n_rels == 2 && chance(rng, 0.3))
    raw.isa_r.emplace_back("R2", "R1");
  if (n_rels >= 1 && chance(rng, 0.2))
    raw.isa_u.emplace_back(RoleRef{"R1", "r1"},
                           RoleRef{"R" + std::to_string(n_rels), "r2"});

  if (options.with_groups && n_classes >= 3) {
    if (chance(rng, 0.3)) raw.disj_c.push_back({{"C2", "C3"}, "C1"});
    if (chance(rng, 0.3)) raw.cover.push_back({{"C2", "C3"}, "C1"});
  }
  if (options.with_groups && n_rels == 2 && chance(rng, 0.15))
    raw.disj_r.push_back({{"R2"}, "R1"});

  std::vector<std::string> attr_names;
  for (const auto& c : raw.classes)
    for (const auto& a : c.attributes)
      attr_names.push_back(qualify(c.name, a.name));

  const unsigned n_trans = pick(rng, 0, options.max_transitions);
  for (unsigned i = 0; i < n_trans; ++i) {
    const unsigned die = pick(rng, 0, 9);
    if (die < 6 && n_classes >= 2) {
      unsigned a = pick(rng, 1, n_classes), b = pick(rng, 1, n_classes);
      if (a == b) continue;
      raw.transitions.push_back(random_class_transition(
          rng, "C" + std::to_string(a), "C" + std::to_string(b)));
    } else if (die < 8 && n_rels == 2) {
      TransitionConstraint t = random_class_transition(rng, "R1", "R2");
      t.subject = SubjectKind::Relationship;
      if (chance(rng, 0.5)) std::swap(t.source, t.target);
      raw.transitions.push_back(std::move(t));
    } else if (die == 8 && attr_names.size() >= 2) {
      TransitionConstraint t;
      t.subject = SubjectKind::Attribute;
      t.kind = TransitionKind::Change;
      t.source = attr_names[pick(rng, 0, attr_names.size() - 1)];
      t.target = attr_names[pick(rng, 0, attr_names.size() - 1)];
      if (t.source == t.target) continue;
      if (chance(rng, 0.5)) t.offset = pick(rng, 1, 3);
      raw.transitions.push_back(std::move(t));
    } else if (!attr_names.empty()) {
      TransitionConstraint t;
      t.subject = SubjectKind::Attribute;
      t.kind = TransitionKind::Frozen;
      t.source = t.target = attr_names[pick(rng, 0, attr_names.size() - 1)];
      raw.transitions.push_back(std::move(t));
    }
  }
  if (chance(rng, 0.3)) raw.chronon_unit = chance(rng, 0.5) ? "years" : "days";

  BuildResult built = build_schema(std::move(raw));
  if (!built.ok())
    throw Error("testgen", "random schema failed validation: " +
                               built.diagnostics.front().message);
  return *built.schema;
}

Schema kitchen_sink_schema() {
  const char* text = R"(
chronon "years";
class Person snapshot {
  Ssn: String snapshot id;
  Name: String;
  Nickname: String temporal [0,2];
  BirthDate: Date frozen;
};
class Student temporal {
  Credits: Number temporal;
};
class Alumnus temporal;
class Staff;
isa Student Person;
isa Alumnus Person;
isa Staff Person;
disjoint {Student, Alumnus} Person;
cover {Student, Alumnus, Staff} Person;
rel EnrolledIn temporal(student: Student [0,4], unit: Staff);
rel Completed(student: Student, unit: Staff);
rel Supervises snapshot(supervisor: Staff, supervisee: Student, cosupervisor: Staff);
isar Completed EnrolledIn;
isau Completed.student EnrolledIn.student;
disjointr {Completed} EnrolledIn;
EXT Person -> Student;
PCHG Student -> Alumnus after 2 mandatory;
ext Student -> Alumnus mandatory;
ext- Person -> Staff;
chg Student -> Alumnus mandatory;
QEXT Staff -> Student after 1;
mqchg Alumnus -> Staff after 2;
DEXR EnrolledIn -> Completed;
chgr EnrolledIn -> Completed mandatory;
PEXTR EnrolledIn -> Completed after 2 mandatory;
CHGA Student.Credits -> Person.Name;
QCHGA Person.Name -> Student.Credits after 2;
FRZ Person.Name;
)";
  ParseResult result = parse_schema(text);
  if (!result.ok())
    throw Error("testgen", "kitchen-sink fixture failed to parse: " +
                               result.diagnostics.front().message);
  return *result.schema;
}

TemporalState random_state(std::mt19937& rng, const Schema& schema,
                           unsigned max_objects, unsigned max_horizon) {
  TemporalState state;
  state.horizon = static_cast<int>(pick(rng, 1, max_horizon));
  const unsigned n_obj = pick(rng, 1, max_objects);
  for (unsigned i = 1; i <= n_obj; ++i)
    state.objects.push_back("o" + std::to_string(i));
  for (const auto& c : schema.classes)
    for (const auto& a : c.attributes) {
      auto& pool = state.domains[a.domain];
      if (pool.empty()) pool = {"v1", "v2"};
    }

  const double density =
      std::vector<double>{0.0, 0.15, 0.35, 0.6}[pick(rng, 0, 3)];
  for (const auto& c : schema.classes)
    for (int t = 0; t < state.horizon; ++t)
      for (const auto& o : state.objects)
        if (chance(rng, density)) state.put_class(c.name, t, o);

  // Snapshot flattening raises the share of legal states.
  if (chance(rng, 0.5))
    for (const auto& c : schema.classes) {
      if (c.temporality != Temporality::Snapshot) continue;
      auto members = state.class_ext(c.name, 0);
      for (int t = 0; t < state.horizon; ++t)
        for (const auto& o : members) state.put_class(c.name, t, o);
    }

  for (const auto& r : schema.relationships) {
    std::vector<Tuple> tuples{Tuple{}};
    for (std::size_t i = 0; i < r.arity(); ++i) {
      std::vector<Tuple> grown;
      for (const auto& partial : tuples)
        for (const auto& o : state.objects) {
          Tuple t = partial;
          t.push_back(o);
          grown.push_back(std::move(t));
        }
      tuples = std::move(grown);
    }
    for (int t = 0; t < state.horizon; ++t)
      for (const auto& tuple : tuples)
        if (chance(rng, density * 0.6)) state.put_rel(r.name, t, tuple);
  }

  const bool repair_attrs = chance(rng, 0.6);
  for (const auto& c : schema.classes)
    for (const auto& a : c.attributes) {
      const std::string q = qualify(c.name, a.name);
      const auto& pool = state.domains[a.domain];
      for (int t = 0; t < state.horizon; ++t)
        for (const auto& o : state.objects) {
          if (chance(rng, density * 0.5))
            state.put_attr(q, t, {o, pool[pick(rng, 0, pool.size() - 1)]});
        }
      if (repair_attrs && a.card.min >= 1)
        for (int t = 0; t < state.horizon; ++t)
          for (const auto& o : state.class_ext(c.name, t)) {
            unsigned count = 0;
            for (const auto& pair : state.attr_ext(q, t))
              if (pair.first == o) ++count;
            if (count == 0)
              state.put_attr(q, t, {o, pool[pick(rng, 0, pool.size() - 1)]});
          }
    }
  return state;
}

}  // namespace trend::testgen

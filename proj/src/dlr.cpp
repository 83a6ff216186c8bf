#include "trend/dlr.hpp"

#include <algorithm>
#include <sstream>

namespace trend::dlr {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr top() {
  Expr e;
  e.op = Expr::Op::Top;
  e.category = Category::Concept;
  return make(std::move(e));
}

ExprPtr bottom() {
  Expr e;
  e.op = Expr::Op::Bottom;
  e.category = Category::Concept;
  return make(std::move(e));
}

ExprPtr top_rel(std::size_t arity) {
  Expr e;
  e.op = Expr::Op::Top;
  e.category = Category::Relation;
  e.arity = arity;
  return make(std::move(e));
}

ExprPtr top_attr() {
  Expr e;
  e.op = Expr::Op::Top;
  e.category = Category::Attribute;
  return make(std::move(e));
}

ExprPtr cname(std::string name) {
  Expr e;
  e.op = Expr::Op::Name;
  e.category = Category::Concept;
  e.name = std::move(name);
  e.name_kind = Expr::NameKind::Class;
  return make(std::move(e));
}

ExprPtr rname(std::string name, std::size_t arity) {
  Expr e;
  e.op = Expr::Op::Name;
  e.category = Category::Relation;
  e.name = std::move(name);
  e.name_kind = Expr::NameKind::Relationship;
  e.arity = arity;
  return make(std::move(e));
}

ExprPtr aname(std::string qualified) {
  Expr e;
  e.op = Expr::Op::Name;
  e.category = Category::Attribute;
  e.name = std::move(qualified);
  e.name_kind = Expr::NameKind::Attribute;
  return make(std::move(e));
}

ExprPtr dname(std::string domain) {
  Expr e;
  e.op = Expr::Op::Name;
  e.category = Category::Concept;
  e.name = std::move(domain);
  e.name_kind = Expr::NameKind::Domain;
  return make(std::move(e));
}

ExprPtr set_name(std::string name, Category category, std::size_t arity) {
  Expr e;
  e.op = Expr::Op::Name;
  e.category = category;
  e.name = std::move(name);
  e.name_kind = Expr::NameKind::TransitionSet;
  e.arity = arity;
  return make(std::move(e));
}

namespace {

ExprPtr unary(Expr::Op op, ExprPtr child) {
  Expr e;
  e.op = op;
  e.category = child->category;
  e.arity = child->arity;
  e.a = std::move(child);
  return make(std::move(e));
}

ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
  if (a->category != b->category)
    throw Error("arity-mismatch", "expression categories differ");
  if (a->category == Category::Relation && a->arity != b->arity)
    throw Error("arity-mismatch", "relation expression arities differ");
  Expr e;
  e.op = op;
  e.category = a->category;
  e.arity = a->arity;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(std::move(e));
}

}  // namespace

ExprPtr negation(ExprPtr e) { return unary(Expr::Op::Not, std::move(e)); }
ExprPtr conj(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::And, std::move(a), std::move(b));
}
ExprPtr disj(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::Or, std::move(a), std::move(b));
}

ExprPtr exists_role(Expr::Cmp cmp, unsigned k, std::size_t position,
                    std::string label, ExprPtr rel) {
  if (rel->category != Category::Relation)
    throw Error("arity-mismatch", "exists-role needs a relation argument");
  if (position >= rel->arity)
    throw Error("arity-mismatch", "role index outside the relation's arity");
  Expr e;
  e.op = Expr::Op::ExistsRole;
  e.category = Category::Concept;
  e.cmp = cmp;
  e.k = k;
  e.position = position;
  e.position_label = std::move(label);
  e.a = std::move(rel);
  return make(std::move(e));
}

ExprPtr exists_attr(Expr::Cmp cmp, unsigned k, ExprPtr attr) {
  if (attr->category != Category::Attribute)
    throw Error("arity-mismatch", "exists-attr needs an attribute argument");
  Expr e;
  e.op = Expr::Op::ExistsAttr;
  e.category = Category::Concept;
  e.cmp = cmp;
  e.k = k;
  e.a = std::move(attr);
  return make(std::move(e));
}

ExprPtr select(std::size_t position, std::size_t arity, std::string label,
               ExprPtr concept_arg) {
  if (concept_arg->category != Category::Concept)
    throw Error("arity-mismatch", "selection needs a concept argument");
  Expr e;
  e.op = Expr::Op::Select;
  e.category = Category::Relation;
  e.arity = arity;
  e.position = position;
  e.position_label = std::move(label);
  e.a = std::move(concept_arg);
  return make(std::move(e));
}

ExprPtr attr_select(Expr::Field field, ExprPtr arg) {
  Expr e;
  e.op = Expr::Op::AttrSelect;
  e.category = Category::Attribute;
  e.field = field;
  e.a = std::move(arg);
  return make(std::move(e));
}

ExprPtr next(ExprPtr e) { return unary(Expr::Op::Next, std::move(e)); }
ExprPtr prev(ExprPtr e) { return unary(Expr::Op::Prev, std::move(e)); }

ExprPtr next_n(ExprPtr e, unsigned n) {
  for (unsigned i = 0; i < n; ++i) e = next(std::move(e));
  return e;
}
ExprPtr prev_n(ExprPtr e, unsigned n) {
  for (unsigned i = 0; i < n; ++i) e = prev(std::move(e));
  return e;
}

ExprPtr sometime_future(ExprPtr e) {
  return unary(Expr::Op::SometimeFuture, std::move(e));
}
ExprPtr sometime_past(ExprPtr e) {
  return unary(Expr::Op::SometimePast, std::move(e));
}
ExprPtr always_future(ExprPtr e) {
  return unary(Expr::Op::AlwaysFuture, std::move(e));
}
ExprPtr always_past(ExprPtr e) {
  return unary(Expr::Op::AlwaysPast, std::move(e));
}
ExprPtr sometime_any(ExprPtr e) {
  return unary(Expr::Op::SometimeAny, std::move(e));
}
ExprPtr always_any(ExprPtr e) {
  return unary(Expr::Op::AlwaysAny, std::move(e));
}
ExprPtr until(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::Until, std::move(a), std::move(b));
}
ExprPtr since(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::Since, std::move(a), std::move(b));
}

ExprPtr forall_attr(ExprPtr attr, ExprPtr then) {
  return negation(
      exists_attr(Expr::Cmp::GE, 1, conj(std::move(attr), negation(std::move(then)))));
}

const ExprPtr* DlrKb::find_definition(const std::string& name) const {
  for (const auto& [n, def] : definitions)
    if (n == name) return &def;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Translation
// ---------------------------------------------------------------------------

namespace {

std::string set_display_name(const TransitionConstraint& c) {
  std::string word;
  if (c.quantitative()) word += 'q';
  word += c.kind == TransitionKind::Extension ? "ext" : "chg";
  if (c.subject == SubjectKind::Relationship) word += 'R';
  if (c.subject == SubjectKind::Attribute) word += 'A';
  if (c.tense == Tense::Past) word += '-';
  if (c.quantitative()) word += "^" + std::to_string(*c.offset);
  return word + "(" + c.source + "," + c.target + ")";
}

std::string future_set_name(const TransitionConstraint& c) {
  TransitionConstraint f = c;
  f.tense = Tense::Future;
  return set_display_name(f);
}

class Translator {
public:
  Translator(const Schema& schema, SemanticsVariant variant)
      : schema_(schema), variant_(variant) {}

  DlrKb run() {
    attribute_typing();
    isa_axioms();
    rel_signatures();
    att_axioms();
    cardinalities();
    groups();
    identifiers();
    markings();
    transitions();
    dedupe();
    return std::move(kb_);
  }

private:
  void add(ExprPtr lhs, ExprPtr rhs, std::string provenance,
           bool approximate = false) {
    Axiom ax;
    ax.form = Axiom::Form::Inclusion;
    ax.lhs = std::move(lhs);
    ax.rhs = std::move(rhs);
    ax.provenance = std::move(provenance);
    ax.approximate = approximate;
    kb_.axioms.push_back(std::move(ax));
  }

  ExprPtr rel_expr(const std::string& name) const {
    const RelDecl* r = schema_.find_relationship(name);
    return rname(name, r ? r->arity() : 2);
  }

  ExprPtr endpoint(const TransitionConstraint& c,
                   const std::string& name) const {
    switch (c.subject) {
      case SubjectKind::Class: return cname(name);
      case SubjectKind::Relationship: return rel_expr(name);
      case SubjectKind::Attribute: return aname(name);
    }
    return cname(name);
  }

  void attribute_typing() {
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes)
        add(aname(qualify(c.name, a.name)),
            conj(attr_select(Expr::Field::From, top()),
                 attr_select(Expr::Field::To, top())),
            "att " + qualify(c.name, a.name));
  }

  void isa_axioms() {
    for (const auto& [sub, super] : schema_.isa_c)
      add(cname(sub), cname(super), "isa " + sub + " " + super);
    for (const auto& [sub, super] : schema_.isa_r)
      add(rel_expr(sub), rel_expr(super), "isar " + sub + " " + super);
    for (const auto& [u1, u2] : schema_.isa_u) {
      const RelDecl* r1 = schema_.find_relationship(u1.rel);
      const RelDecl* r2 = schema_.find_relationship(u2.rel);
      add(exists_role(Expr::Cmp::GE, 1, *r1->role_position(u1.role), u1.role,
                      rel_expr(u1.rel)),
          exists_role(Expr::Cmp::GE, 1, *r2->role_position(u2.role), u2.role,
                      rel_expr(u2.rel)),
          "isau " + u1.rel + "." + u1.role + " " + u2.rel + "." + u2.role);
    }
  }

  void rel_signatures() {
    for (const auto& r : schema_.relationships) {
      ExprPtr rhs;
      for (std::size_t i = 0; i < r.roles.size(); ++i) {
        ExprPtr part =
            select(i, r.arity(), r.roles[i].name, cname(r.roles[i].player));
        rhs = rhs ? conj(std::move(rhs), std::move(part)) : std::move(part);
      }
      add(rname(r.name, r.arity()), std::move(rhs), "rel " + r.name);
    }
  }

  void att_axioms() {
    for (const auto& c : schema_.classes) {
      if (c.attributes.empty()) continue;
      ExprPtr rhs;
      for (const auto& a : c.attributes) {
        const std::string q = qualify(c.name, a.name);
        ExprPtr part;
        if (a.card.min >= 1)
          part = exists_attr(Expr::Cmp::GE, 1, aname(q));
        ExprPtr typing = forall_attr(
            aname(q), attr_select(Expr::Field::To, dname(a.domain)));
        part = part ? conj(std::move(part), std::move(typing))
                    : std::move(typing);
        rhs = rhs ? conj(std::move(rhs), std::move(part)) : std::move(part);
      }
      add(cname(c.name), std::move(rhs), "att " + c.name);
    }
  }

  void cardinalities() {
    for (const auto& r : schema_.relationships)
      for (std::size_t i = 0; i < r.roles.size(); ++i) {
        const RoleDecl& role = r.roles[i];
        if (role.card == kDefaultRoleCard) continue;
        ExprPtr rhs;
        if (role.card.min >= 1)
          rhs = exists_role(Expr::Cmp::GE, role.card.min, i, role.name,
                            rel_expr(r.name));
        if (role.card.max) {
          ExprPtr le = exists_role(Expr::Cmp::LE, *role.card.max, i, role.name,
                                   rel_expr(r.name));
          rhs = rhs ? conj(std::move(rhs), std::move(le)) : std::move(le);
        }
        if (rhs)
          add(cname(role.player), std::move(rhs),
              "card_R " + r.name + "." + role.name);
      }
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        if (a.card.min == 0 && !a.card.max) continue;
        const std::string q = qualify(c.name, a.name);
        ExprPtr rhs;
        if (a.card.min >= 1)
          rhs = exists_attr(Expr::Cmp::GE, a.card.min, aname(q));
        if (a.card.max) {
          ExprPtr le = exists_attr(Expr::Cmp::LE, *a.card.max, aname(q));
          rhs = rhs ? conj(std::move(rhs), std::move(le)) : std::move(le);
        }
        if (rhs) add(cname(c.name), std::move(rhs), "card_A " + q);
      }
  }

  void groups() {
    auto expand_disj = [&](const Group& g, bool rel, const char* tag) {
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        ExprPtr rhs = rel ? rel_expr(g.super) : cname(g.super);
        for (std::size_t j = i + 1; j < g.members.size(); ++j)
          rhs = conj(std::move(rhs),
                     negation(rel ? rel_expr(g.members[j])
                                  : cname(g.members[j])));
        add(rel ? rel_expr(g.members[i]) : cname(g.members[i]), std::move(rhs),
            std::string(tag) + " " + g.super);
      }
    };
    for (const auto& g : schema_.disj_c) expand_disj(g, false, "disj_C");
    for (const auto& g : schema_.disj_r) expand_disj(g, true, "disj_R");
    for (const auto& g : schema_.cover) {
      for (const auto& m : g.members)
        add(cname(m), cname(g.super), "cover " + g.super);
      ExprPtr rhs;
      for (const auto& m : g.members)
        rhs = rhs ? disj(std::move(rhs), cname(m)) : cname(m);
      add(cname(g.super), std::move(rhs), "cover " + g.super);
    }
  }

  void identifiers() {
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        if (!a.is_id) continue;
        const std::string q = qualify(c.name, a.name);
        add(cname(c.name),
            exists_attr(Expr::Cmp::EQ, 1, always_any(aname(q))),
            "id " + q, /*approximate=*/true);
        Axiom unique;
        unique.form = Axiom::Form::IdUniqueness;
        unique.cls = c.name;
        unique.attr = q;
        unique.provenance = "id " + q;
        unique.approximate = true;
        kb_.axioms.push_back(std::move(unique));
      }
  }

  void markings() {
    for (const auto& c : schema_.classes) {
      if (c.temporality == Temporality::Snapshot)
        add(cname(c.name), always_any(cname(c.name)), "class " + c.name + " snapshot");
      else if (c.temporality == Temporality::Temporary)
        add(cname(c.name), sometime_any(negation(cname(c.name))),
            "class " + c.name + " temporal");
    }
    for (const auto& r : schema_.relationships) {
      if (r.temporality == Temporality::Snapshot)
        add(rel_expr(r.name), always_any(rel_expr(r.name)),
            "rel " + r.name + " snapshot");
      else if (r.temporality == Temporality::Temporary)
        add(rel_expr(r.name), sometime_any(negation(rel_expr(r.name))),
            "rel " + r.name + " temporal");
    }
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        const std::string q = qualify(c.name, a.name);
        if (a.marking == Temporality::Snapshot) {
          add(aname(q), always_any(aname(q)), "att " + q + " snapshot");
          add(cname(c.name), forall_attr(aname(q), always_any(aname(q))),
              "att-s " + q);
        } else if (a.marking == Temporality::Temporary) {
          add(aname(q), sometime_any(negation(aname(q))),
              "att " + q + " temporal");
          add(cname(c.name),
              forall_attr(aname(q), sometime_any(negation(aname(q)))),
              "att-t " + q);
        }
      }
  }

  // The condition an obligation witnesses: always the future-form set.
  ExprPtr future_condition_expr(const TransitionConstraint& c) const {
    ExprPtr src = endpoint(c, c.source);
    ExprPtr tgt = endpoint(c, c.target);
    unsigned n = c.step();
    if (c.kind == TransitionKind::Extension)
      return conj(conj(src, negation(tgt)), next_n(endpoint(c, c.target), n));
    return conj(conj(src, negation(tgt)),
                next_n(conj(negation(endpoint(c, c.source)),
                            endpoint(c, c.target)),
                       n));
  }

  ExprPtr past_condition_expr(const TransitionConstraint& c) const {
    ExprPtr src = endpoint(c, c.source);
    ExprPtr tgt = endpoint(c, c.target);
    unsigned n = c.step();
    if (c.kind == TransitionKind::Extension)
      return conj(conj(src, tgt), prev_n(negation(endpoint(c, c.target)), n));
    return conj(conj(negation(src), tgt),
                prev_n(conj(endpoint(c, c.source),
                            negation(endpoint(c, c.target))),
                       n));
  }

  ExprPtr chga_condition_expr(const TransitionConstraint& c) const {
    ExprPtr fires = conj(negation(aname(c.source)), aname(c.target));
    // The unquantified form looks ahead existentially; Q pins t+n.
    ExprPtr ahead = c.quantitative()
                        ? next_n(std::move(fires), c.step())
                        : sometime_future(
                              conj(aname(c.target), negation(aname(c.source))));
    return conj(conj(aname(c.source), negation(aname(c.target))),
                std::move(ahead));
  }

  void define_set(const std::string& name, ExprPtr condition,
                  const std::string& provenance) {
    if (kb_.find_definition(name)) return;
    kb_.definitions.emplace_back(name, condition);
    add(set_name(name, condition->category, condition->arity), condition,
        provenance);
  }

  void transitions() {
    for (const auto& c : schema_.transitions) {
      const std::string keyword = transition_keyword(c);
      const std::string provenance =
          keyword + " " + c.source + "->" + c.target;
      if (c.kind == TransitionKind::Frozen) {
        add(aname(c.source), always_future(aname(c.source)),
            "FRZ " + c.source);
        continue;
      }
      if (c.subject == SubjectKind::Attribute) {
        define_set(set_display_name(c), chga_condition_expr(c), provenance);
        continue;
      }
      const Category cat = c.subject == SubjectKind::Class
                               ? Category::Concept
                               : Category::Relation;
      const std::size_t arity =
          cat == Category::Relation
              ? schema_.find_relationship(c.source)->arity()
              : 2;
      ExprPtr own_cond = c.tense == Tense::Future ? future_condition_expr(c)
                                                  : past_condition_expr(c);
      const std::string own_name = set_display_name(c);
      // Optional transitions contribute their defining axiom (licensing);
      // mandatory past ones witness the future-form set instead.
      if (c.tense == Tense::Future || c.modality == Modality::Optional ||
          c.persistent)
        define_set(own_name, own_cond, provenance);
      if (c.modality == Modality::Mandatory) {
        if (c.tense == Tense::Future) {
          add(endpoint(c, c.source),
              sometime_future(set_name(own_name, cat, arity)), provenance);
        } else {
          TransitionConstraint fut = c;
          fut.tense = Tense::Future;
          const std::string fname = future_set_name(c);
          define_set(fname, future_condition_expr(fut), provenance);
          const std::string& trigger =
              variant_ == SemanticsVariant::TargetTriggered ? c.target
                                                            : c.source;
          add(endpoint(c, trigger),
              sometime_past(set_name(fname, cat, arity)), provenance);
        }
      }
      if (c.persistent)
        add(set_name(own_name, cat, arity),
            always_future(endpoint(c, c.target)), provenance);
    }
  }

  void dedupe() {
    std::vector<Axiom> unique;
    std::set<std::string> seen;
    for (auto& ax : kb_.axioms) {
      std::string key = axiom_to_text(ax);
      if (seen.insert(key).second) unique.push_back(std::move(ax));
    }
    kb_.axioms = std::move(unique);
  }

  const Schema& schema_;
  SemanticsVariant variant_;
  DlrKb kb_;
};

}  // namespace

DlrKb translate(const Schema& schema, SemanticsVariant variant) {
  return Translator(schema, variant).run();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct Universe {
  const TemporalState& state;

  std::set<ObjectId> objects() const {
    return {state.objects.begin(), state.objects.end()};
  }

  std::set<Tuple> tuples(std::size_t arity) const {
    std::set<Tuple> out;
    std::vector<Tuple> frontier{Tuple{}};
    for (std::size_t i = 0; i < arity; ++i) {
      std::vector<Tuple> grown;
      for (const auto& partial : frontier)
        for (const auto& o : state.objects) {
          Tuple t = partial;
          t.push_back(o);
          grown.push_back(std::move(t));
        }
      frontier = std::move(grown);
    }
    for (auto& t : frontier) out.insert(std::move(t));
    return out;
  }

  std::set<AttrPair> pairs() const {
    std::set<AttrPair> out;
    for (const auto& o : state.objects)
      for (const auto& [dom, vals] : state.domains)
        for (const auto& v : vals) out.insert({o, v});
    return out;
  }
};

template <typename T>
std::set<T> set_minus(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  for (const auto& x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

template <typename T>
std::set<T> set_and(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  for (const auto& x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

template <typename T>
std::set<T> set_or(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

class Evaluator {
public:
  Evaluator(const TemporalState& state, const DlrKb* defs)
      : state_(state), defs_(defs) {}

  Extension eval(const ExprPtr& e, int t) {
    Extension ext;
    ext.category = e->category;
    ext.arity = e->arity;
    const bool in_window = state_.in_window(t);
    switch (e->op) {
      case Expr::Op::Top:
        if (!in_window) break;
        fill_top(ext);
        break;
      case Expr::Op::Bottom:
        break;
      case Expr::Op::Name:
        if (!in_window) break;
        name_ext(*e, t, ext);
        break;
      case Expr::Op::Not: {
        if (!in_window) break;
        Extension child = eval(e->a, t);
        fill_top(ext);
        ext.objects = set_minus(ext.objects, child.objects);
        ext.tuples = set_minus(ext.tuples, child.tuples);
        ext.pairs = set_minus(ext.pairs, child.pairs);
        break;
      }
      case Expr::Op::And: {
        Extension a = eval(e->a, t), b = eval(e->b, t);
        ext.objects = set_and(a.objects, b.objects);
        ext.tuples = set_and(a.tuples, b.tuples);
        ext.pairs = set_and(a.pairs, b.pairs);
        break;
      }
      case Expr::Op::Or: {
        Extension a = eval(e->a, t), b = eval(e->b, t);
        ext.objects = set_or(a.objects, b.objects);
        ext.tuples = set_or(a.tuples, b.tuples);
        ext.pairs = set_or(a.pairs, b.pairs);
        break;
      }
      case Expr::Op::ExistsRole: {
        if (!in_window) break;
        Extension rel = eval(e->a, t);
        for (const auto& o : state_.objects) {
          unsigned count = 0;
          for (const auto& tuple : rel.tuples)
            if (tuple[e->position] == o) ++count;
          if (compare(count, e->cmp, e->k)) ext.objects.insert(o);
        }
        break;
      }
      case Expr::Op::ExistsAttr: {
        if (!in_window) break;
        Extension attr = eval(e->a, t);
        for (const auto& o : state_.objects) {
          unsigned count = 0;
          for (const auto& pair : attr.pairs)
            if (pair.first == o) ++count;
          if (compare(count, e->cmp, e->k)) ext.objects.insert(o);
        }
        break;
      }
      case Expr::Op::Select: {
        if (!in_window) break;
        Extension c = eval(e->a, t);
        for (auto& tuple : Universe{state_}.tuples(e->arity))
          if (c.objects.count(tuple[e->position])) ext.tuples.insert(tuple);
        break;
      }
      case Expr::Op::AttrSelect: {
        if (!in_window) break;
        if (e->field == Expr::Field::From) {
          Extension c = eval(e->a, t);
          for (const auto& pair : Universe{state_}.pairs())
            if (c.objects.count(pair.first)) ext.pairs.insert(pair);
        } else {
          // To:⊤ keeps every pair; To:D keeps pairs whose value is in D.
          if (e->a->op == Expr::Op::Top) {
            ext.pairs = Universe{state_}.pairs();
          } else {
            std::set<Value> values = domain_values(e->a);
            for (const auto& pair : Universe{state_}.pairs())
              if (values.count(pair.second)) ext.pairs.insert(pair);
          }
        }
        break;
      }
      case Expr::Op::Next:
        if (in_window) ext = eval(e->a, t + 1);
        break;
      case Expr::Op::Prev:
        if (in_window) ext = eval(e->a, t - 1);
        break;
      case Expr::Op::SometimeFuture:
        for (int v = t + 1; v < state_.horizon; ++v)
          merge(ext, eval(e->a, v));
        break;
      case Expr::Op::SometimePast:
        for (int v = 0; v < t; ++v) merge(ext, eval(e->a, v));
        break;
      case Expr::Op::AlwaysFuture: {
        if (!in_window) break;
        fill_top(ext);
        for (int v = t + 1; v < state_.horizon; ++v) restrict(ext, eval(e->a, v));
        break;
      }
      case Expr::Op::AlwaysPast: {
        if (!in_window) break;
        fill_top(ext);
        for (int v = 0; v < t; ++v) restrict(ext, eval(e->a, v));
        break;
      }
      case Expr::Op::SometimeAny:
        for (int v = 0; v < state_.horizon; ++v) merge(ext, eval(e->a, v));
        break;
      case Expr::Op::AlwaysAny: {
        if (!in_window) break;
        fill_top(ext);
        for (int v = 0; v < state_.horizon; ++v) restrict(ext, eval(e->a, v));
        break;
      }
      case Expr::Op::Until: {
        for (int v = t + 1; v < state_.horizon; ++v) {
          Extension candidate = eval(e->b, v);
          for (int w = t + 1; w < v; ++w) restrict(candidate, eval(e->a, w));
          merge(ext, candidate);
        }
        break;
      }
      case Expr::Op::Since: {
        for (int v = 0; v < t; ++v) {
          Extension candidate = eval(e->b, v);
          for (int w = v + 1; w < t; ++w) restrict(candidate, eval(e->a, w));
          merge(ext, candidate);
        }
        break;
      }
    }
    return ext;
  }

private:
  static bool compare(unsigned count, Expr::Cmp cmp, unsigned k) {
    switch (cmp) {
      case Expr::Cmp::GE: return count >= k;
      case Expr::Cmp::LE: return count <= k;
      case Expr::Cmp::EQ: return count == k;
    }
    return false;
  }

  void fill_top(Extension& ext) {
    Universe u{state_};
    switch (ext.category) {
      case Category::Concept: ext.objects = u.objects(); break;
      case Category::Relation: ext.tuples = u.tuples(ext.arity); break;
      case Category::Attribute: ext.pairs = u.pairs(); break;
    }
  }

  static void merge(Extension& into, const Extension& from) {
    into.objects.insert(from.objects.begin(), from.objects.end());
    into.tuples.insert(from.tuples.begin(), from.tuples.end());
    into.pairs.insert(from.pairs.begin(), from.pairs.end());
  }

  static void restrict(Extension& into, const Extension& keep) {
    into.objects = set_and(into.objects, keep.objects);
    into.tuples = set_and(into.tuples, keep.tuples);
    into.pairs = set_and(into.pairs, keep.pairs);
  }

  std::set<Value> domain_values(const ExprPtr& e) const {
    std::set<Value> out;
    if (e->op == Expr::Op::Name && e->name_kind == Expr::NameKind::Domain) {
      auto it = state_.domains.find(e->name);
      if (it != state_.domains.end())
        out.insert(it->second.begin(), it->second.end());
    }
    return out;
  }

  void name_ext(const Expr& e, int t, Extension& ext) {
    switch (e.name_kind) {
      case Expr::NameKind::Class:
        ext.objects = state_.class_ext(e.name, t);
        break;
      case Expr::NameKind::Relationship:
        ext.tuples = state_.rel_ext(e.name, t);
        break;
      case Expr::NameKind::Attribute:
        ext.pairs = state_.attr_ext(e.name, t);
        break;
      case Expr::NameKind::Domain: {
        auto it = state_.domains.find(e.name);
        if (it != state_.domains.end())
          ext.objects.insert(it->second.begin(), it->second.end());
        break;
      }
      case Expr::NameKind::TransitionSet: {
        const ExprPtr* def = defs_ ? defs_->find_definition(e.name) : nullptr;
        if (!def)
          throw Error("unknown-name",
                      "transition set '" + e.name + "' has no definition");
        ext = eval(*def, t);
        break;
      }
    }
  }

  const TemporalState& state_;
  const DlrKb* defs_;
};

}  // namespace

bool Extension::subset_of(const Extension& other) const {
  for (const auto& o : objects)
    if (!other.objects.count(o)) return false;
  for (const auto& t : tuples)
    if (!other.tuples.count(t)) return false;
  for (const auto& p : pairs)
    if (!other.pairs.count(p)) return false;
  return true;
}

std::vector<std::string> Extension::difference_texts(
    const Extension& other) const {
  std::vector<std::string> out;
  for (const auto& o : objects)
    if (!other.objects.count(o)) out.push_back(o);
  for (const auto& t : tuples)
    if (!other.tuples.count(t)) {
      std::string s = "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i];
      }
      out.push_back(s + ")");
    }
  for (const auto& p : pairs)
    if (!other.pairs.count(p))
      out.push_back("(" + p.first + "," + p.second + ")");
  return out;
}

Extension eval_expr(const ExprPtr& expr, const TemporalState& state, int t,
                    const DlrKb* defs) {
  return Evaluator(state, defs).eval(expr, t);
}

SatisfactionResult kb_satisfied(const DlrKb& kb, const TemporalState& state) {
  SatisfactionResult result;
  Evaluator evaluator(state, &kb);
  for (std::size_t i = 0; i < kb.axioms.size(); ++i) {
    const Axiom& ax = kb.axioms[i];
    for (int t = 0; t < state.horizon; ++t) {
      if (ax.form == Axiom::Form::IdUniqueness) {
        std::map<Value, unsigned> holders;
        for (const auto& [o, v] : state.attr_ext(ax.attr, t))
          if (state.in_class(ax.cls, t, o)) ++holders[v];
        for (const auto& [v, n] : holders)
          if (n > 1) {
            result.satisfied = false;
            result.counterexamples.push_back({i, t, v});
          }
        continue;
      }
      Extension lhs = evaluator.eval(ax.lhs, t);
      Extension rhs = evaluator.eval(ax.rhs, t);
      if (!lhs.subset_of(rhs)) {
        result.satisfied = false;
        for (const auto& e : lhs.difference_texts(rhs))
          result.counterexamples.push_back({i, t, e});
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

bool needs_parens(const Expr& e) {
  switch (e.op) {
    case Expr::Op::And:
    case Expr::Op::Or:
    case Expr::Op::Until:
    case Expr::Op::Since:
      return true;
    default:
      return false;
  }
}

std::string print(const ExprPtr& e);

std::string child(const ExprPtr& e) {
  std::string s = print(e);
  if (needs_parens(*e)) return "(" + s + ")";
  return s;
}

std::string cmp_text(Expr::Cmp cmp) {
  switch (cmp) {
    case Expr::Cmp::GE: return ">=";
    case Expr::Cmp::LE: return "<=";
    case Expr::Cmp::EQ: return "=";
  }
  return "?";
}

std::string print(const ExprPtr& e) {
  switch (e->op) {
    case Expr::Op::Top:
      if (e->category == Category::Relation)
        return "top" + std::to_string(e->arity);
      if (e->category == Category::Attribute) return "topA";
      return "top";
    case Expr::Op::Bottom: return "bot";
    case Expr::Op::Name: return e->name;
    case Expr::Op::Not: return "!" + child(e->a);
    case Expr::Op::And: return print(e->a) + " & " + child(e->b);
    case Expr::Op::Or: return print(e->a) + " | " + child(e->b);
    case Expr::Op::ExistsRole:
      return "exists" + cmp_text(e->cmp) + std::to_string(e->k) + "[" +
             (e->position_label.empty() ? std::to_string(e->position + 1)
                                        : e->position_label) +
             "]" + child(e->a);
    case Expr::Op::ExistsAttr: {
      std::string quantifier =
          e->cmp == Expr::Cmp::GE && e->k == 1
              ? "exists"
              : "exists" + cmp_text(e->cmp) + std::to_string(e->k);
      return quantifier + "[From]" + child(e->a);
    }
    case Expr::Op::Select:
      return "[" +
             (e->position_label.empty() ? std::to_string(e->position + 1)
                                        : e->position_label) +
             "/" + std::to_string(e->arity) + "]" + child(e->a);
    case Expr::Op::AttrSelect:
      return (e->field == Expr::Field::From ? "From:" : "To:") + child(e->a);
    case Expr::Op::Next: return "X+ " + child(e->a);
    case Expr::Op::Prev: return "X- " + child(e->a);
    case Expr::Op::SometimeFuture: return "F " + child(e->a);
    case Expr::Op::SometimePast: return "P " + child(e->a);
    case Expr::Op::AlwaysFuture: return "G " + child(e->a);
    case Expr::Op::AlwaysPast: return "H " + child(e->a);
    case Expr::Op::SometimeAny: return "F* " + child(e->a);
    case Expr::Op::AlwaysAny: return "G* " + child(e->a);
    case Expr::Op::Until: return child(e->a) + " U " + child(e->b);
    case Expr::Op::Since: return child(e->a) + " S " + child(e->b);
  }
  return "?";
}

}  // namespace

std::string expr_to_text(const ExprPtr& expr) { return print(expr); }

std::string axiom_to_text(const Axiom& axiom) {
  if (axiom.form == Axiom::Form::IdUniqueness)
    return "top [= exists<=1[To](" + axiom.attr + " & From:" + axiom.cls + ")";
  return print(axiom.lhs) + " [= " + print(axiom.rhs);
}

std::string kb_to_text(const DlrKb& kb) {
  std::ostringstream out;
  for (const auto& ax : kb.axioms) {
    out << axiom_to_text(ax);
    if (!ax.provenance.empty()) {
      out << "  # " << ax.provenance;
      if (ax.approximate) out << " (approximate)";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace trend::dlr

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "trend/model.hpp"
#include "trend/semantics.hpp"
#include "trend/state.hpp"

namespace trend::dlr {

enum class Category { Concept, Relation, Attribute };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One node of a DLR_US expression. Concepts denote object sets,
/// relations n-tuple sets, attributes (object, value) pair sets; the
/// temporal operators apply uniformly to all three.
struct Expr {
  enum class Op {
    Top, Bottom,       // ⊤ / ⊥ of the category (relations carry arity)
    Name,              // atomic name, see NameKind
    Not, And, Or,
    ExistsRole,        // concept: ∃^{cmp k}[pos] R
    ExistsAttr,        // concept: ∃^{cmp k}[From] A
    Select,            // relation: [pos/arity] C
    AttrSelect,        // attribute: From:C | To:D | F:⊤
    Next, Prev,        // ⊕ / ⊖
    SometimeFuture, SometimePast,  // ◇⁺ / ◇⁻
    AlwaysFuture, AlwaysPast,      // □⁺ / □⁻
    SometimeAny, AlwaysAny,        // ◇* / □*
    Until, Since,
  };
  enum class Cmp { GE, LE, EQ };
  enum class NameKind { Class, Relationship, Attribute, Domain, TransitionSet };
  enum class Field { From, To };

  Op op = Op::Top;
  Category category = Category::Concept;
  std::string name;
  NameKind name_kind = NameKind::Class;
  ExprPtr a, b;
  Cmp cmp = Cmp::GE;
  unsigned k = 1;
  std::size_t position = 0;      // 0-based role/selection index
  std::string position_label;    // role name for printing, may be empty
  std::size_t arity = 2;         // relation expressions
  Field field = Field::From;     // AttrSelect
};

ExprPtr top();
ExprPtr bottom();
ExprPtr top_rel(std::size_t arity);
ExprPtr top_attr();
ExprPtr cname(std::string name);
ExprPtr rname(std::string name, std::size_t arity);
ExprPtr aname(std::string qualified);
ExprPtr dname(std::string domain);
ExprPtr set_name(std::string name, Category category, std::size_t arity = 2);
ExprPtr negation(ExprPtr e);
ExprPtr conj(ExprPtr a, ExprPtr b);
ExprPtr disj(ExprPtr a, ExprPtr b);
ExprPtr exists_role(Expr::Cmp cmp, unsigned k, std::size_t position,
                    std::string label, ExprPtr rel);
ExprPtr exists_attr(Expr::Cmp cmp, unsigned k, ExprPtr attr);
ExprPtr select(std::size_t position, std::size_t arity, std::string label,
               ExprPtr concept_arg);
ExprPtr attr_select(Expr::Field field, ExprPtr arg);
ExprPtr next(ExprPtr e);
ExprPtr prev(ExprPtr e);
ExprPtr next_n(ExprPtr e, unsigned n);
ExprPtr prev_n(ExprPtr e, unsigned n);
ExprPtr sometime_future(ExprPtr e);
ExprPtr sometime_past(ExprPtr e);
ExprPtr always_future(ExprPtr e);
ExprPtr always_past(ExprPtr e);
ExprPtr sometime_any(ExprPtr e);
ExprPtr always_any(ExprPtr e);
ExprPtr until(ExprPtr a, ExprPtr b);
ExprPtr since(ExprPtr a, ExprPtr b);
/// ∀[F](A → X), stored in its ¬∃[F](A ⊓ ¬X) encoding.
ExprPtr forall_attr(ExprPtr attr, ExprPtr then);

/// One knowledge-base axiom. Most are plain inclusions; the id uniqueness
/// pattern ("⊤ ⊑ ∃^{≤1}[To](A ⊓ From:C)") mixes relation and attribute
/// syntax in the mapping, so it is carried as a dedicated form evaluated
/// over attribute pairs and printed in the mapping's notation.
struct Axiom {
  enum class Form { Inclusion, IdUniqueness };
  Form form = Form::Inclusion;
  ExprPtr lhs, rhs;           // Inclusion
  std::string cls, attr;      // IdUniqueness
  std::string provenance;     // originating schema element
  bool approximate = false;   // id axioms: logic lacks full identification
};

struct DlrKb {
  std::vector<Axiom> axioms;
  /// Transition-set names are evaluated by definition: name → condition.
  std::vector<std::pair<std::string, ExprPtr>> definitions;

  const ExprPtr* find_definition(const std::string& name) const;
};

/// Maps a schema into a DLR_US knowledge base, one axiom pattern per
/// construct. Deterministic and total on valid schemas; axiom count
/// linear in schema size. The semantics variant must match the one used
/// with check_state for the oracle pair to agree.
DlrKb translate(const Schema& schema,
                SemanticsVariant variant = SemanticsVariant::TargetTriggered);

/// Extension of an expression at one time point.
struct Extension {
  Category category = Category::Concept;
  std::size_t arity = 2;
  std::set<ObjectId> objects;
  std::set<Tuple> tuples;
  std::set<AttrPair> pairs;

  bool subset_of(const Extension& other) const;
  std::vector<std::string> difference_texts(const Extension& other) const;
};

/// Finite-trace evaluation over the state's window; ⊕ at H−1 and ⊖ at 0
/// yield the empty extension. Transition-set names resolve through `defs`.
Extension eval_expr(const ExprPtr& expr, const TemporalState& state, int t,
                    const DlrKb* defs = nullptr);

struct CounterExample {
  std::size_t axiom_index = 0;
  int t = 0;
  std::string element;
};

struct SatisfactionResult {
  bool satisfied = true;
  std::vector<CounterExample> counterexamples;
};

/// True iff every axiom's left extension is included in its right
/// extension at every time point of the window.
SatisfactionResult kb_satisfied(const DlrKb& kb, const TemporalState& state);

std::string expr_to_text(const ExprPtr& expr);
std::string axiom_to_text(const Axiom& axiom);
/// .dlr serialization: one axiom per line, provenance as trailing comment.
std::string kb_to_text(const DlrKb& kb);

}  // namespace trend::dlr

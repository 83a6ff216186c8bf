#include "trend/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_set>

namespace trend {

namespace {

enum class Tok {
  Ident, Nat, String, LBrace, RBrace, LBracket, RBracket, LParen, RParen,
  Comma, Colon, Semi, Arrow, Minus, Dot, Star, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      Token t;
      t.span = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
        t.kind = Tok::Nat;
      } else if (c == '"') {
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n')
          advance();
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          t.span.end = pos_;
          diags.push_back({"syntax", "unterminated string literal", t.span,
                           Severity::Error});
        } else {
          advance();
        }
        t.kind = Tok::String;
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        t.kind = Tok::Arrow;
      } else {
        advance();
        switch (c) {
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case ':': t.kind = Tok::Colon; break;
          case ';': t.kind = Tok::Semi; break;
          case '-': t.kind = Tok::Minus; break;
          case '.': t.kind = Tok::Dot; break;
          case '*': t.kind = Tok::Star; break;
          default:
            t.span.end = pos_;
            diags.push_back({"syntax",
                             std::string("unexpected character '") + c + "'",
                             t.span, Severity::Error});
            continue;  // drop it and keep lexing
        }
      }
      t.span.end = pos_;
      t.text = std::string(src_.substr(t.span.begin, pos_ - t.span.begin));
      if (t.kind == Tok::String && t.text.size() >= 2)
        t.text = t.text.substr(1, t.text.size() - 2);
      out.push_back(std::move(t));
    }
  }

private:
  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here() const { return {pos_, pos_, line_, col_}; }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const std::unordered_set<std::string> kReserved = {
    "class", "rel", "isa", "isar", "isau", "disjoint", "disjointr",
    "cover", "chronon", "temporal", "snapshot", "id", "frozen",
    "after", "optional", "mandatory"};

struct TransWord {
  TransitionKind kind;
  SubjectKind subject;
  bool past;
  bool mandatory;
  bool quantitative;
  bool persistent;
};

// Recognizes [P][M][Q](EXT|CHG|DEX|DEV)[R|A] and FRZ, case-insensitively.
// An all-lowercase spelling is a past-tense alias.
std::optional<TransWord> transition_word(const std::string& word) {
  std::string l = lower(word);
  TransWord w{};
  w.past = (l == word);
  if (l == "frz") {
    w.kind = TransitionKind::Frozen;
    w.subject = SubjectKind::Attribute;
    w.past = false;
    return w;
  }
  std::size_t i = 0;
  if (i < l.size() && l[i] == 'p') { w.persistent = true; ++i; }
  if (i < l.size() && l[i] == 'm') { w.mandatory = true; ++i; }
  if (i < l.size() && l[i] == 'q') { w.quantitative = true; ++i; }
  if (l.compare(i, 3, "ext") == 0 || l.compare(i, 3, "dex") == 0)
    w.kind = TransitionKind::Extension;
  else if (l.compare(i, 3, "chg") == 0 || l.compare(i, 3, "dev") == 0)
    w.kind = TransitionKind::Change;
  else
    return std::nullopt;
  i += 3;
  w.subject = SubjectKind::Class;
  if (i < l.size() && l[i] == 'r') { w.subject = SubjectKind::Relationship; ++i; }
  else if (i < l.size() && l[i] == 'a') { w.subject = SubjectKind::Attribute; ++i; }
  if (i != l.size()) return std::nullopt;
  return w;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  RawSchema run() {
    while (!at(Tok::End)) {
      if (!statement()) resync();
    }
    return std::move(raw_);
  }

private:
  const Token& peek(int ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return at(Tok::Ident) && peek().text == w;
  }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool expect(Tok k, const char* what) {
    if (at(k)) {
      take();
      return true;
    }
    error(std::string("expected ") + what);
    return false;
  }

  void error(const std::string& msg) {
    diags_.push_back({"syntax", msg + " (got '" + peek().text + "')",
                      peek().span, Severity::Error});
  }

  void resync() {
    while (!at(Tok::End) && !at(Tok::Semi)) take();
    if (at(Tok::Semi)) take();
  }

  std::optional<std::string> name(const char* what) {
    if (!at(Tok::Ident)) {
      error(std::string("expected ") + what);
      return std::nullopt;
    }
    if (kReserved.count(peek().text)) {
      error("reserved word '" + peek().text + "' cannot name a " + what);
      return std::nullopt;
    }
    return take().text;
  }

  std::optional<Temporality> temporality_opt() {
    if (at_word("temporal")) { take(); return Temporality::Temporary; }
    if (at_word("snapshot")) { take(); return Temporality::Snapshot; }
    return std::nullopt;
  }

  std::optional<Cardinality> card_opt() {
    if (!at(Tok::LBracket)) return std::nullopt;
    take();
    Cardinality c;
    if (!at(Tok::Nat)) { error("expected minimum cardinality"); return std::nullopt; }
    c.min = static_cast<unsigned>(std::stoul(take().text));
    if (!expect(Tok::Comma, "','")) return std::nullopt;
    if (at(Tok::Star)) {
      take();
      c.max.reset();
    } else if (at(Tok::Nat)) {
      c.max = static_cast<unsigned>(std::stoul(take().text));
    } else {
      error("expected maximum cardinality or '*'");
      return std::nullopt;
    }
    if (!expect(Tok::RBracket, "']'")) return std::nullopt;
    return c;
  }

  bool statement() {
    if (at_word("class")) return class_decl();
    if (at_word("rel")) return rel_decl();
    if (at_word("isa")) return isa_decl();
    if (at_word("isar")) return isar_decl();
    if (at_word("isau")) return isau_decl();
    if (at_word("disjoint")) return group_decl(raw_.disj_c);
    if (at_word("disjointr")) return group_decl(raw_.disj_r);
    if (at_word("cover")) return group_decl(raw_.cover);
    if (at_word("chronon")) return chronon_decl();
    if (at(Tok::Ident)) {
      if (auto w = transition_word(peek().text)) {
        take();
        return trans_decl(*w);
      }
    }
    error("expected a statement");
    return false;
  }

  bool class_decl() {
    take();  // class
    auto n = name("class name");
    if (!n) return false;
    ClassDecl decl;
    decl.name = *n;
    if (auto t = temporality_opt()) decl.temporality = *t;
    if (at(Tok::LBrace)) {
      take();
      while (!at(Tok::RBrace) && !at(Tok::End)) {
        if (!attr_decl(decl)) return false;
      }
      if (!expect(Tok::RBrace, "'}'")) return false;
    }
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.classes.push_back(std::move(decl));
    return true;
  }

  bool attr_decl(ClassDecl& cls) {
    auto n = name("attribute name");
    if (!n) return false;
    if (!expect(Tok::Colon, "':'")) return false;
    auto dom = name("domain name");
    if (!dom) return false;
    AttrDecl a;
    a.name = *n;
    a.domain = *dom;
    if (auto t = temporality_opt()) a.marking = *t;
    if (at_word("id")) { take(); a.is_id = true; }
    bool frozen = false;
    if (at_word("frozen")) { take(); frozen = true; }
    if (auto c = card_opt()) a.card = *c;
    if (!expect(Tok::Semi, "';'")) return false;
    if (frozen) {
      TransitionConstraint frz;
      frz.subject = SubjectKind::Attribute;
      frz.kind = TransitionKind::Frozen;
      frz.source = frz.target = qualify(cls.name, a.name);
      raw_.transitions.push_back(std::move(frz));
    }
    cls.attributes.push_back(std::move(a));
    return true;
  }

  bool rel_decl() {
    take();  // rel
    auto n = name("relationship name");
    if (!n) return false;
    RelDecl decl;
    decl.name = *n;
    if (auto t = temporality_opt()) decl.temporality = *t;
    if (!expect(Tok::LParen, "'('")) return false;
    while (true) {
      auto rn = name("role name");
      if (!rn) return false;
      if (!expect(Tok::Colon, "':'")) return false;
      auto pn = name("class name");
      if (!pn) return false;
      RoleDecl role;
      role.name = *rn;
      role.player = *pn;
      if (auto c = card_opt()) role.card = *c;
      decl.roles.push_back(std::move(role));
      if (at(Tok::Comma)) { take(); continue; }
      break;
    }
    if (!expect(Tok::RParen, "')'")) return false;
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.relationships.push_back(std::move(decl));
    return true;
  }

  bool isa_decl() {
    take();
    auto a = name("class name");
    auto b = a ? name("class name") : std::nullopt;
    if (!b) return false;
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.isa_c.emplace_back(*a, *b);
    return true;
  }

  bool isar_decl() {
    take();
    auto a = name("relationship name");
    auto b = a ? name("relationship name") : std::nullopt;
    if (!b) return false;
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.isa_r.emplace_back(*a, *b);
    return true;
  }

  std::optional<RoleRef> role_ref() {
    auto r = name("relationship name");
    if (!r) return std::nullopt;
    if (!expect(Tok::Dot, "'.'")) return std::nullopt;
    auto u = name("role name");
    if (!u) return std::nullopt;
    return RoleRef{*r, *u};
  }

  bool isau_decl() {
    take();
    auto a = role_ref();
    auto b = a ? role_ref() : std::nullopt;
    if (!b) return false;
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.isa_u.emplace_back(*a, *b);
    return true;
  }

  bool group_decl(std::vector<Group>& into) {
    take();  // keyword
    if (!expect(Tok::LBrace, "'{'")) return false;
    Group g;
    while (true) {
      auto m = name("member name");
      if (!m) return false;
      g.members.push_back(*m);
      if (at(Tok::Comma)) { take(); continue; }
      break;
    }
    if (!expect(Tok::RBrace, "'}'")) return false;
    auto super = name("superelement name");
    if (!super) return false;
    g.super = *super;
    if (!expect(Tok::Semi, "';'")) return false;
    into.push_back(std::move(g));
    return true;
  }

  bool chronon_decl() {
    take();
    if (!at(Tok::String)) {
      error("expected a quoted unit label");
      return false;
    }
    raw_.chronon_unit = take().text;
    return expect(Tok::Semi, "';'");
  }

  std::optional<std::string> subject(SubjectKind kind) {
    auto n = name(kind == SubjectKind::Relationship ? "relationship name"
                                                    : "class name");
    if (!n) return std::nullopt;
    if (kind == SubjectKind::Attribute) {
      if (!expect(Tok::Dot, "'.' (attribute subjects are Class.attr)"))
        return std::nullopt;
      auto a = name("attribute name");
      if (!a) return std::nullopt;
      return qualify(*n, *a);
    }
    if (at(Tok::Dot)) {
      error("qualified names are for attribute transitions only");
      return std::nullopt;
    }
    return n;
  }

  bool trans_decl(const TransWord& w) {
    TransitionConstraint t;
    t.kind = w.kind;
    t.subject = w.subject;
    t.persistent = w.persistent;
    t.modality = w.mandatory ? Modality::Mandatory : Modality::Optional;
    t.tense = w.past ? Tense::Past : Tense::Future;
    if (at(Tok::Minus)) {
      take();
      t.tense = Tense::Past;
    }
    auto src = subject(w.subject);
    if (!src) return false;
    t.source = *src;
    if (w.kind == TransitionKind::Frozen) {
      t.target = t.source;
      if (!expect(Tok::Semi, "';'")) return false;
      raw_.transitions.push_back(std::move(t));
      return true;
    }
    if (!expect(Tok::Arrow, "'->'")) return false;
    auto tgt = subject(w.subject);
    if (!tgt) return false;
    t.target = *tgt;
    if (at_word("after")) {
      take();
      if (!at(Tok::Nat)) {
        error("expected a chronon count after 'after'");
        return false;
      }
      t.offset = static_cast<unsigned>(std::stoul(take().text));
    }
    if (w.quantitative && !t.offset) {
      error("quantitative keyword needs an 'after <n>' clause");
      return false;
    }
    if (at_word("optional")) {
      take();
      if (w.mandatory) {
        error("keyword marks the transition mandatory, trailing word says optional");
        return false;
      }
    } else if (at_word("mandatory")) {
      take();
      t.modality = Modality::Mandatory;
    }
    if (!expect(Tok::Semi, "';'")) return false;
    raw_.transitions.push_back(std::move(t));
    return true;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  RawSchema raw_;
};

std::string card_text(const Cardinality& c) {
  std::string s = "[" + std::to_string(c.min) + ",";
  s += c.max ? std::to_string(*c.max) : "*";
  s += "]";
  return s;
}

const char* temporality_word(Temporality t) {
  switch (t) {
    case Temporality::Snapshot: return " snapshot";
    case Temporality::Temporary: return " temporal";
    case Temporality::Mixed: return "";
  }
  return "";
}

std::string kind_word(const TransitionConstraint& t, KeywordStyle style) {
  std::string base;
  if (t.kind == TransitionKind::Extension)
    base = style == KeywordStyle::DevDex ? "DEX" : "EXT";
  else
    base = style == KeywordStyle::DevDex ? "DEV" : "CHG";
  if (t.subject == SubjectKind::Relationship) base += "R";
  if (t.subject == SubjectKind::Attribute) base += "A";
  std::string word = t.persistent ? "P" + base : base;
  if (t.tense == Tense::Past) word += "-";
  return word;
}

std::string transition_stmt(const TransitionConstraint& t,
                            KeywordStyle style) {
  std::string line = kind_word(t, style) + " " + t.source + " -> " + t.target;
  if (t.offset) line += " after " + std::to_string(*t.offset);
  if (t.modality == Modality::Mandatory) line += " mandatory";
  line += ";";
  return line;
}

}  // namespace

ParseResult parse_schema(std::string_view source) {
  ParseResult result;
  Lexer lexer(source);
  auto tokens = lexer.run(result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  RawSchema raw = parser.run();
  bool had_error = false;
  for (const auto& d : result.diagnostics)
    if (d.severity == Severity::Error) had_error = true;
  if (had_error) return result;
  BuildResult built = build_schema(std::move(raw));
  for (auto& d : built.diagnostics) result.diagnostics.push_back(std::move(d));
  if (built.schema) result.schema = std::move(built.schema);
  return result;
}

std::string serialize_schema(const Schema& schema, KeywordStyle style) {
  std::ostringstream out;
  if (schema.chronon_unit)
    out << "chronon \"" << *schema.chronon_unit << "\";\n";

  auto frozen = [&](const std::string& qualified) {
    for (const auto& t : schema.transitions)
      if (t.kind == TransitionKind::Frozen && t.source == qualified)
        return true;
    return false;
  };

  std::vector<const ClassDecl*> classes;
  for (const auto& c : schema.classes) classes.push_back(&c);
  std::sort(classes.begin(), classes.end(),
            [](auto* a, auto* b) { return a->name < b->name; });
  for (const ClassDecl* c : classes) {
    out << "class " << c->name << temporality_word(c->temporality);
    if (!c->attributes.empty()) {
      std::vector<const AttrDecl*> attrs;
      for (const auto& a : c->attributes) attrs.push_back(&a);
      std::sort(attrs.begin(), attrs.end(),
                [](auto* a, auto* b) { return a->name < b->name; });
      out << " {\n";
      for (const AttrDecl* a : attrs) {
        out << "  " << a->name << ": " << a->domain
            << temporality_word(a->marking);
        if (a->is_id) out << " id";
        if (frozen(qualify(c->name, a->name))) out << " frozen";
        if (a->card != kDefaultAttrCard) out << " " << card_text(a->card);
        out << ";\n";
      }
      out << "}";
    }
    out << ";\n";
  }

  std::vector<const RelDecl*> rels;
  for (const auto& r : schema.relationships) rels.push_back(&r);
  std::sort(rels.begin(), rels.end(),
            [](auto* a, auto* b) { return a->name < b->name; });
  for (const RelDecl* r : rels) {
    out << "rel " << r->name << temporality_word(r->temporality) << "(";
    for (std::size_t i = 0; i < r->roles.size(); ++i) {
      if (i) out << ", ";
      out << r->roles[i].name << ": " << r->roles[i].player;
      if (r->roles[i].card != kDefaultRoleCard)
        out << " " << card_text(r->roles[i].card);
    }
    out << ");\n";
  }

  auto isa_c = schema.isa_c;
  std::sort(isa_c.begin(), isa_c.end());
  for (const auto& [sub, super] : isa_c)
    out << "isa " << sub << " " << super << ";\n";
  auto isa_r = schema.isa_r;
  std::sort(isa_r.begin(), isa_r.end());
  for (const auto& [sub, super] : isa_r)
    out << "isar " << sub << " " << super << ";\n";
  auto isa_u = schema.isa_u;
  std::sort(isa_u.begin(), isa_u.end());
  for (const auto& [u1, u2] : isa_u)
    out << "isau " << u1.rel << "." << u1.role << " " << u2.rel << "."
        << u2.role << ";\n";

  auto groups = [&](std::vector<Group> gs, const char* kw) {
    for (auto& g : gs) std::sort(g.members.begin(), g.members.end());
    std::sort(gs.begin(), gs.end());
    for (const auto& g : gs) {
      out << kw << " {";
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        if (i) out << ", ";
        out << g.members[i];
      }
      out << "} " << g.super << ";\n";
    }
  };
  groups(schema.disj_c, "disjoint");
  groups(schema.disj_r, "disjointr");
  groups(schema.cover, "cover");

  std::vector<std::string> lines;
  for (const auto& t : schema.transitions) {
    if (t.kind == TransitionKind::Frozen) continue;  // printed as attr flag
    lines.push_back(transition_stmt(t, style));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << "\n";
  return out.str();
}

}  // namespace trend

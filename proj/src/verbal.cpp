#include "trend/verbal.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace trend::verbal {

namespace {

bool upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool lower_c(char c) { return std::islower(static_cast<unsigned char>(c)); }

std::string to_lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

std::string name_to_surface(const std::string& identifier, char separator) {
  std::vector<std::string> pieces;
  std::string piece;
  auto flush = [&] {
    if (!piece.empty()) {
      bool all_caps = std::all_of(piece.begin(), piece.end(), upper);
      pieces.push_back(all_caps && piece.size() > 1 ? piece : to_lower(piece));
      piece.clear();
    }
  };
  const std::string& s = identifier;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '_') {
      flush();
      continue;
    }
    bool boundary = false;
    if (!piece.empty()) {
      char prev = piece.back();
      if (lower_c(prev) && upper(c)) boundary = true;
      // End of an all-caps run: "VIPCustomer" splits before the 'C'.
      if (upper(prev) && upper(c) && i + 1 < s.size() && lower_c(s[i + 1]))
        boundary = true;
    }
    if (boundary) flush();
    piece += c;
  }
  flush();
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += separator;
    out += pieces[i];
  }
  return out;
}

std::string class_surface(const std::string& identifier) {
  return name_to_surface(identifier, '-');
}

std::string phrase_surface(const std::string& identifier) {
  return name_to_surface(identifier, ' ');
}

std::string article(const std::string& word) {
  if (word.empty()) return "a";
  switch (std::tolower(static_cast<unsigned char>(word[0]))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return "an";
    default: return "a";
  }
}

namespace {

std::string a_(const std::string& word) { return article(word) + " " + word; }

class Verbalizer {
public:
  explicit Verbalizer(const Schema& schema) : schema_(schema) {
    unit_ = schema.chronon_unit.value_or("chronons");
  }

  std::vector<std::string> run() {
    classes();
    isa();
    groups_and_roles();
    temporality();
    class_transitions();
    relationships();
    relationship_transitions();
    attributes();
    return std::move(out_);
  }

private:
  void say(std::string sentence) { out_.push_back(std::move(sentence)); }

  bool is_sub(const std::string& name) const {
    for (const auto& [sub, super] : schema_.isa_c)
      if (sub == name) return true;
    return false;
  }

  void classes() {
    for (const auto& c : schema_.classes) {
      if (is_sub(c.name)) continue;  // its isa sentence introduces it
      const std::string s = class_surface(c.name);
      if (c.temporality == Temporality::Snapshot)
        say(capitalized(s) + " is an entity type whose objects will always be " +
            a_(s) + ".");
      else
        say(capitalized(s) + " is an entity type.");
    }
  }

  void isa() {
    for (const auto& [sub, super] : schema_.isa_c)
      say(capitalized(class_surface(sub)) + " is " +
          a_(class_surface(super)) + ".");
  }

  void groups_and_roles() {
    for (const auto& g : schema_.disj_c) {
      std::string list;
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        if (i) list += ", ";
        list += a_(class_surface(g.members[i]));
      }
      say("Each " + class_surface(g.super) + " is at most one of: " + list +
          ".");
    }
    for (const auto& g : schema_.cover) {
      std::string list;
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        if (i) list += ", ";
        list += a_(class_surface(g.members[i]));
      }
      say("Each " + class_surface(g.super) + " is at least one of: " + list +
          ".");
    }
    for (const auto& g : schema_.disj_r) {
      std::string list;
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        if (i) list += ", ";
        list += phrase_surface(g.members[i]);
      }
      say("No tuple is in more than one of: " + list + ".");
    }
    for (const auto& [u1, u2] : schema_.isa_u)
      say("Whatever plays " + phrase_surface(u1.role) + " in " +
          phrase_surface(u1.rel) + " also plays " + phrase_surface(u2.role) +
          " in " + phrase_surface(u2.rel) + ".");
    for (const auto& r : schema_.relationships)
      for (const auto& role : r.roles) {
        if (role.card == kDefaultRoleCard) continue;
        std::string bound = "at least " + std::to_string(role.card.min);
        if (role.card.max)
          bound += " and at most " + std::to_string(*role.card.max);
        say("Each " + class_surface(role.player) + " takes part in " +
            phrase_surface(r.name) + " as " + phrase_surface(role.name) +
            " " + bound + " times.");
      }
  }

  void temporality() {
    for (const auto& c : schema_.classes) {
      const std::string s = class_surface(c.name);
      if (c.temporality == Temporality::Temporary)
        say("Each " + s + " is not " + a_(s) + " for some time.");
      else if (c.temporality == Temporality::Snapshot && is_sub(c.name))
        say("Each " + s + " is always " + a_(s) + ".");
    }
    for (const auto& r : schema_.relationships) {
      const std::string s = rel_phrase_bare(r);
      if (r.temporality == Temporality::Temporary)
        say("Each " + s + " relation does not hold for some time.");
      else if (r.temporality == Temporality::Snapshot)
        say("Each " + s + " relation holds at all times.");
    }
  }

  std::string quant_future(const TransitionConstraint& c) const {
    return c.quantitative()
               ? " after exactly " + std::to_string(*c.offset) + " " + unit_
               : "";
  }

  std::string quant_past(const TransitionConstraint& c) const {
    return c.quantitative()
               ? " exactly " + std::to_string(*c.offset) + " " + unit_ +
                     " before"
               : "";
  }

  void class_transitions() {
    for (const auto& c : schema_.transitions) {
      if (c.subject != SubjectKind::Class) continue;
      const std::string src = class_surface(c.source);
      const std::string tgt = class_surface(c.target);
      std::string sentence;
      const bool mandatory = c.modality == Modality::Mandatory;
      if (c.tense == Tense::Future) {
        if (c.kind == TransitionKind::Extension)
          sentence = mandatory
                         ? "Each " + src + " must also become " + a_(tgt) +
                               quant_future(c)
                         : capitalized(a_(src)) + " may also become " +
                               a_(tgt) + quant_future(c);
        else
          sentence = (mandatory ? "Each " + src + " must evolve to "
                                : capitalized(a_(src)) + " may evolve to ") +
                     a_(tgt) + quant_future(c) + " ceasing to be " + a_(src);
      } else {
        if (c.kind == TransitionKind::Extension)
          sentence = mandatory ? "Each " + tgt + " was already " + a_(src) +
                                     quant_past(c)
                               : capitalized(a_(tgt)) + " may have been " +
                                     a_(src) + quant_past(c);
        else
          sentence = (mandatory
                          ? "Each " + tgt + " must have evolved from "
                          : capitalized(a_(tgt)) + " may have evolved from ") +
                     a_(src) + quant_past(c) + ", ceasing to be " + a_(src);
      }
      if (c.persistent) sentence += " and remains " + a_(tgt) + " thereafter";
      say(sentence + ".");
    }
  }

  std::string rel_phrase(const RelDecl& r, bool object_article) const {
    std::string s = class_surface(r.roles.front().player) + " " +
                    phrase_surface(r.name);
    for (std::size_t i = 1; i < r.roles.size(); ++i) {
      if (i > 1) s += " and";
      s += " ";
      if (object_article) s += article(class_surface(r.roles[i].player)) + " ";
      s += class_surface(r.roles[i].player);
    }
    return s;
  }

  std::string rel_phrase_bare(const RelDecl& r) const {
    return rel_phrase(r, false);
  }

  void relationships() {
    for (const auto& r : schema_.relationships)
      say(capitalized(article(class_surface(r.roles.front().player))) + " " +
          rel_phrase(r, true) + ".");
  }

  void relationship_transitions() {
    for (const auto& c : schema_.transitions) {
      if (c.subject != SubjectKind::Relationship) continue;
      const RelDecl* src = schema_.find_relationship(c.source);
      const RelDecl* tgt = schema_.find_relationship(c.target);
      const std::string src_a = rel_phrase(*src, true);
      const std::string src_bare = rel_phrase_bare(*src);
      const std::string tgt_a = rel_phrase(*tgt, true);
      const std::string tgt_bare = rel_phrase_bare(*tgt);
      const bool mandatory = c.modality == Modality::Mandatory;
      std::string sentence;
      if (c.tense == Tense::Future) {
        sentence = mandatory ? "Each " + src_a + " will be followed by "
                             : "A " + src_a + " may be followed by ";
        sentence += tgt_bare + quant_future(c);
        if (c.kind == TransitionKind::Change)
          sentence += ", terminating the " + src_a + " relation";
      } else {
        sentence = mandatory ? "Each " + tgt_a + " must have been preceded by "
                             : "A " + tgt_a + " may have been preceded by ";
        sentence += src_bare + quant_past(c);
        if (c.kind == TransitionKind::Change)
          sentence += ", and terminating that " + src_bare + " relation";
      }
      if (c.persistent) sentence += ", and remains so thereafter";
      say(sentence + ".");
    }
  }

  void attributes() {
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes) {
        if (a.card == kDefaultAttrCard) continue;
        std::string bound = "at least " + std::to_string(a.card.min);
        if (a.card.max)
          bound += " and at most " + std::to_string(*a.card.max);
        say("Each " + class_surface(c.name) + " has " + bound +
            " values for " + phrase_surface(a.name) + ".");
      }
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes)
        if (a.marking == Temporality::Temporary)
          say("Each object in entity type " + class_surface(c.name) +
              " having attribute " + phrase_surface(a.name) +
              " does not have " + a_(phrase_surface(a.name)) +
              " at some time.");
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes)
        if (a.marking == Temporality::Snapshot && !a.is_id)
          say("Each object in entity type " + class_surface(c.name) +
              " having attribute " + phrase_surface(a.name) + " has " +
              phrase_surface(a.name) + " at all times.");
    for (const auto& c : schema_.classes)
      for (const auto& a : c.attributes)
        if (a.is_id)
          say("Each " + class_surface(c.name) + " is identified by its " +
              phrase_surface(a.name) + ".");
    for (const auto& t : schema_.transitions)
      if (t.kind == TransitionKind::Frozen) {
        auto [cls, attr] = split_qualified(t.source);
        say("Once the value for " + phrase_surface(attr) +
            " is set, it cannot change anymore.");
      }
    for (const auto& t : schema_.transitions) {
      if (t.subject != SubjectKind::Attribute ||
          t.kind == TransitionKind::Frozen)
        continue;
      auto [scls, sattr] = split_qualified(t.source);
      auto [tcls, tattr] = split_qualified(t.target);
      say(capitalized(a_(phrase_surface(sattr))) + " may change into " +
          a_(phrase_surface(tattr)) + quant_future(t) + ".");
    }
  }

  const Schema& schema_;
  std::string unit_;
  std::vector<std::string> out_;
};

}  // namespace

std::vector<std::string> verbalize(const Schema& schema, KeywordStyle style) {
  // Every template is keyword-free, so both label styles coincide.
  (void)style;
  return Verbalizer(schema).run();
}

std::string normalize_sentence(const std::string& sentence) {
  std::string lowered = to_lower(sentence);
  std::istringstream in(lowered);
  std::string word, out;
  while (in >> word) {
    while (!word.empty() && (word.back() == '.'))
      word.pop_back();
    if (word.empty()) continue;
    if (word == "an") word = "a";
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace trend::verbal

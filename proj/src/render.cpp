#include "trend/render.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace trend::render {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string temporal_marker(bool ascii) { return ascii ? "(T)" : "⏰"; }
std::string snapshot_marker() { return "(S)"; }
std::string frozen_marker(bool ascii) { return ascii ? "(pin)" : "📌"; }

std::string card_label(const Cardinality& c) {
  return "[" + std::to_string(c.min) + "," +
         (c.max ? std::to_string(*c.max) : "*") + "]";
}

std::string transition_label(const TransitionConstraint& t,
                             KeywordStyle style) {
  std::string base;
  if (t.kind == TransitionKind::Extension)
    base = style == KeywordStyle::DevDex ? "DEX" : "EXT";
  else
    base = style == KeywordStyle::DevDex ? "DEV" : "CHG";
  if (t.subject == SubjectKind::Relationship) base += "R";
  if (t.subject == SubjectKind::Attribute) base += "A";
  std::string label = t.persistent ? "P" + base : base;
  if (t.tense == Tense::Past) label += "-";
  if (t.offset) label += " " + std::to_string(*t.offset);
  return label;
}

}  // namespace

std::string to_dot(const Schema& schema, const Options& options) {
  std::ostringstream out;
  out << "digraph trend {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontname=\"Helvetica\"];\n";

  for (const auto& c : schema.classes) {
    std::string label = c.name;
    if (c.temporality == Temporality::Temporary)
      label += " " + temporal_marker(options.ascii_only);
    else if (c.temporality == Temporality::Snapshot)
      label += " " + snapshot_marker();
    for (const auto& a : c.attributes) {
      label += "\\n" + a.name + ": " + a.domain;
      if (a.marking == Temporality::Temporary)
        label += " " + temporal_marker(options.ascii_only);
      else if (a.marking == Temporality::Snapshot)
        label += " " + snapshot_marker();
      if (a.is_id) label += " [id]";
      for (const auto& t : schema.transitions)
        if (t.kind == TransitionKind::Frozen &&
            t.source == qualify(c.name, a.name))
          label += " " + frozen_marker(options.ascii_only);
      if (a.card != kDefaultAttrCard) label += " " + card_label(a.card);
    }
    for (const auto& g : schema.disj_c)
      if (g.super == c.name) {
        label += "\\ndisjoint: {";
        for (std::size_t i = 0; i < g.members.size(); ++i) {
          if (i) label += ", ";
          label += g.members[i];
        }
        label += "}";
      }
    for (const auto& g : schema.cover)
      if (g.super == c.name) {
        label += "\\ncover: {";
        for (std::size_t i = 0; i < g.members.size(); ++i) {
          if (i) label += ", ";
          label += g.members[i];
        }
        label += "}";
      }
    out << "  " << quoted(c.name) << " [shape=box, label=" << quoted(label)
        << "];\n";
  }

  for (const auto& r : schema.relationships) {
    std::string label = r.name;
    if (r.temporality == Temporality::Temporary)
      label += " " + temporal_marker(options.ascii_only);
    else if (r.temporality == Temporality::Snapshot)
      label += " " + snapshot_marker();
    for (const auto& g : schema.disj_r)
      if (g.super == r.name) {
        label += "\\ndisjoint: {";
        for (std::size_t i = 0; i < g.members.size(); ++i) {
          if (i) label += ", ";
          label += g.members[i];
        }
        label += "}";
      }
    out << "  " << quoted(r.name) << " [shape=diamond, label=" << quoted(label)
        << "];\n";
    for (const auto& role : r.roles) {
      std::string edge_label = role.name;
      if (role.card != kDefaultRoleCard)
        edge_label += " " + card_label(role.card);
      out << "  " << quoted(r.name) << " -> " << quoted(role.player)
          << " [label=" << quoted(edge_label) << ", arrowhead=none];\n";
    }
  }

  for (const auto& [sub, super] : schema.isa_c)
    out << "  " << quoted(sub) << " -> " << quoted(super)
        << " [arrowhead=empty];\n";
  for (const auto& [sub, super] : schema.isa_r)
    out << "  " << quoted(sub) << " -> " << quoted(super)
        << " [arrowhead=empty, style=dotted];\n";
  for (const auto& [u1, u2] : schema.isa_u)
    out << "  " << quoted(u1.rel) << " -> " << quoted(u2.rel)
        << " [label=" << quoted(u1.role + " isa " + u2.role)
        << ", arrowhead=empty, style=dotted];\n";

  for (const auto& t : schema.transitions) {
    if (t.kind == TransitionKind::Frozen) continue;  // in-node marker
    std::string from = t.source, to = t.target;
    if (t.subject == SubjectKind::Attribute) {
      from = split_qualified(t.source).first;
      to = split_qualified(t.target).first;
    }
    out << "  " << quoted(from) << " -> " << quoted(to)
        << " [label=" << quoted(transition_label(t, options.labels))
        << ", style="
        << (t.modality == Modality::Mandatory ? "solid" : "dashed")
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

DotStats expected_stats(const Schema& schema) {
  DotStats stats;
  stats.nodes = schema.classes.size() + schema.relationships.size();
  std::size_t roles = 0;
  for (const auto& r : schema.relationships) roles += r.roles.size();
  std::size_t transitions = 0;
  for (const auto& t : schema.transitions)
    if (t.kind != TransitionKind::Frozen) ++transitions;
  stats.edges = roles + schema.isa_c.size() + schema.isa_r.size() +
                schema.isa_u.size() + transitions;
  return stats;
}

namespace {

const std::set<std::string> kKnownAttrs = {
    "label", "shape", "style", "arrowhead", "rankdir", "fontname"};

}  // namespace

DotCheck check_dot(const std::string& dot) {
  DotCheck check;
  auto problem = [&](const std::string& p) {
    check.ok = false;
    check.problems.push_back(p);
  };
  std::istringstream in(dot);
  std::string line;
  int braces = 0;
  bool saw_header = false, saw_close = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto at = [&](const std::string& what) {
      return what + " (line " + std::to_string(lineno) + ")";
    };
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    for (std::size_t i = 0; i < trimmed.size(); ++i) {
      if (trimmed[i] == '"') {  // skip quoted content
        ++i;
        while (i < trimmed.size() && trimmed[i] != '"') {
          if (trimmed[i] == '\\') ++i;
          ++i;
        }
        if (i >= trimmed.size()) {
          problem(at("unterminated quote"));
          break;
        }
        continue;
      }
      if (trimmed[i] == '{') ++braces;
      if (trimmed[i] == '}') --braces;
    }
    if (!saw_header) {
      if (trimmed.rfind("digraph", 0) != 0) problem(at("missing digraph header"));
      saw_header = true;
      continue;
    }
    if (trimmed == "}") {
      saw_close = true;
      continue;
    }
    if (trimmed.rfind("rankdir", 0) == 0 || trimmed.rfind("node ", 0) == 0)
      continue;
    if (trimmed[0] != '"') {
      problem(at("statement does not start with a quoted identifier"));
      continue;
    }
    const bool is_edge = trimmed.find(" -> ") != std::string::npos;
    if (is_edge)
      ++check.edges;
    else
      ++check.nodes;
    // every [ ... ] attribute list uses known attribute names
    auto lb = trimmed.find('[');
    if (lb != std::string::npos) {
      auto rb = trimmed.rfind(']');
      if (rb == std::string::npos || rb < lb) {
        problem(at("unbalanced attribute brackets"));
        continue;
      }
      std::string attrs = trimmed.substr(lb + 1, rb - lb - 1);
      std::size_t pos = 0;
      while (pos < attrs.size()) {
        while (pos < attrs.size() &&
               (std::isspace(static_cast<unsigned char>(attrs[pos])) ||
                attrs[pos] == ','))
          ++pos;
        std::size_t eq = attrs.find('=', pos);
        if (eq == std::string::npos) break;
        std::string name = attrs.substr(pos, eq - pos);
        name.erase(name.find_last_not_of(" \t") + 1);
        if (!kKnownAttrs.count(name)) problem(at("unknown attribute '" + name + "'"));
        pos = eq + 1;
        if (pos < attrs.size() && attrs[pos] == '"') {
          ++pos;
          while (pos < attrs.size() && attrs[pos] != '"') {
            if (attrs[pos] == '\\') ++pos;
            ++pos;
          }
          ++pos;
        } else {
          while (pos < attrs.size() && attrs[pos] != ',') ++pos;
        }
      }
    }
  }
  if (braces != 0) problem("unbalanced braces");
  if (!saw_close) problem("missing closing brace");
  return check;
}

}  // namespace trend::render

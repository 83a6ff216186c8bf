#pragma once

#include <string>
#include <vector>

#include "trend/model.hpp"
#include "trend/text.hpp"

namespace trend::render {

struct Options {
  KeywordStyle labels = KeywordStyle::ChgExt;
  bool ascii_only = false;
};

/// Emits the schema as a DOT digraph: one box node per class (attributes
/// listed inside, temporal/frozen/id as text markers), one diamond node
/// per relationship, role edges with cardinalities, hollow-triangle isa
/// edges, and transition edges (dashed = optional, solid = mandatory,
/// "-" suffix = past, offset appended, "P" prefix = persistent). Arrows
/// point in the migration direction for past transitions too. Disjointness
/// and covers are annotated inside the superclass node.
std::string to_dot(const Schema& schema, const Options& options = {});

/// Expected node/edge counts for a schema (frozen markers are not edges).
struct DotStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
};
DotStats expected_stats(const Schema& schema);

/// Minimal DOT well-formedness check: digraph header, balanced braces and
/// brackets, quoted identifiers, known attribute names, node/edge counts.
struct DotCheck {
  bool ok = true;
  std::vector<std::string> problems;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};
DotCheck check_dot(const std::string& dot);

}  // namespace trend::render

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "trend/model.hpp"

namespace trend {

/// Transition keyword family used when printing. Input always accepts
/// both: DEX is an alias of EXT, DEV of CHG.
enum class KeywordStyle { ChgExt, DevDex };

struct ParseResult {
  std::optional<Schema> schema;  // set iff no error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return schema.has_value(); }
};

/// Parses .trend source. Syntax errors carry source spans; statements
/// resynchronize at ';'. Semantic construction errors come from
/// build_schema and carry no span.
ParseResult parse_schema(std::string_view source);

/// Canonical pretty-printer: chronon unit first, then classes,
/// relationships, isa, disj/cover, transitions — each block sorted.
/// parse_schema(serialize_schema(s)) is structurally equal to s.
std::string serialize_schema(const Schema& schema,
                             KeywordStyle style = KeywordStyle::ChgExt);

}  // namespace trend

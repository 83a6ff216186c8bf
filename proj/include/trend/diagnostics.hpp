#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trend {

/// Half-open byte range [begin, end) with 1-based line/column of `begin`.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

/// A located problem: stable machine code plus human message.
struct Diagnostic {
  std::string code;     // "syntax", "duplicate-name", "dangling-reference", ...
  std::string message;
  std::optional<SourceSpan> span;
  Severity severity = Severity::Error;
};

std::string format_diagnostic(const Diagnostic& d);

/// Thrown on programmatic misuse of module operations (unknown names,
/// kind mismatches, ill-formed states). Carries a stable code.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

}  // namespace trend

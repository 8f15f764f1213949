#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hazcast/forecast.hpp"

namespace hazcast {

enum class Severity { note, warning, error };

[[nodiscard]] std::string_view to_string(Severity severity);

/// Half-open byte range [begin, end) into the parsed input.
struct Span {
  std::size_t begin{};
  std::size_t end{};

  friend bool operator==(const Span&, const Span&) = default;
};

struct Diagnostic {
  Severity severity{Severity::error};
  Span span;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Outcome of parsing either raw forecast text or the canonical format.
/// `document` is present exactly when no diagnostic has error severity.
struct ParseResult {
  std::optional<ForecastDocument> document;
  std::vector<Diagnostic> diagnostics;
  double coverage{0.0};  // fraction of input bytes consumed by recognised constructs

  [[nodiscard]] bool has_errors() const;

  friend bool operator==(const ParseResult&, const ParseResult&) = default;
};

/// 1-based line and column (in code points) of a byte offset.
struct SourcePosition {
  std::size_t line{1};
  std::size_t column{1};
};

[[nodiscard]] SourcePosition position_of(std::string_view input, std::size_t offset);

/// "severity:line:col message".
[[nodiscard]] std::string format_diagnostic(std::string_view input, const Diagnostic& diagnostic);

}  // namespace hazcast

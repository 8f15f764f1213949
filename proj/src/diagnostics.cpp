#include "hazcast/diagnostics.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace hazcast {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::note:
      return "note";
    case Severity::warning:
      return "warning";
    case Severity::error:
      return "error";
  }
  return "error";
}

bool ParseResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

SourcePosition position_of(std::string_view input, std::size_t offset) {
  offset = std::min(offset, input.size());
  SourcePosition pos;
  for (std::size_t i = 0; i < offset; ++i) {
    const auto c = static_cast<unsigned char>(input[i]);
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++pos.column;
    }
  }
  return pos;
}

std::string format_diagnostic(std::string_view input, const Diagnostic& diagnostic) {
  const auto pos = position_of(input, diagnostic.span.begin);
  return fmt::format("{}:{}:{} {}", to_string(diagnostic.severity), pos.line, pos.column, diagnostic.message);
}

}  // namespace hazcast

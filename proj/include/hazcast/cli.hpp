#pragma once

// Command-line front end. Subcommands:
//
//   parse <forecast.txt> [--out FILE] [--source-id ID]
//   classify <forecast> [--mode overall|per-period] [--triad-thresholds FILE]
//   render <forecast> --condition C --format F [--out FILE] [--manifest FILE]
//   stimuli <forecast>... --condition C --format F --out DIR
//   stats --responses FILE --participants FILE [--out DIR] [--plot]
//   validate-tables
//
// Commands reading a forecast accept raw text or the canonical JSON form.
// --tables DIR and --glyphs DIR override the shipped data. Exit status is 0
// on success, 1 for bad input and 2 for an internal invariant violation;
// every failure ends with one line "hazcast: error[<kind>]: <message>" on
// the error stream.

#include <exception>
#include <iosfwd>
#include <span>
#include <string>

namespace hazcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

/// `args` excludes the program name.
[[nodiscard]] int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Writes the error line for an escaped exception and returns its exit code.
int report_failure(std::exception_ptr failure, std::ostream& err);

}  // namespace hazcast::cli

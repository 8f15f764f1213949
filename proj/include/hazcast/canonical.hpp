#pragma once

// Canonical interchange format for ForecastDocument.
//
// The format is a JSON object with a mandatory schema marker:
//
//   {
//     "schema": "hazcast.forecast",
//     "schema_version": 1,
//     "source_id": "severe-day",
//     "issued_at": "2026-01-15T11:30:00Z",
//     "summary_text": "...",
//     "periods": [
//       {
//         "label": "Today",
//         "temperature": {"low": 0.0, "high": 10.0, "unit": "F"},
//         "wind": {"direction": "NW",
//                  "sustained": {"low": 70.0, "high": 90.0, "unit": "mph"},
//                  "gust_high": 110.0},
//         "wind_chill": {"low": -45.0, "high": -30.0, "unit": "F"},
//         "precip_events": [{"kind": "snow", "certainty": "likely"}],
//         "extra_hazard_notes": ["Summits in fog."]
//       }, ... exactly four periods ...
//     ]
//   }
//
// "direction", "gust_high" and "wind_chill" are omitted when absent. Reading
// is strict: unknown keys, missing keys and wrong types are errors. Numbers
// are written in shortest round-trip form so emit/parse is lossless.

#include <string>
#include <string_view>

#include "hazcast/diagnostics.hpp"
#include "hazcast/forecast.hpp"

namespace hazcast {

inline constexpr std::string_view kCanonicalSchema = "hazcast.forecast";
inline constexpr int kCanonicalSchemaVersion = 1;

/// Throws InputError if `doc` is invalid. Output ends with a newline.
[[nodiscard]] std::string emit_canonical(const ForecastDocument& doc);

[[nodiscard]] ParseResult parse_canonical(std::string_view text);

}  // namespace hazcast

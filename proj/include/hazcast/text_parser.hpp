#pragma once

// Parser for higher-summits forecast text as it is printed and posted:
//
//   Higher Summits Forecast                       (optional title line)
//   Issued: 2026-01-15 05:30 -05:00               (optional, warned if absent)
//   <summary narrative, any number of lines>
//   Today: <period narrative>
//   Temperatures: 0-10F
//   Winds: NW 70-90 mph with higher gusts 100-110 mph
//   Wind chill: -45 to -30F
//   Tonight: ...
//
// Exactly four period headers are required. A header is a line starting with
// one of: Today, Tonight, This Morning, This Afternoon, This Evening,
// Overnight, Tomorrow, Tomorrow Night, a weekday name, or a weekday name
// followed by "Night"; then a colon. Field labels (also line-initial, with a
// colon):
//
//   temperature  Temperatures, Temperature, Temps, Temp, Highs, High, Lows, Low
//   wind         Winds, Wind
//   wind chill   Wind Chills, Wind Chill, Windchills, Windchill
//
// A labelled field keeps the min/max envelope of every number it carries
// ("10-15F falling to 5F" is 5..15). A hyphen is a range separator only when
// it sits between two complete numbers; otherwise it is a minus sign. Units
// default to F and mph; C, km/h (kph) and knots are converted. Parenthesised
// restatements such as "(112 km/h)" are skipped. In winds, numbers after the
// first "gust..." word are gusts and the largest becomes gust_high.
//
// Any other text in a period block is split into sentences. Sentences naming
// precipitation become events; sentences naming a hazard become hazard notes;
// the rest are not recognised and lower the coverage figure. Keyword sets are
// closed and case-insensitive:
//
//   snow           words starting with "snow", "flurries"
//   sleet          "sleet", "ice pellets"
//   freezing rain  "freezing rain", "freezing drizzle"
//   rain           "rain", "rains", "rainfall", "drizzle", "rain showers"
//   mixed          "wintry mix", "mixed precipitation"
//   hazard notes   words starting with "flood", "fog" or "visib"
//
// A precipitation word directly preceded by "no" is ignored. Certainty is
// "chance" when the sentence says chance/possible/possibly/slight, "likely"
// when it says likely, else "mentioned". Each kind is recorded once per
// period, with the certainty of its first mention.

#include <string_view>

#include "hazcast/diagnostics.hpp"

namespace hazcast {

[[nodiscard]] ParseResult parse_forecast(std::string_view text, std::string_view source_id = {});

}  // namespace hazcast

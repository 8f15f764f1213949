#pragma once

// Hazard scale tables. Each table maps one numeric input (sustained wind,
// wind chill, low temperature, winter-precipitation indicator) onto a banded
// severity level with a fixed background colour. Tables are shipped as text
// files so the transcription from the published scales can be audited.
//
// File format (one directive per line; lines starting with '#' are comments):
//
//   format hazcast-scale 1
//   kind wind                      wind | wind_chill | freezing_temp | winter_precip
//   scale_name Beaufort
//   plain_name WIND                text used by plain-text renders
//   glyph wind                     glyph id in the icon art set
//   unit mph
//   domain 0 200                   inclusive input domain; inputs are clamped to it
//   closure lower-inclusive        lower-inclusive: [low, high)   upper-inclusive: (low, high]
//   severity increasing            direction the input moves as severity rises
//   display_floor 6                lowest level that produces an icon
//   provenance <free text>         may repeat
//   band <level> <low> <high> <#RRGGBB> <tag> <label...>
//
// Bands are listed in level order starting at 0. The outermost band is closed
// at the domain edge it touches.

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hazcast {

enum class HazardKind { wind, wind_chill, freezing_temp, winter_precip };

/// Fixed display order of icons within a set.
inline constexpr std::array<HazardKind, 4> kHazardOrder{HazardKind::wind, HazardKind::wind_chill,
                                                        HazardKind::freezing_temp, HazardKind::winter_precip};

[[nodiscard]] std::string_view to_string(HazardKind kind);

enum class BandClosure { lower_inclusive, upper_inclusive };
enum class SeverityDirection { increasing, decreasing };

struct Band {
  int level{};
  double low{};
  double high{};
  std::string color;  // "#RRGGBB"
  std::string tag;    // short code, "-" when the plain render shows none
  std::string label;
};

struct ScaleTable {
  HazardKind kind{HazardKind::wind};
  std::string scale_name;
  std::string plain_name;
  std::string glyph_id;
  std::string unit;
  double domain_low{};
  double domain_high{};
  BandClosure closure{BandClosure::lower_inclusive};
  SeverityDirection severity{SeverityDirection::increasing};
  int display_floor{1};
  std::string provenance;
  std::vector<Band> bands;

  /// Band containing `value` after clamping it into the domain. Throws
  /// InputError for NaN.
  [[nodiscard]] const Band& classify(double value) const;
  /// Throws InputError for a level the table does not define.
  [[nodiscard]] const Band& band(int level) const;
  [[nodiscard]] int max_level() const { return static_cast<int>(bands.size()) - 1; }
};

/// Parses the text format above. Throws InputError ("<origin>:<line>: ...").
/// Does not run integrity checks.
[[nodiscard]] ScaleTable parse_scale_table(std::string_view text, std::string_view origin = "<table>");

/// Empty when the table is contiguous, exhaustive over the domain required for
/// its kind, ordered by severity and uses well-formed colours.
[[nodiscard]] std::vector<std::string> integrity_problems(const ScaleTable& table);

/// Reads, parses and integrity-checks one file; throws InputError on failure.
[[nodiscard]] ScaleTable load_scale_table(const std::filesystem::path& path);

struct HazardTables {
  ScaleTable wind;
  ScaleTable wind_chill;
  ScaleTable freezing;
  ScaleTable winter_precip;

  [[nodiscard]] const ScaleTable& for_kind(HazardKind kind) const;
};

/// File name expected for each kind inside a tables directory.
[[nodiscard]] std::string_view table_file_name(HazardKind kind);

/// Loads beaufort.scale, wind_chill.scale, freezing.scale and
/// winter_precip.scale from `dir`; each must declare the matching kind.
[[nodiscard]] HazardTables load_hazard_tables(const std::filesystem::path& dir);

}  // namespace hazcast

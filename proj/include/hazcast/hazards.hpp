#pragma once

// Hazard icons derived from a forecast period using nothing but the period's
// own fields and the shipped scale tables.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hazcast/forecast.hpp"
#include "hazcast/scale_table.hpp"

namespace hazcast {

struct WindChillInput {
  double temperature_f{};
  double wind_mph{};
};

/// NWS (2001) wind chill in degrees F. Outside the model's validity
/// (wind <= 3 mph or temperature > 50 F) the air temperature is returned.
/// Throws InputError for negative or non-finite wind.
[[nodiscard]] double wind_chill(WindChillInput input);

/// Rounds half away from zero to whole degrees.
[[nodiscard]] int round_wind_chill(double wc_f);

struct HazardIcon {
  HazardKind kind{HazardKind::wind};
  int level{};
  std::string color;
  std::string scale_name;
  std::string glyph_id;
  std::string plain_name;
  std::string tag;
  std::string label;
  /// Wind icons only: set when gusts reach the next Beaufort band.
  std::optional<double> gust_mph;

  friend bool operator==(const HazardIcon&, const HazardIcon&) = default;
};

/// At most one icon per kind, in kHazardOrder.
using IconSet = std::vector<HazardIcon>;

enum class IconMode { overall, per_period };

/// Inputs to the three-factor go / caution / no-go advisory. Both cutoffs
/// must be supplied; there are no defaults.
struct TriadThresholds {
  std::optional<double> wind_mph;       // dangerous when sustained high >= cutoff
  std::optional<double> temperature_f;  // dangerous when temperature low <= cutoff
};

enum class TriadFactor { wind, visibility, temperature };
enum class TriadVerdict { go, caution, no_go };

struct TriadAdvisory {
  std::vector<TriadFactor> factors_dangerous;  // in wind, visibility, temperature order
  TriadVerdict verdict{TriadVerdict::go};
};

[[nodiscard]] std::string_view to_string(TriadFactor factor);
[[nodiscard]] std::string_view to_string(TriadVerdict verdict);

/// "wind_mph = 50" / "temperature_f = 0" lines; '#' comments. Throws
/// InputError on unknown keys, bad numbers or a missing key.
[[nodiscard]] TriadThresholds parse_triad_thresholds(std::string_view text);

/// Counts wind, visibility (a fog or visibility hazard note) and temperature;
/// 0 dangerous factors is go, 1 is caution, 2 or more is no-go. Throws
/// InputError when a threshold is missing.
[[nodiscard]] TriadAdvisory triad_advisory(const ForecastPeriod& period, const TriadThresholds& thresholds);

class HazardEngine {
 public:
  explicit HazardEngine(HazardTables tables);

  [[nodiscard]] const HazardTables& tables() const { return tables_; }

  /// Throws InputError for negative or NaN speeds.
  [[nodiscard]] int beaufort_force(double sustained_high_mph) const;
  /// Rounds half away from zero, then applies the frostbite-time bands.
  [[nodiscard]] int wind_chill_category(double wc_f) const;

  /// Wind chill used for icons: the forecaster's stated range when present,
  /// otherwise computed from (temperature.low, sustained.high) for the low end
  /// and (temperature.high, sustained.low) for the high end.
  [[nodiscard]] static ValueRange effective_wind_chill(const ForecastPeriod& period);

  /// worst_case_view with the wind chill replaced by the coldest effective
  /// wind chill of any single period, so the overall icon never reports a
  /// combination of temperature and wind that no period predicts.
  [[nodiscard]] static ForecastPeriod hazard_worst_case(const ForecastDocument& doc);

  [[nodiscard]] IconSet derive_icons(const ForecastPeriod& period) const;
  [[nodiscard]] std::vector<IconSet> derive_document_icons(const ForecastDocument& doc, IconMode mode) const;

 private:
  HazardIcon make_icon(HazardKind kind, int level) const;

  HazardTables tables_;
};

}  // namespace hazcast

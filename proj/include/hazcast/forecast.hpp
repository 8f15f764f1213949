#pragma once

// Structured model of a 48-hour higher-summits forecast: a narrative summary
// followed by four 12-hour periods (day, night, day, night). Temperatures are
// held in degrees Fahrenheit and wind speeds in mph throughout; unit
// conversion only happens when text is parsed or rendered.

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hazcast {

enum class Unit : std::uint8_t { fahrenheit, mph };

struct ValueRange {
  double low{};
  double high{};
  Unit unit{Unit::fahrenheit};

  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

/// 16-point compass rose.
enum class Compass : std::uint8_t { N, NNE, NE, ENE, E, ESE, SE, SSE, S, SSW, SW, WSW, W, WNW, NW, NNW };

struct WindPrediction {
  std::optional<Compass> direction;
  ValueRange sustained{0.0, 0.0, Unit::mph};
  std::optional<double> gust_high;

  friend bool operator==(const WindPrediction&, const WindPrediction&) = default;
};

enum class PrecipKind : std::uint8_t { snow, sleet, freezing_rain, rain, mixed };

/// Qualitative wording carried over from the forecast text.
enum class Certainty : std::uint8_t { mentioned, likely, chance };

struct PrecipEvent {
  PrecipKind kind{PrecipKind::snow};
  Certainty certainty{Certainty::mentioned};

  friend auto operator<=>(const PrecipEvent&, const PrecipEvent&) = default;
};

struct ForecastPeriod {
  std::string label;
  ValueRange temperature{0.0, 0.0, Unit::fahrenheit};
  WindPrediction wind;
  std::optional<ValueRange> wind_chill;
  std::vector<PrecipEvent> precip_events;
  std::vector<std::string> extra_hazard_notes;

  friend bool operator==(const ForecastPeriod&, const ForecastPeriod&) = default;
};

inline constexpr std::size_t kPeriodCount = 4;

struct ForecastDocument {
  std::chrono::sys_seconds issued_at{};
  std::string summary_text;
  std::vector<ForecastPeriod> periods;
  std::string source_id;

  friend bool operator==(const ForecastDocument&, const ForecastDocument&) = default;
};

/// One broken rule. `field` is a path such as "periods[2].temperature".
struct Violation {
  std::string field;
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

[[nodiscard]] std::vector<Violation> validate(const ForecastPeriod& period, std::string_view path = "period");
[[nodiscard]] std::vector<Violation> validate(const ForecastDocument& doc);

/// Throws InputError naming the first few violations when `doc` is invalid.
void require_valid(const ForecastDocument& doc);
void require_valid(const ForecastPeriod& period);

/// Per-field worst case across all periods: coldest temperature and wind
/// chill, strongest sustained wind and gust, union of precipitation events and
/// hazard notes. A maximum gust below the maximum sustained wind is dropped.
/// Set-valued fields come back sorted and deduplicated so the
/// result does not depend on period order.
[[nodiscard]] ForecastPeriod worst_case_view(const ForecastDocument& doc);

inline constexpr std::string_view kWorstCaseLabel = "Next 48 hours";

// Night periods are recognised from their label ("Tonight", "Friday Night").
[[nodiscard]] bool is_night_label(std::string_view label);

[[nodiscard]] std::string_view to_string(Unit unit);
[[nodiscard]] std::string_view to_string(Compass direction);
[[nodiscard]] std::string_view to_string(PrecipKind kind);
[[nodiscard]] std::string_view to_string(Certainty certainty);

[[nodiscard]] std::optional<Unit> unit_from_string(std::string_view text);
/// Case-insensitive.
[[nodiscard]] std::optional<Compass> compass_from_string(std::string_view text);
[[nodiscard]] std::optional<PrecipKind> precip_kind_from_string(std::string_view text);
[[nodiscard]] std::optional<Certainty> certainty_from_string(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
[[nodiscard]] std::string format_timestamp(std::chrono::sys_seconds t);
/// Accepts "YYYY-MM-DD[T ]HH:MM[:SS]" followed by "Z", "UTC" or a "+HH:MM"
/// offset; a bare time is read as UTC.
[[nodiscard]] std::optional<std::chrono::sys_seconds> parse_timestamp(std::string_view text);

}  // namespace hazcast

#include "hazcast/forecast.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "text_util.hpp"

namespace hazcast {

namespace {

constexpr std::array<std::string_view, 16> kCompassNames{"N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE",
                                                         "S", "SSW", "SW", "WSW", "W", "WNW", "NW", "NNW"};

constexpr std::array<std::string_view, 5> kPrecipNames{"snow", "sleet", "freezing_rain", "rain", "mixed"};
constexpr std::array<std::string_view, 3> kCertaintyNames{"mentioned", "likely", "chance"};

void check_range(const ValueRange& r, Unit expected, const std::string& path, std::vector<Violation>& out) {
  if (!std::isfinite(r.low) || !std::isfinite(r.high)) {
    out.push_back({path, "bounds must be finite"});
    return;
  }
  if (r.low > r.high) out.push_back({path, fmt::format("low {} exceeds high {}", r.low, r.high)});
  if (r.unit != expected) {
    out.push_back({path + ".unit", fmt::format("expected {}, found {}", to_string(expected), to_string(r.unit))});
  }
}

void throw_violations(const std::vector<Violation>& violations, std::string_view what) {
  std::string msg = fmt::format("invalid {}:", what);
  const std::size_t shown = std::min<std::size_t>(violations.size(), 3);
  for (std::size_t i = 0; i < shown; ++i) {
    msg += fmt::format(" {} ({}){}", violations[i].field, violations[i].rule, i + 1 < shown ? ";" : "");
  }
  if (violations.size() > shown) msg += fmt::format(" and {} more", violations.size() - shown);
  throw InputError(msg);
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Violation> validate(const ForecastPeriod& period, std::string_view path) {
  std::vector<Violation> out;
  const std::string base(path);
  if (detail::trim(period.label).empty()) out.push_back({base + ".label", "must not be empty"});
  check_range(period.temperature, Unit::fahrenheit, base + ".temperature", out);
  check_range(period.wind.sustained, Unit::mph, base + ".wind.sustained", out);
  if (std::isfinite(period.wind.sustained.low) && period.wind.sustained.low < 0.0) {
    out.push_back({base + ".wind.sustained", "wind speed must be non-negative"});
  }
  if (period.wind.gust_high) {
    const double gust = *period.wind.gust_high;
    if (!std::isfinite(gust)) {
      out.push_back({base + ".wind.gust_high", "must be finite"});
    } else if (gust < period.wind.sustained.high) {
      out.push_back({base + ".wind.gust_high",
                     fmt::format("gust {} below sustained high {}", gust, period.wind.sustained.high)});
    }
  }
  if (period.wind_chill) check_range(*period.wind_chill, Unit::fahrenheit, base + ".wind_chill", out);
  for (std::size_t i = 0; i < period.extra_hazard_notes.size(); ++i) {
    if (detail::trim(period.extra_hazard_notes[i]).empty()) {
      out.push_back({fmt::format("{}.extra_hazard_notes[{}]", base, i), "must not be empty"});
    }
  }
  return out;
}

std::vector<Violation> validate(const ForecastDocument& doc) {
  std::vector<Violation> out;
  if (detail::trim(doc.summary_text).empty()) out.push_back({"summary_text", "must not be empty"});
  if (doc.periods.size() != kPeriodCount) {
    out.push_back({"periods", fmt::format("expected {} periods, found {}", kPeriodCount, doc.periods.size())});
  }
  for (std::size_t i = 0; i < doc.periods.size(); ++i) {
    auto sub = validate(doc.periods[i], fmt::format("periods[{}]", i));
    out.insert(out.end(), sub.begin(), sub.end());
    // Consecutive 12-hour periods alternate between day and night.
    if (i > 0 && is_night_label(doc.periods[i].label) == is_night_label(doc.periods[i - 1].label)) {
      out.push_back({fmt::format("periods[{}].label", i),
                     fmt::format("'{}' does not follow '{}' as the next 12-hour period", doc.periods[i].label,
                                 doc.periods[i - 1].label)});
    }
  }
  return out;
}

void require_valid(const ForecastDocument& doc) {
  if (auto v = validate(doc); !v.empty()) throw_violations(v, "forecast document");
}

void require_valid(const ForecastPeriod& period) {
  if (auto v = validate(period); !v.empty()) throw_violations(v, "forecast period");
}

ForecastPeriod worst_case_view(const ForecastDocument& doc) {
  require_valid(doc);
  const auto& first = doc.periods.front();

  ForecastPeriod worst;
  worst.label = std::string(kWorstCaseLabel);
  worst.temperature = first.temperature;
  worst.wind.sustained = first.wind.sustained;
  worst.wind.direction = first.wind.direction;

  for (const auto& p : doc.periods) {
    worst.temperature.low = std::min(worst.temperature.low, p.temperature.low);
    worst.temperature.high = std::min(worst.temperature.high, p.temperature.high);
    // Direction follows the strongest wind; ties keep the smallest compass
    // point so the result is independent of period order.
    if (p.wind.sustained.high > worst.wind.sustained.high ||
        (p.wind.sustained.high == worst.wind.sustained.high && p.wind.direction < worst.wind.direction)) {
      worst.wind.direction = p.wind.direction;
    }
    worst.wind.sustained.low = std::max(worst.wind.sustained.low, p.wind.sustained.low);
    worst.wind.sustained.high = std::max(worst.wind.sustained.high, p.wind.sustained.high);
    if (p.wind.gust_high) worst.wind.gust_high = std::max(worst.wind.gust_high.value_or(*p.wind.gust_high), *p.wind.gust_high);
    if (p.wind_chill) {
      if (!worst.wind_chill) {
        worst.wind_chill = p.wind_chill;
      } else {
        worst.wind_chill->low = std::min(worst.wind_chill->low, p.wind_chill->low);
        worst.wind_chill->high = std::min(worst.wind_chill->high, p.wind_chill->high);
      }
    }
    worst.precip_events.insert(worst.precip_events.end(), p.precip_events.begin(), p.precip_events.end());
    worst.extra_hazard_notes.insert(worst.extra_hazard_notes.end(), p.extra_hazard_notes.begin(),
                                    p.extra_hazard_notes.end());
  }
  // The strongest gust can come from a calmer period than the strongest
  // sustained wind; a gust below that wind adds nothing and is dropped.
  if (worst.wind.gust_high && *worst.wind.gust_high < worst.wind.sustained.high) worst.wind.gust_high.reset();
  sort_unique(worst.precip_events);
  sort_unique(worst.extra_hazard_notes);
  return worst;
}

bool is_night_label(std::string_view label) {
  const std::string lower = detail::to_lower(label);
  return lower.find("night") != std::string::npos || lower.find("evening") != std::string::npos;
}

std::string_view to_string(Unit unit) { return unit == Unit::fahrenheit ? "F" : "mph"; }

std::string_view to_string(Compass direction) { return kCompassNames[static_cast<std::size_t>(direction)]; }

std::string_view to_string(PrecipKind kind) { return kPrecipNames[static_cast<std::size_t>(kind)]; }

std::string_view to_string(Certainty certainty) { return kCertaintyNames[static_cast<std::size_t>(certainty)]; }

std::optional<Unit> unit_from_string(std::string_view text) {
  if (text == "F") return Unit::fahrenheit;
  if (text == "mph") return Unit::mph;
  return std::nullopt;
}

std::optional<Compass> compass_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kCompassNames.size(); ++i) {
    if (detail::iequals(text, kCompassNames[i])) return static_cast<Compass>(i);
  }
  return std::nullopt;
}

std::optional<PrecipKind> precip_kind_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kPrecipNames.size(); ++i) {
    if (text == kPrecipNames[i]) return static_cast<PrecipKind>(i);
  }
  return std::nullopt;
}

std::optional<Certainty> certainty_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kCertaintyNames.size(); ++i) {
    if (text == kCertaintyNames[i]) return static_cast<Certainty>(i);
  }
  return std::nullopt;
}

std::string format_timestamp(std::chrono::sys_seconds t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

std::optional<std::chrono::sys_seconds> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  text = detail::trim(text);
  auto take_int = [&](std::size_t digits) -> std::optional<int> {
    if (text.size() < digits) return std::nullopt;
    for (std::size_t i = 0; i < digits; ++i) {
      if (!detail::is_digit(text[i])) return std::nullopt;
    }
    auto v = detail::parse_int(text.substr(0, digits));
    text.remove_prefix(digits);
    return v;
  };
  auto take_char = [&](auto pred) {
    if (text.empty() || !pred(text.front())) return false;
    text.remove_prefix(1);
    return true;
  };

  const auto y = take_int(4);
  if (!y || !take_char([](char c) { return c == '-'; })) return std::nullopt;
  const auto mo = take_int(2);
  if (!mo || !take_char([](char c) { return c == '-'; })) return std::nullopt;
  const auto d = take_int(2);
  if (!d || !take_char([](char c) { return c == 'T' || c == ' '; })) return std::nullopt;
  const auto hh = take_int(2);
  if (!hh || !take_char([](char c) { return c == ':'; })) return std::nullopt;
  const auto mm = take_int(2);
  if (!mm) return std::nullopt;
  int ss = 0;
  if (take_char([](char c) { return c == ':'; })) {
    const auto s = take_int(2);
    if (!s) return std::nullopt;
    ss = *s;
  }

  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || *hh > 23 || *mm > 59 || ss > 59) return std::nullopt;

  int offset_minutes = 0;
  text = detail::trim(text);
  if (text.empty() || text == "Z" || detail::iequals(text, "UTC")) {
    // UTC
  } else if (text.front() == '+' || text.front() == '-') {
    const int sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
    const auto oh = take_int(2);
    if (!oh) return std::nullopt;
    take_char([](char c) { return c == ':'; });
    const auto om = take_int(2);
    if (!om || !text.empty() || *oh > 23 || *om > 59) return std::nullopt;
    offset_minutes = sign * (*oh * 60 + *om);
  } else {
    return std::nullopt;
  }

  return sys_days{ymd} + hours{*hh} + minutes{*mm} + seconds{ss} - minutes{offset_minutes};
}

}  // namespace hazcast

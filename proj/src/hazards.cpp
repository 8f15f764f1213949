#include "hazcast/hazards.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "text_util.hpp"

namespace hazcast {

namespace {

// NWS wind chill (2001): WC = 35.74 + 0.6215 T - 35.75 V^0.16 + 0.4275 T V^0.16
constexpr double kWcConstant = 35.74;
constexpr double kWcTemperature = 0.6215;
constexpr double kWcWind = 35.75;
constexpr double kWcCross = 0.4275;
constexpr double kWcExponent = 0.16;
constexpr double kWcMinWindMph = 3.0;
constexpr double kWcMaxTemperatureF = 50.0;

constexpr double kFreezingF = 32.0;

bool is_winter(PrecipKind k) {
  return k == PrecipKind::snow || k == PrecipKind::sleet || k == PrecipKind::freezing_rain;
}

bool mentions_visibility(const std::string& note) {
  const std::string lower = detail::to_lower(note);
  return lower.find("fog") != std::string::npos || lower.find("visib") != std::string::npos;
}

}  // namespace

double wind_chill(WindChillInput input) {
  const double t = input.temperature_f;
  const double v = input.wind_mph;
  if (!std::isfinite(v) || v < 0.0) throw InputError(fmt::format("wind speed must be a non-negative number, got {}", v));
  if (!std::isfinite(t)) throw InputError("temperature must be finite");
  if (v <= kWcMinWindMph || t > kWcMaxTemperatureF) return t;
  const double vp = std::pow(v, kWcExponent);
  return kWcConstant + kWcTemperature * t - kWcWind * vp + kWcCross * t * vp;
}

int round_wind_chill(double wc_f) { return static_cast<int>(std::round(wc_f)); }

std::string_view to_string(TriadFactor factor) {
  switch (factor) {
    case TriadFactor::wind:
      return "wind";
    case TriadFactor::visibility:
      return "visibility";
    case TriadFactor::temperature:
      return "temperature";
  }
  return "wind";
}

std::string_view to_string(TriadVerdict verdict) {
  switch (verdict) {
    case TriadVerdict::go:
      return "go";
    case TriadVerdict::caution:
      return "caution";
    case TriadVerdict::no_go:
      return "no_go";
  }
  return "go";
}

TriadThresholds parse_triad_thresholds(std::string_view text) {
  TriadThresholds t;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(fmt::format("thresholds:{}: expected key = value", line_no));
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::parse_double(line.substr(eq + 1));
    if (!value || !std::isfinite(*value)) throw InputError(fmt::format("thresholds:{}: value is not a number", line_no));
    if (key == "wind_mph") {
      t.wind_mph = *value;
    } else if (key == "temperature_f") {
      t.temperature_f = *value;
    } else {
      throw InputError(fmt::format("thresholds:{}: unknown key \"{}\"", line_no, key));
    }
  }
  if (!t.wind_mph) throw InputError("thresholds: missing wind_mph");
  if (!t.temperature_f) throw InputError("thresholds: missing temperature_f");
  return t;
}

TriadAdvisory triad_advisory(const ForecastPeriod& period, const TriadThresholds& thresholds) {
  if (!thresholds.wind_mph || !thresholds.temperature_f) {
    throw InputError("triad advisory needs both wind_mph and temperature_f thresholds");
  }
  require_valid(period);
  TriadAdvisory out;
  if (period.wind.sustained.high >= *thresholds.wind_mph) out.factors_dangerous.push_back(TriadFactor::wind);
  if (std::any_of(period.extra_hazard_notes.begin(), period.extra_hazard_notes.end(), mentions_visibility)) {
    out.factors_dangerous.push_back(TriadFactor::visibility);
  }
  if (period.temperature.low <= *thresholds.temperature_f) out.factors_dangerous.push_back(TriadFactor::temperature);
  const auto n = out.factors_dangerous.size();
  out.verdict = n == 0 ? TriadVerdict::go : n == 1 ? TriadVerdict::caution : TriadVerdict::no_go;
  return out;
}

HazardEngine::HazardEngine(HazardTables tables) : tables_(std::move(tables)) {
  for (auto kind : kHazardOrder) {
    const auto& t = tables_.for_kind(kind);
    if (t.kind != kind) throw InputError(fmt::format("table for {} declares kind {}", to_string(kind), to_string(t.kind)));
    if (auto problems = integrity_problems(t); !problems.empty()) {
      throw InputError(fmt::format("{} table: {}", to_string(kind), problems.front()));
    }
  }
}

int HazardEngine::beaufort_force(double sustained_high_mph) const {
  if (std::isnan(sustained_high_mph) || sustained_high_mph < 0.0) {
    throw InputError(fmt::format("wind speed must be non-negative, got {}", sustained_high_mph));
  }
  return tables_.wind.classify(sustained_high_mph).level;
}

int HazardEngine::wind_chill_category(double wc_f) const {
  if (std::isnan(wc_f)) throw InputError("wind chill is NaN");
  return tables_.wind_chill.classify(static_cast<double>(round_wind_chill(wc_f))).level;
}

ValueRange HazardEngine::effective_wind_chill(const ForecastPeriod& period) {
  if (period.wind_chill) return *period.wind_chill;
  const double coldest = wind_chill({period.temperature.low, period.wind.sustained.high});
  const double mildest = wind_chill({period.temperature.high, period.wind.sustained.low});
  return {coldest, std::max(coldest, mildest), Unit::fahrenheit};
}

ForecastPeriod HazardEngine::hazard_worst_case(const ForecastDocument& doc) {
  ForecastPeriod worst = worst_case_view(doc);
  std::optional<ValueRange> wc;
  for (const auto& p : doc.periods) {
    const auto e = effective_wind_chill(p);
    if (!wc) {
      wc = e;
    } else {
      wc->low = std::min(wc->low, e.low);
      wc->high = std::min(wc->high, e.high);
    }
  }
  worst.wind_chill = wc;
  return worst;
}

HazardIcon HazardEngine::make_icon(HazardKind kind, int level) const {
  const auto& table = tables_.for_kind(kind);
  const auto& band = table.band(level);
  return HazardIcon{kind,          level,      band.color, table.scale_name, table.glyph_id, table.plain_name,
                    band.tag,      band.label, std::nullopt};
}

IconSet HazardEngine::derive_icons(const ForecastPeriod& period) const {
  require_valid(period);
  IconSet icons;

  const int force = beaufort_force(period.wind.sustained.high);
  if (force >= tables_.wind.display_floor) {
    auto icon = make_icon(HazardKind::wind, force);
    if (period.wind.gust_high) {
      const double gust = *period.wind.gust_high;
      const bool reaches_next = force < tables_.wind.max_level() ? gust >= tables_.wind.band(force + 1).low
                                                                 : gust > period.wind.sustained.high;
      if (reaches_next) icon.gust_mph = gust;
    }
    icons.push_back(std::move(icon));
  }

  const int frostbite = wind_chill_category(effective_wind_chill(period).low);
  if (frostbite >= tables_.wind_chill.display_floor) icons.push_back(make_icon(HazardKind::wind_chill, frostbite));

  const int freezing = tables_.freezing.classify(period.temperature.low).level;
  if (freezing >= tables_.freezing.display_floor) icons.push_back(make_icon(HazardKind::freezing_temp, freezing));

  std::vector<PrecipKind> winter;
  for (const auto& e : period.precip_events) {
    if (is_winter(e.kind) && std::find(winter.begin(), winter.end(), e.kind) == winter.end()) winter.push_back(e.kind);
  }
  const int precip = tables_.winter_precip.classify(static_cast<double>(winter.size())).level;
  if (precip >= tables_.winter_precip.display_floor) icons.push_back(make_icon(HazardKind::winter_precip, precip));

  return icons;
}

std::vector<IconSet> HazardEngine::derive_document_icons(const ForecastDocument& doc, IconMode mode) const {
  require_valid(doc);
  std::vector<IconSet> out;
  if (mode == IconMode::overall) {
    out.push_back(derive_icons(hazard_worst_case(doc)));
  } else {
    for (const auto& p : doc.periods) out.push_back(derive_icons(p));
  }
  return out;
}

}  // namespace hazcast

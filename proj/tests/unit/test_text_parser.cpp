#include <fmt/format.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "hazcast/text_parser.hpp"
#include "payload.hpp"

using namespace hazcast;

namespace {

std::string wrap_blocks(std::string_view first_block) {
  return fmt::format(
      "Higher Summits Forecast\nIssued: 2026-01-15 05:30 -05:00\nCold and windy.\n\n"
      "Today: {}\n\n"
      "Tonight: Clear.\nTemperatures: 0-5F\nWinds: W 10-20 mph\n\n"
      "Friday: Clear.\nTemperatures: 0-5F\nWinds: W 10-20 mph\n\n"
      "Friday Night: Clear.\nTemperatures: 0-5F\nWinds: W 10-20 mph\n",
      first_block);
}

ForecastPeriod first_period(std::string_view block) {
  const auto r = parse_forecast(wrap_blocks(block));
  REQUIRE_MESSAGE(r.document, (r.diagnostics.empty() ? std::string("?") : r.diagnostics[0].message));
  return r.document->periods[0];
}

bool has_error(const ParseResult& r, std::string_view text) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::error && d.message.find(text) != std::string::npos) return true;
  }
  return false;
}

bool has_warning(const ParseResult& r) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::warning) return true;
  }
  return false;
}

// Writes a document in the forecast text grammar.
std::string number(double v) { return fmt::format("{}", v); }

std::string range_text(const ValueRange& r, std::string_view unit) {
  if (r.low == r.high) return number(r.low) + std::string(unit);
  return fmt::format("{} to {}{}", number(r.low), number(r.high), unit);
}

std::string precip_sentence(const PrecipEvent& e) {
  static const char* kNames[] = {"Snow", "Sleet", "Freezing rain", "Rain", "Wintry mix"};
  const std::string name = kNames[static_cast<int>(e.kind)];
  switch (e.certainty) {
    case Certainty::mentioned:
      return name + ".";
    case Certainty::likely:
      return name + " likely.";
    case Certainty::chance:
      std::string lower = name;
      lower[0] = static_cast<char>(std::tolower(lower[0]));
      return "Chance of " + lower + ".";
  }
  return name;
}

std::string write_forecast(const ForecastDocument& doc) {
  std::string out = fmt::format("Higher Summits Forecast\nIssued: {}\n{}\n", format_timestamp(doc.issued_at), doc.summary_text);
  for (const auto& p : doc.periods) {
    out += fmt::format("\n{}:", p.label);
    for (const auto& e : p.precip_events) out += " " + precip_sentence(e);
    for (const auto& n : p.extra_hazard_notes) out += " " + n;
    out += fmt::format("\nTemperatures: {}\n", range_text(p.temperature, "F"));
    out += "Winds: ";
    if (p.wind.direction) out += std::string(to_string(*p.wind.direction)) + " ";
    out += range_text(p.wind.sustained, " mph");
    if (p.wind.gust_high) out += fmt::format(", gusts to {} mph", number(*p.wind.gust_high));
    out += "\n";
    if (p.wind_chill) out += fmt::format("Wind chill: {}\n", range_text(*p.wind_chill, "F"));
  }
  return out;
}

}  // namespace

TEST_CASE("wind line with gusts") {
  const auto p = first_period("Snow.\nTemperatures: 0-10F\nWinds: NW 70-90 mph with higher gusts 100-110 mph");
  CHECK(p.wind.direction == Compass::NW);
  CHECK(p.wind.sustained.low == 70);
  CHECK(p.wind.sustained.high == 90);
  REQUIRE(p.wind.gust_high);
  CHECK(*p.wind.gust_high == 110);
}

TEST_CASE("temperature keeps the envelope of every number") {
  const auto p = first_period("Clear.\nTemperatures: 10-15F falling to 5F\nWinds: W 10 mph");
  CHECK(p.temperature.low == 5);
  CHECK(p.temperature.high == 15);
}

TEST_CASE("hyphens between numbers are ranges, elsewhere minus signs") {
  CHECK(first_period("Clear.\nTemps: -10--5F\nWinds: W 10 mph").temperature == ValueRange{-10, -5, Unit::fahrenheit});
  CHECK(first_period("Clear.\nTemps: -10 to 5F\nWinds: W 10 mph").temperature == ValueRange{-10, 5, Unit::fahrenheit});
  CHECK(first_period("Clear.\nTemps: \xE2\x88\x92" "12 to \xE2\x88\x92" "2\xC2\xB0" "F\nWinds: W 10 mph").temperature ==
        ValueRange{-12, -2, Unit::fahrenheit});
}

TEST_CASE("units are converted") {
  const auto c = first_period("Clear.\nTemperatures: -10 to 0C\nWinds: W 20 km/h");
  CHECK(c.temperature.low == doctest::Approx(14));
  CHECK(c.temperature.high == doctest::Approx(32));
  CHECK(c.wind.sustained.high == doctest::Approx(20 / 1.609344));
  const auto k = first_period("Clear.\nTemperatures: 0F\nWinds: W 50 knots (58 mph)");
  CHECK(k.wind.sustained.high == doctest::Approx(50 * 1.150779448));
}

TEST_CASE("calm winds and stated wind chill") {
  const auto p = first_period("Clear.\nTemperatures: 0-5F\nWinds: Calm\nWind Chill: -20 to -10F");
  CHECK(p.wind.sustained == ValueRange{0, 0, Unit::mph});
  REQUIRE(p.wind_chill);
  CHECK(*p.wind_chill == ValueRange{-20, -10, Unit::fahrenheit});
}

TEST_CASE("precipitation keywords and certainty") {
  const auto p = first_period(
      "Chance of snow. Sleet likely. No rain expected. Freezing drizzle possible late.\n"
      "Temperatures: 20F\nWinds: W 10 mph");
  const std::vector<PrecipEvent> expected{{PrecipKind::snow, Certainty::chance},
                                          {PrecipKind::sleet, Certainty::likely},
                                          {PrecipKind::freezing_rain, Certainty::chance}};
  CHECK(p.precip_events == expected);
}

TEST_CASE("a kind keeps the certainty of its first mention") {
  const auto p = first_period("Snow likely. Blowing snow.\nTemperatures: 20F\nWinds: W 10 mph");
  CHECK(p.precip_events == std::vector<PrecipEvent>{{PrecipKind::snow, Certainty::likely}});
}

TEST_CASE("hazard sentences become notes") {
  const auto p = first_period("Dense fog. Flooding of brooks likely. Clouds.\nTemperatures: 40F\nWinds: S 10 mph");
  CHECK(p.extra_hazard_notes == std::vector<std::string>{"Dense fog.", "Flooding of brooks likely."});
}

TEST_CASE("wrong number of periods") {
  const std::string text =
      "Issued: 2026-01-15 05:30Z\nSummary.\nToday: Clear.\nTemperatures: 5F\nWinds: W 5 mph\n"
      "Tonight: Clear.\nTemperatures: 5F\nWinds: W 5 mph\n";
  const auto r = parse_forecast(text);
  CHECK_FALSE(r.document);
  CHECK(has_error(r, "expected 4 periods, found 2"));
}

TEST_CASE("problems inside a period") {
  SUBCASE("missing wind") {
    CHECK_FALSE(parse_forecast(wrap_blocks("Clear.\nTemperatures: 5F")).document);
  }
  SUBCASE("speed in a temperature field") {
    CHECK_FALSE(parse_forecast(wrap_blocks("Clear.\nTemperatures: 5 mph\nWinds: W 5 mph")).document);
  }
  SUBCASE("gust below the sustained speed is dropped with a warning") {
    const auto r = parse_forecast(wrap_blocks("Clear.\nTemperatures: 5F\nWinds: W 50 mph, gusts to 30 mph"));
    REQUIRE(r.document);
    CHECK_FALSE(r.document->periods[0].wind.gust_high);
    CHECK(has_warning(r));
  }
  SUBCASE("invalid UTF-8") {
    CHECK_FALSE(parse_forecast(wrap_blocks("Fog \xC3(.\nTemperatures: 5F\nWinds: W 5 mph")).document);
  }
}

TEST_CASE("missing issue time is a warning") {
  std::string text = wrap_blocks("Clear.\nTemperatures: 5F\nWinds: W 5 mph");
  text.erase(text.find("Issued"), text.find('\n', text.find("Issued")) - text.find("Issued") + 1);
  const auto r = parse_forecast(text);
  REQUIRE(r.document);
  CHECK(has_warning(r));
}

TEST_CASE("diagnostics carry line and column") {
  const auto text = wrap_blocks("Clear.\nTemperatures: 5F");
  const auto r = parse_forecast(text);
  REQUIRE_FALSE(r.diagnostics.empty());
  const auto line = format_diagnostic(text, r.diagnostics[0]);
  CHECK(line.rfind("error:", 0) == 0);
}

TEST_CASE("shipped fixtures parse cleanly") {
  for (auto name : testing::kFixtureNames) {
    const auto text = testing::read_text(testing::fixture_dir() / (std::string(name) + ".txt"));
    const auto r = parse_forecast(text, name);
    CAPTURE(name);
    CHECK(r.document);
    for (const auto& d : r.diagnostics) CHECK(d.severity != Severity::error);
    CHECK(r.coverage > 0.8);
  }
}

TEST_CASE("severe-day fixture values") {
  const auto doc = testing::load_fixture("severe-day");
  const auto& p = doc.periods[0];
  CHECK(p.temperature == ValueRange{0, 10, Unit::fahrenheit});
  CHECK(p.wind.sustained == ValueRange{70, 90, Unit::mph});
  CHECK(p.wind.gust_high == 110.0);
  CHECK(p.precip_events.front().kind == PrecipKind::snow);
  CHECK(format_timestamp(doc.issued_at) == "2026-01-15T10:30:00Z");
  CHECK(doc.summary_text.rfind("Arctic air", 0) == 0);
}

TEST_CASE("written forecasts parse back to the same document") {
  testing::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    auto doc = testing::random_document(rng);
    for (auto& p : doc.periods) {
      // Only notes the grammar recognises as hazards, with no precipitation words.
      for (auto& n : p.extra_hazard_notes) n = i % 2 ? "Dense fog." : "Flooding of brooks likely.";
      p.extra_hazard_notes.erase(std::unique(p.extra_hazard_notes.begin(), p.extra_hazard_notes.end()),
                                 p.extra_hazard_notes.end());
    }
    const auto text = write_forecast(doc);
    const auto r = parse_forecast(text, doc.source_id);
    REQUIRE_MESSAGE(r.document, text);
    CHECK_MESSAGE(*r.document == doc, text);
  }
}

#include "doctest.h"
#include "generators.hpp"
#include "hazcast/errors.hpp"
#include "hazcast/forecast.hpp"

using namespace hazcast;
using namespace std::chrono_literals;

namespace {

ForecastPeriod calm_period(std::string label, double t_low, double v_high) {
  ForecastPeriod p;
  p.label = std::move(label);
  p.temperature = {t_low, t_low + 5, Unit::fahrenheit};
  p.wind.sustained = {0, v_high, Unit::mph};
  return p;
}

ForecastDocument four_periods() {
  ForecastDocument doc;
  doc.summary_text = "Quiet weather.";
  doc.periods = {calm_period("Today", 10, 40), calm_period("Tonight", 5, 90), calm_period("Friday", 8, 60),
                 calm_period("Friday Night", 12, 50)};
  return doc;
}

bool mentions(const std::vector<Violation>& v, std::string_view field_part) {
  for (const auto& x : v) {
    if (x.field.find(field_part) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("well-formed document has no violations") { CHECK(validate(four_periods()).empty()); }

TEST_CASE("three periods is one violation about the period count") {
  auto doc = four_periods();
  doc.periods.pop_back();
  const auto v = validate(doc);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "periods");
}

TEST_CASE("reversed temperature range is one violation") {
  auto doc = four_periods();
  doc.periods[1].temperature = {20, 10, Unit::fahrenheit};
  const auto v = validate(doc);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field.find("temperature") != std::string::npos);
}

TEST_CASE("period rules") {
  auto p = calm_period("Today", 0, 10);
  SUBCASE("gust below sustained") {
    p.wind.gust_high = 5;
    CHECK(mentions(validate(p), "gust"));
  }
  SUBCASE("negative wind") {
    p.wind.sustained = {-5, 10, Unit::mph};
    CHECK(mentions(validate(p), "sustained"));
  }
  SUBCASE("wrong unit") {
    p.temperature.unit = Unit::mph;
    CHECK(mentions(validate(p), "temperature"));
  }
  SUBCASE("non-finite value") {
    p.temperature.low = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(validate(p).empty());
  }
  SUBCASE("empty label and note") {
    p.label.clear();
    p.extra_hazard_notes.push_back("");
    CHECK(validate(p).size() == 2);
  }
}

TEST_CASE("day and night labels must alternate") {
  auto doc = four_periods();
  doc.periods[1].label = "Friday";
  CHECK_FALSE(validate(doc).empty());
  CHECK(is_night_label("Tonight"));
  CHECK(is_night_label("friday NIGHT"));
  CHECK(is_night_label("This Evening"));
  CHECK_FALSE(is_night_label("Today"));
}

TEST_CASE("require_valid throws InputError") {
  auto doc = four_periods();
  doc.summary_text.clear();
  CHECK_THROWS_AS(require_valid(doc), InputError);
}

TEST_CASE("worst case of identical periods is that period") {
  auto doc = four_periods();
  for (std::size_t i = 1; i < 4; ++i) {
    doc.periods[i] = doc.periods[0];
    doc.periods[i].label = i % 2 ? "Tonight" : "Today";
  }
  const auto w = worst_case_view(doc);
  CHECK(w.temperature == doc.periods[0].temperature);
  CHECK(w.wind == doc.periods[0].wind);
  CHECK(w.precip_events == doc.periods[0].precip_events);
  CHECK(w.label == kWorstCaseLabel);
}

TEST_CASE("worst case takes the coldest low and the strongest wind") {
  auto doc = four_periods();
  const double lows[] = {10, 5, 8, 12};
  const double highs[] = {40, 90, 60, 50};
  for (int i = 0; i < 4; ++i) {
    doc.periods[i].temperature = {lows[i], lows[i] + 10, Unit::fahrenheit};
    doc.periods[i].wind.sustained = {highs[i] - 10, highs[i], Unit::mph};
  }
  const auto w = worst_case_view(doc);
  CHECK(w.temperature.low == 5);
  CHECK(w.temperature.high == 15);
  CHECK(w.wind.sustained.high == 90);
  CHECK(w.wind.sustained.low == 80);
}

TEST_CASE("worst case precipitation is the union") {
  auto doc = four_periods();
  doc.periods[1].precip_events = {{PrecipKind::snow, Certainty::likely}};
  CHECK(worst_case_view(doc).precip_events == std::vector<PrecipEvent>{{PrecipKind::snow, Certainty::likely}});
}

TEST_CASE("worst case direction follows the strongest wind") {
  auto doc = four_periods();
  doc.periods[1].wind.direction = Compass::NW;
  doc.periods[0].wind.direction = Compass::S;
  CHECK(worst_case_view(doc).wind.direction == Compass::NW);
}

TEST_CASE("worst case is valid and bounded on generated documents") {
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto doc = testing::random_document(rng);
    const auto w = worst_case_view(doc);
    CHECK(validate(w).empty());
    for (const auto& p : doc.periods) {
      CHECK(w.temperature.low <= p.temperature.low);
      CHECK(w.wind.sustained.high >= p.wind.sustained.high);
      if (p.wind.gust_high) CHECK(*w.wind.gust_high >= *p.wind.gust_high);
    }
  }
}

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2026-01-15 05:30 -05:00");
  REQUIRE(t);
  CHECK(format_timestamp(*t) == "2026-01-15T10:30:00Z");
  CHECK(parse_timestamp("2026-01-15T10:30:00Z") == t);
  CHECK(parse_timestamp("2026-01-15T10:30") == t);
  CHECK_FALSE(parse_timestamp("2026-02-30T10:30Z"));
  CHECK_FALSE(parse_timestamp("yesterday"));
}

TEST_CASE("enum names round trip") {
  for (int i = 0; i < 16; ++i) {
    const auto c = static_cast<Compass>(i);
    CHECK(compass_from_string(to_string(c)) == c);
  }
  for (int i = 0; i < 5; ++i) {
    const auto k = static_cast<PrecipKind>(i);
    CHECK(precip_kind_from_string(to_string(k)) == k);
  }
  for (int i = 0; i < 3; ++i) {
    const auto c = static_cast<Certainty>(i);
    CHECK(certainty_from_string(to_string(c)) == c);
  }
  CHECK(compass_from_string("nw") == Compass::NW);
  CHECK_FALSE(compass_from_string("northwest-ish"));
}

#include <set>

#include <fmt/format.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "hazcast/errors.hpp"
#include "hazcast/render.hpp"
#include "payload.hpp"

using namespace hazcast;

namespace {

const HazardEngine& engine() {
  static const HazardEngine e(testing::shipped_tables());
  return e;
}

const Renderer& renderer() {
  static const Renderer r(engine(), testing::shipped_glyphs());
  return r;
}

std::size_t count(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto at = haystack.find(needle); at != std::string_view::npos; at = haystack.find(needle, at + 1)) ++n;
  return n;
}

std::size_t icon_count(const RenderedDocument& r) {
  std::size_t n = 0;
  for (const auto& e : r.manifest) {
    if (e.source_field.rfind("derived:", 0) == 0 && e.source_field.find('.') != std::string::npos) ++n;
  }
  return n;
}

std::set<std::pair<std::string, std::string>> manifest_set(const RenderedDocument& r) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : r.manifest) out.emplace(e.element_id, e.source_field);
  return out;
}

ForecastDocument hazard_free() {
  ForecastDocument doc;
  doc.summary_text = "Pleasant weather continues. Light winds.";
  const char* labels[] = {"Today", "Tonight", "Saturday", "Saturday Night"};
  for (auto label : labels) {
    ForecastPeriod p;
    p.label = label;
    p.temperature = {45, 55, Unit::fahrenheit};
    p.wind.sustained = {5, 10, Unit::mph};
    p.precip_events = {{PrecipKind::rain, Certainty::chance}};
    doc.periods.push_back(p);
  }
  return doc;
}

std::string without_line_containing(const std::string& s, std::string_view marker) {
  const auto at = s.find(marker);
  REQUIRE(at != std::string::npos);
  const auto begin = s.rfind('\n', at) + 1;
  const auto end = s.find('\n', at);
  return s.substr(0, begin) + s.substr(end + 1);
}

}  // namespace

TEST_CASE("condition and format names") {
  for (auto c : kAllConditions) CHECK(condition_from_string(to_string(c)) == c);
  for (auto f : kAllFormats) CHECK(format_from_string(to_string(f)) == f);
  CHECK(condition_from_string("per_day_icons") == LayoutCondition::per_day_icons);
  CHECK_FALSE(condition_from_string("icons-first"));
}

TEST_CASE("hazard-free document under icons differs from baseline only by an empty row") {
  const auto doc = hazard_free();
  for (auto format : kAllFormats) {
    CAPTURE(to_string(format));
    const auto base = renderer().render(doc, LayoutCondition::baseline, format);
    const auto icons = renderer().render(doc, LayoutCondition::icons, format);
    const std::string marker = format == RenderFormat::plain ? "Hazards (next 48 hours): none" : "id=\"icons-overall\"";
    CHECK(without_line_containing(icons.payload, marker) == base.payload);
    CHECK(icon_count(icons) == 0);
  }
}

TEST_CASE("baseline and summary-last carry the same elements") {
  testing::Rng rng(8);
  std::vector<ForecastDocument> docs = testing::load_all_fixtures();
  for (int i = 0; i < 30; ++i) docs.push_back(testing::random_document(rng, true));
  for (const auto& doc : docs) {
    for (auto format : kAllFormats) {
      const auto a = renderer().render(doc, LayoutCondition::baseline, format);
      const auto b = renderer().render(doc, LayoutCondition::summary_last, format);
      CHECK(manifest_set(a) == manifest_set(b));
      CHECK(testing::element_texts(a.payload, format) == testing::element_texts(b.payload, format));
      CHECK(a.payload != b.payload);
    }
  }
}

TEST_CASE("severe-day per-day rows match the engine") {
  const auto doc = testing::load_fixture("severe-day");
  const auto sets = engine().derive_document_icons(doc, IconMode::per_period);
  const auto r = renderer().render(doc, LayoutCondition::per_day_icons, RenderFormat::svg);
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t n = 0;
    for (const auto& e : r.manifest) {
      if (e.source_field.rfind(fmt::format("derived:periods[{}].", i), 0) == 0) ++n;
    }
    CHECK(n == sets[i].size());
    CHECK(count(r.payload, fmt::format("id=\"p{}-icons\"", i + 1)) == 1);
  }
}

TEST_CASE("layout order per condition") {
  const auto doc = testing::load_fixture("deep-freeze");
  auto pos = [&](LayoutCondition c, std::string_view id) {
    const auto r = renderer().render(doc, c, RenderFormat::html);
    return r.payload.find(fmt::format("id=\"{}\"", id));
  };
  CHECK(pos(LayoutCondition::baseline, "summary") < pos(LayoutCondition::baseline, "p1"));
  CHECK(pos(LayoutCondition::summary_last, "summary") > pos(LayoutCondition::summary_last, "p4"));
  CHECK(pos(LayoutCondition::icons, "icons-overall") < pos(LayoutCondition::icons, "summary"));
  CHECK(pos(LayoutCondition::per_day_icons, "p1-icons") > pos(LayoutCondition::per_day_icons, "p1-label"));
  CHECK(pos(LayoutCondition::per_day_icons, "summary") > pos(LayoutCondition::per_day_icons, "p4"));
  CHECK(pos(LayoutCondition::baseline, "icons-overall") == std::string::npos);
}

TEST_CASE("every summary sentence and field survives rendering") {
  testing::Rng rng(12);
  std::vector<ForecastDocument> docs = testing::load_all_fixtures();
  for (int i = 0; i < 30; ++i) docs.push_back(testing::random_document(rng, true));
  for (const auto& doc : docs) {
    for (auto c : kAllConditions) {
      for (auto f : kAllFormats) {
        const auto r = renderer().render(doc, c, f);
        const auto text = testing::visible_text(r.payload, f);
        for (const auto& s : testing::sentences(doc.summary_text)) CHECK_MESSAGE(text.find(s) != std::string::npos, s);
        for (const auto& p : doc.periods) {
          for (const auto& n : p.extra_hazard_notes) {
            for (const auto& s : testing::sentences(n)) CHECK_MESSAGE(text.find(s) != std::string::npos, s);
          }
        }
      }
    }
  }
}

TEST_CASE("each source field maps to exactly one element") {
  const auto doc = testing::load_fixture("severe-day");
  for (auto c : kAllConditions) {
    const auto r = renderer().render(doc, c, RenderFormat::plain);
    std::multiset<std::string> sources;
    for (const auto& e : r.manifest) sources.insert(e.source_field);
    CHECK(sources.count("summary_text") == 1);
    CHECK(sources.count("issued_at") == 1);
    for (std::size_t i = 0; i < 4; ++i) {
      for (auto field : {"label", "temperature", "wind", "wind_chill", "precip_events"}) {
        CHECK(sources.count(fmt::format("periods[{}].{}", i, field)) == (std::string(field) == "precip_events" && i == 3 ? 0 : 1));
      }
    }
  }
}

TEST_CASE("renders are deterministic") {
  const auto doc = testing::load_fixture("mixed-snow");
  for (auto c : kAllConditions) {
    for (auto f : kAllFormats) CHECK(renderer().render(doc, c, f).payload == renderer().render(doc, c, f).payload);
  }
}

TEST_CASE("invalid document is rejected") {
  auto doc = testing::load_fixture("mixed-snow");
  doc.periods.pop_back();
  CHECK_THROWS_AS(static_cast<void>(renderer().render(doc, LayoutCondition::baseline, RenderFormat::svg)), InputError);
}

TEST_CASE("icon fragments") {
  const auto& t = engine().tables();
  HazardIcon freezing{HazardKind::freezing_temp, 1, t.freezing.band(1).color, t.freezing.scale_name, t.freezing.glyph_id,
                      t.freezing.plain_name, t.freezing.band(1).tag, t.freezing.band(1).label, std::nullopt};
  CHECK(renderer().render_icon(freezing, RenderFormat::plain) == "[FREEZING]");

  HazardIcon wind{HazardKind::wind, 11, t.wind.band(11).color, t.wind.scale_name, t.wind.glyph_id, t.wind.plain_name,
                  t.wind.band(11).tag, t.wind.band(11).label, std::nullopt};
  CHECK(renderer().render_icon(wind, RenderFormat::plain) == "[WIND F11]");
  const auto svg = renderer().render_icon(wind, RenderFormat::svg);
  CHECK(svg.find("fill=\"" + t.wind.band(11).color + "\"") != std::string::npos);
  CHECK(svg.find("Beaufort level 11: Violent storm") != std::string::npos);
  CHECK(svg == renderer().render_icon(wind, RenderFormat::svg));
  wind.gust_mph = 85;
  CHECK(renderer().render_icon(wind, RenderFormat::plain) == "[WIND F11 G85]");

  wind.glyph_id = "tornado";
  CHECK_THROWS_AS(static_cast<void>(renderer().render_icon(wind, RenderFormat::html)), InputError);
}

TEST_CASE("renderer needs a glyph for every kind") {
  GlyphSet partial;
  partial.add("wind", "<path d=\"M0 0\"/>");
  CHECK_THROWS_AS(Renderer(engine(), partial), InputError);
}

TEST_CASE("stimulus sets") {
  const auto docs = testing::load_all_fixtures();
  SUBCASE("baseline has no icons") {
    const auto set = renderer().render_stimulus_set(docs, LayoutCondition::baseline, RenderFormat::svg);
    REQUIRE(set.documents.size() == 5);
    for (const auto& d : set.documents) {
      CHECK(icon_count(d) == 0);
      CHECK(d.payload.find("class=\"icon\"") == std::string::npos);
    }
  }
  SUBCASE("icons rows match the overall set") {
    const auto set = renderer().render_stimulus_set(docs, LayoutCondition::icons, RenderFormat::plain);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto overall = engine().derive_document_icons(docs[i], IconMode::overall)[0];
      std::string row = "Hazards (next 48 hours):";
      for (const auto& icon : overall) row += " " + icon_plain_text(icon);
      if (overall.empty()) row += " none";
      CHECK(set.documents[i].payload.find(row + "\n") != std::string::npos);
    }
    CHECK(set.file_names[0] == "01-severe-day.txt");
    CHECK(set.index.find("\"condition\": \"icons\"") != std::string::npos);
  }
  SUBCASE("empty list") {
    const auto set = renderer().render_stimulus_set({}, LayoutCondition::icons, RenderFormat::html);
    CHECK(set.documents.empty());
    CHECK(set.file_names.empty());
    CHECK(set.index.find("\"stimuli\": []") != std::string::npos);
  }
}

TEST_CASE("manifest json lists every element") {
  const auto doc = testing::load_fixture("severe-day");
  const auto r = renderer().render(doc, LayoutCondition::icons, RenderFormat::html);
  const auto json = manifest_json(r, doc.source_id, LayoutCondition::icons);
  for (const auto& e : r.manifest) CHECK(json.find("\"" + e.element_id + "\"") != std::string::npos);
  for (const auto& e : r.manifest) {
    if (e.source_field.rfind("derived:", 0) == 0 || e.source_field.rfind("static:", 0) == 0) continue;
    CHECK(count(r.payload, "id=\"" + e.element_id + "\"") == 1);
  }
}

#include "fixtures.hpp"

#include <stdexcept>

#include "hazcast/text_parser.hpp"
#include "payload.hpp"

namespace hazcast::testing {

ForecastDocument load_fixture(std::string_view name) {
  const auto text = read_text(fixture_dir() / (std::string(name) + ".txt"));
  auto result = parse_forecast(text, name);
  if (result.has_errors()) {
    throw std::runtime_error("fixture " + std::string(name) + ": " + result.diagnostics.front().message);
  }
  return *result.document;
}

std::vector<ForecastDocument> load_all_fixtures() {
  std::vector<ForecastDocument> out;
  for (auto name : kFixtureNames) out.push_back(load_fixture(name));
  return out;
}

HazardTables shipped_tables() { return load_hazard_tables(data_dir() / "scales"); }

GlyphSet shipped_glyphs() { return GlyphSet::load(data_dir() / "glyphs"); }

}  // namespace hazcast::testing

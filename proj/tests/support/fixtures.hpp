#pragma once

#include <string_view>
#include <vector>

#include "hazcast/forecast.hpp"
#include "hazcast/hazards.hpp"
#include "hazcast/render.hpp"

namespace hazcast::testing {

/// Parses a raw fixture; throws if it has error diagnostics.
ForecastDocument load_fixture(std::string_view name);
std::vector<ForecastDocument> load_all_fixtures();

HazardTables shipped_tables();
GlyphSet shipped_glyphs();

}  // namespace hazcast::testing

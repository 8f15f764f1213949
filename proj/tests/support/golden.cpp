#include "golden.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "payload.hpp"

namespace fs = std::filesystem;

namespace hazcast::testing {

fs::path golden_path(std::string_view fixture, LayoutCondition condition, RenderFormat format) {
  return golden_dir() / std::string(fixture) / fmt::format("{}.{}", to_string(condition), file_extension(format));
}

std::vector<GoldenDiff> golden_diffs(const Renderer& renderer) {
  std::vector<GoldenDiff> out;
  for (auto name : kFixtureNames) {
    const auto doc = load_fixture(name);
    for (auto c : kAllConditions) {
      for (auto f : kAllFormats) {
        const auto path = golden_path(name, c, f);
        if (!fs::exists(path)) {
          out.push_back({path, "missing"});
          continue;
        }
        const auto frozen = read_text(path);
        const auto fresh = renderer.render(doc, c, f).payload;
        if (frozen == fresh) continue;
        const auto at = std::mismatch(frozen.begin(), frozen.end(), fresh.begin(), fresh.end()).first - frozen.begin();
        out.push_back({path, fmt::format("differs at byte {}", at)});
      }
    }
  }
  return out;
}

std::size_t write_goldens(const Renderer& renderer) {
  std::size_t n = 0;
  for (auto name : kFixtureNames) {
    const auto doc = load_fixture(name);
    for (auto c : kAllConditions) {
      for (auto f : kAllFormats) {
        const auto path = golden_path(name, c, f);
        fs::create_directories(path.parent_path());
        std::ofstream(path, std::ios::binary) << renderer.render(doc, c, f).payload;
        ++n;
      }
    }
  }
  return n;
}

}  // namespace hazcast::testing

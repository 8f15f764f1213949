#include "doctest.h"
#include "fixtures.hpp"
#include "golden.hpp"

using namespace hazcast;

TEST_CASE("renders match the frozen golden files") {
  const HazardEngine engine(testing::shipped_tables());
  const Renderer renderer(engine, testing::shipped_glyphs());
  const auto diffs = testing::golden_diffs(renderer);
  for (const auto& d : diffs) CHECK_MESSAGE(false, d.path.string() << ": " << d.problem);
  CHECK(diffs.empty());
}

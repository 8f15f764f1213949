#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "doctest.h"
#include "generators.hpp"
#include "hazcast/cli.hpp"
#include "hazcast/errors.hpp"
#include "hazcast/render.hpp"
#include "json.hpp"
#include "payload.hpp"

namespace fs = std::filesystem;
using namespace hazcast;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(std::string_view name) { return (testing::fixture_dir() / fmt::format("{}.txt", name)).string(); }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / fmt::format("hazcast-test-{:x}", (std::uint64_t{rd()} << 32) | rd());
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, std::string_view text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path path_;
};

std::size_t count_lines_starting(std::string_view text, std::string_view prefix) {
  std::size_t n = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

std::pair<std::string, std::string> study_csv(const std::vector<stats::ResponseRecord>& records) {
  std::string responses =
      "participant_id,forecast_id,car_trip,day_hike,mountaineering,backcountry_skiing,single_night_camping,"
      "multi_night_camping\n";
  std::string participants = "participant_id,condition,grips_score,mentioned_per_day_info,mentioned_summary_only_info,cohort\n";
  std::string last;
  for (const auto& r : records) {
    responses += fmt::format("{},{}", r.participant_id, r.forecast_id);
    for (double v : r.activity_ratings) responses += fmt::format(",{}", v);
    responses += '\n';
    if (r.participant_id != last) {
      participants += fmt::format("{},{},{},{},{},{}\n", r.participant_id, to_string(r.condition), r.grips_score,
                                  r.mentioned_per_day_info, r.mentioned_summary_only_info, to_string(r.cohort));
      last = r.participant_id;
    }
  }
  return {responses, participants};
}

}  // namespace

TEST_CASE("classify lists the severe day's overall icons") {
  const auto r = run({"classify", fixture("severe-day")});
  CHECK(r.code == 0);
  CHECK(count_lines_starting(r.out, "icon\t") == 4);
  CHECK(r.out.find("\twind\t12\t") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("classify per period lists one icon row per period") {
  const auto r = run({"classify", fixture("severe-day"), "--mode", "per-period"});
  CHECK(r.code == 0);
  CHECK(count_lines_starting(r.out, "icon\tp1\t") + count_lines_starting(r.out, "none\tp1") >= 1);
  CHECK(count_lines_starting(r.out, "icon\tp4\t") + count_lines_starting(r.out, "none\tp4") >= 1);
}

TEST_CASE("triad advisory needs a threshold file") {
  TempDir dir;
  const auto thresholds = dir.write("t.txt", "wind_mph = 50\ntemperature_f = 0\n");
  const auto r = run({"classify", fixture("severe-day"), "--triad-thresholds", thresholds.string()});
  CHECK(r.code == 0);
  CHECK(count_lines_starting(r.out, "triad\t") == 4);
  CHECK(r.out.find("no_go") != std::string::npos);

  const auto partial = dir.write("p.txt", "wind_mph = 50\n");
  const auto bad = run({"classify", fixture("severe-day"), "--triad-thresholds", partial.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("temperature_f") != std::string::npos);
}

TEST_CASE("parse and render accept both raw and canonical input") {
  TempDir dir;
  const auto canonical = dir.path() / "severe.json";
  REQUIRE(run({"parse", fixture("severe-day"), "--out", canonical.string()}).code == 0);
  const auto from_raw = run({"render", fixture("severe-day"), "--condition", "icons", "--format", "plain"});
  const auto from_json = run({"render", canonical.string(), "--condition", "icons", "--format", "plain"});
  CHECK(from_raw.code == 0);
  CHECK(from_raw.out == from_json.out);
}

TEST_CASE("render writes a manifest") {
  TempDir dir;
  const auto manifest = dir.path() / "m.json";
  const auto out = dir.path() / "doc.svg";
  const auto r = run({"render", fixture("severe-day"), "--condition", "per-day-icons", "--format", "svg", "--out",
                      out.string(), "--manifest", manifest.string()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(testing::read_text(manifest));
  CHECK(j["condition"] == "per-day-icons");
  CHECK(j["source_id"] == "severe-day");
  CHECK(j["elements"].size() > 10);
  CHECK(testing::read_text(out).rfind("<svg", 0) == 0);
}

TEST_CASE("output is byte-identical across runs") {
  for (auto condition : kAllConditions) {
    for (auto format : kAllFormats) {
      const std::vector<std::string> args{"render", fixture("mixed-snow"), "--condition",
                                          std::string(to_string(condition)), "--format", std::string(to_string(format))};
      const auto a = run(args);
      const auto b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}

TEST_CASE("stimuli writes files, manifests and an index") {
  TempDir dir;
  std::vector<std::string> args{"stimuli"};
  for (auto name : testing::kFixtureNames) args.push_back(fixture(name));
  for (std::string extra : {"--condition", "icons", "--format", "html", "--out"}) args.push_back(extra);
  args.push_back(dir.path().string());
  const auto r = run(args);
  REQUIRE(r.code == 0);
  const auto index = nlohmann::json::parse(testing::read_text(dir.path() / "index.json"));
  CHECK(index["count"] == 5);
  for (const auto& s : index["stimuli"]) {
    const std::string file = s["file"];
    CHECK(fs::exists(dir.path() / file));
    CHECK(fs::exists(dir.path() / (file + ".manifest.json")));
  }
}

TEST_CASE("unknown condition names the valid ones") {
  const auto r = run({"render", fixture("severe-day"), "--condition", "sideways", "--format", "svg"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  for (auto name : {"baseline", "summary-last", "icons", "per-day-icons"}) CHECK(r.err.find(name) != std::string::npos);
  CHECK(r.err.rfind("hazcast: error[input]:", 0) == 0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"render", fixture("severe-day")}).code == 1);
  const auto r = run({"classify", fixture("severe-day"), "--mode", "sometimes"});
  CHECK(r.code == 1);
  CHECK(r.err.find("sometimes") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classify") != std::string::npos);
}

TEST_CASE("missing and malformed forecasts exit 1") {
  TempDir dir;
  const auto missing = run({"classify", (dir.path() / "nope.txt").string()});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("nope.txt") != std::string::npos);

  const auto garbage = dir.write("garbage.txt", "Sunny. Maybe.\n");
  const auto g = run({"classify", garbage.string()});
  CHECK(g.code == 1);
  CHECK(count_lines_starting(g.err, "hazcast: error[input]:") == 1);

  const auto json = dir.write("bad.json", "{\"schema\": 7}");
  CHECK(run({"render", json.string(), "--condition", "icons", "--format", "svg"}).code == 1);
}

TEST_CASE("unwritable output path exits 1") {
  TempDir dir;
  const auto blocker = dir.write("file", "x");
  const auto r = run({"parse", fixture("severe-day"), "--out", (blocker / "sub" / "out.json").string()});
  CHECK(r.code == 1);
}

TEST_CASE("validate-tables on shipped and broken data") {
  const auto ok = run({"validate-tables"});
  CHECK(ok.code == 0);
  CHECK(count_lines_starting(ok.out, "ok\t") == 4);

  TempDir dir;
  fs::copy(testing::data_dir() / "scales", dir.path() / "scales");
  auto text = testing::read_text(dir.path() / "scales" / "freezing.scale");
  const auto at = text.find("band 1 -150 32");
  REQUIRE(at != std::string::npos);
  text.replace(at, 14, "band 1 -150 30");
  dir.write("scales/freezing.scale", text);
  const auto gap = run({"--tables", (dir.path() / "scales").string(), "validate-tables"});
  CHECK(gap.code == 1);
  CHECK(count_lines_starting(gap.out, "fail\t") >= 1);
  CHECK(run({"--tables", (dir.path() / "scales").string(), "classify", fixture("severe-day")}).code == 1);

  fs::remove(dir.path() / "scales" / "beaufort.scale");
  CHECK(run({"--tables", (dir.path() / "scales").string(), "validate-tables"}).code == 1);
}

TEST_CASE("missing glyph art exits 1") {
  TempDir dir;
  fs::copy(testing::data_dir() / "glyphs", dir.path() / "glyphs");
  fs::remove(dir.path() / "glyphs" / "wind.svg");
  const auto r = run({"--glyphs", (dir.path() / "glyphs").string(), "render", fixture("severe-day"), "--condition",
                      "icons", "--format", "svg"});
  CHECK(r.code == 1);
  CHECK(r.err.find("wind") != std::string::npos);
  // Text-only layouts still need the art to be present for the same reason.
  CHECK(run({"--glyphs", (dir.path() / "glyphs").string(), "validate-tables"}).code == 1);
}

TEST_CASE("stats on a synthetic study") {
  testing::Rng rng(21);
  const auto [responses, participants] = study_csv(testing::random_study(rng, 6, 3, 2));
  TempDir dir;
  const auto rp = dir.write("responses.csv", responses);
  const auto pp = dir.write("participants.csv", participants);
  const auto text = run({"stats", "--responses", rp.string(), "--participants", pp.string()});
  CHECK(text.code == 0);
  CHECK_FALSE(text.out.empty());

  const auto out = dir.path() / "report";
  const auto r = run({"stats", "--responses", rp.string(), "--participants", pp.string(), "--out", out.string(), "--plot"});
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(testing::read_text(out / "report.json"));
  CHECK(report["schema"] == "hazcast.stats_report");
  CHECK(report["participants"] == 24);
  CHECK(report["anova"]["df_between"] == 3);
  CHECK(report["anova"]["df_within"] == 20);
  CHECK(fs::exists(out / "plot.json"));
}

TEST_CASE("stats input errors exit 1") {
  testing::Rng rng(22);
  const auto [responses, participants] = study_csv(testing::random_study(rng, 2, 2));
  TempDir dir;
  const auto pp = dir.write("participants.csv", participants);

  const auto header_only = dir.write("empty.csv", responses.substr(0, responses.find('\n') + 1));
  const auto empty = run({"stats", "--responses", header_only.string(), "--participants", pp.string()});
  CHECK(empty.code == 1);
  CHECK(empty.err.find("no records") != std::string::npos);

  auto bad = responses;
  const auto second_line = bad.find('\n') + 1;
  const auto last_comma = bad.find('\n', second_line);
  bad.replace(bad.rfind(',', last_comma) + 1, last_comma - bad.rfind(',', last_comma) - 1, "101");
  const auto out_of_range = dir.write("range.csv", bad);
  const auto range = run({"stats", "--responses", out_of_range.string(), "--participants", pp.string()});
  CHECK(range.code == 1);
  CHECK(range.err.find("101") != std::string::npos);

  auto blank = responses;
  blank.replace(blank.rfind(',', last_comma) + 1, last_comma - blank.rfind(',', last_comma) - 1, "");
  const auto missing = dir.write("missing.csv", blank);
  CHECK(run({"stats", "--responses", missing.string(), "--participants", pp.string()}).code == 1);

  CHECK(run({"stats", "--responses", (dir.path() / "absent.csv").string(), "--participants", pp.string()}).code == 1);
}

TEST_CASE("escaped exceptions map to exit codes") {
  std::ostringstream err;
  CHECK(cli::report_failure(std::make_exception_ptr(InvariantError("band table out of order")), err) == 2);
  CHECK(err.str() == "hazcast: error[internal]: band table out of order\n");
  err.str("");
  CHECK(cli::report_failure(std::make_exception_ptr(InputError("bad")), err) == 1);
  CHECK(err.str() == "hazcast: error[input]: bad\n");
  err.str("");
  CHECK(cli::report_failure(std::make_exception_ptr(42), err) == 2);
}

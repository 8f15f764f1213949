#include "hazcast/scale_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "text_util.hpp"

namespace hazcast {

namespace {

struct RequiredDomain {
  double low;
  double high;
};

RequiredDomain required_domain(HazardKind kind) {
  switch (kind) {
    case HazardKind::wind:
      return {0.0, 200.0};
    case HazardKind::wind_chill:
      return {-120.0, 50.0};
    case HazardKind::freezing_temp:
      return {-120.0, 120.0};
    case HazardKind::winter_precip:
      return {0.0, 3.0};
  }
  return {0.0, 0.0};
}

std::optional<HazardKind> kind_from_string(std::string_view s) {
  for (auto k : kHazardOrder) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_hex_color(std::string_view s) {
  return s.size() == 7 && s[0] == '#' && std::all_of(s.begin() + 1, s.end(), [](char c) {
           return detail::is_digit(c) || (c >= 'A' && c <= 'F');
         });
}

/// Splits off the first whitespace-delimited word.
std::string_view next_word(std::string_view& rest) {
  rest = detail::trim(rest);
  std::size_t i = 0;
  while (i < rest.size() && !detail::is_space(rest[i])) ++i;
  const auto word = rest.substr(0, i);
  rest = detail::trim(rest.substr(i));
  return word;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(HazardKind kind) {
  switch (kind) {
    case HazardKind::wind:
      return "wind";
    case HazardKind::wind_chill:
      return "wind_chill";
    case HazardKind::freezing_temp:
      return "freezing_temp";
    case HazardKind::winter_precip:
      return "winter_precip";
  }
  return "wind";
}

const Band& ScaleTable::classify(double value) const {
  if (std::isnan(value)) throw InputError(fmt::format("{}: cannot classify NaN", scale_name));
  const double v = std::clamp(value, domain_low, domain_high);
  for (const auto& b : bands) {
    const bool inside = closure == BandClosure::lower_inclusive
                            ? (b.low <= v && (v < b.high || (v == domain_high && b.high == domain_high)))
                            : ((b.low < v || (v == domain_low && b.low == domain_low)) && v <= b.high);
    if (inside) return b;
  }
  throw InvariantError(fmt::format("{}: no band contains {}", scale_name, value));
}

const Band& ScaleTable::band(int level) const {
  if (level < 0 || level > max_level()) {
    throw InputError(fmt::format("{}: no level {} (levels 0-{})", scale_name, level, max_level()));
  }
  return bands[static_cast<std::size_t>(level)];
}

ScaleTable parse_scale_table(std::string_view text, std::string_view origin) {
  ScaleTable table;
  bool have_format = false;
  bool have_kind = false;
  bool have_domain = false;
  bool have_closure = false;
  bool have_severity = false;
  bool have_floor = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    std::string_view rest = detail::trim(line);
    if (rest.empty() || rest.front() == '#') continue;

    auto fail = [&](const std::string& msg) -> InputError {
      return InputError(fmt::format("{}:{}: {}", origin, line_no, msg));
    };
    auto number = [&](std::string_view w, const char* what) {
      auto v = detail::parse_double(w);
      if (!v || !std::isfinite(*v)) throw fail(fmt::format("{} \"{}\" is not a number", what, w));
      return *v;
    };

    const std::string key(next_word(rest));
    if (key == "format") {
      const auto name = next_word(rest);
      const auto version = next_word(rest);
      if (name != "hazcast-scale") throw fail(fmt::format("unknown format \"{}\"", name));
      if (version != "1") throw fail(fmt::format("unsupported format version \"{}\"", version));
      have_format = true;
    } else if (!have_format) {
      throw fail("first directive must be \"format hazcast-scale 1\"");
    } else if (key == "kind") {
      const auto k = kind_from_string(rest);
      if (!k) throw fail(fmt::format("unknown kind \"{}\"", rest));
      table.kind = *k;
      have_kind = true;
    } else if (key == "scale_name") {
      table.scale_name = std::string(rest);
    } else if (key == "plain_name") {
      table.plain_name = std::string(rest);
    } else if (key == "glyph") {
      table.glyph_id = std::string(rest);
    } else if (key == "unit") {
      table.unit = std::string(rest);
    } else if (key == "domain") {
      table.domain_low = number(next_word(rest), "domain low");
      table.domain_high = number(next_word(rest), "domain high");
      have_domain = true;
    } else if (key == "closure") {
      if (rest == "lower-inclusive") {
        table.closure = BandClosure::lower_inclusive;
      } else if (rest == "upper-inclusive") {
        table.closure = BandClosure::upper_inclusive;
      } else {
        throw fail(fmt::format("closure must be lower-inclusive or upper-inclusive, not \"{}\"", rest));
      }
      have_closure = true;
    } else if (key == "severity") {
      if (rest == "increasing") {
        table.severity = SeverityDirection::increasing;
      } else if (rest == "decreasing") {
        table.severity = SeverityDirection::decreasing;
      } else {
        throw fail(fmt::format("severity must be increasing or decreasing, not \"{}\"", rest));
      }
      have_severity = true;
    } else if (key == "display_floor") {
      const auto v = detail::parse_int(rest);
      if (!v) throw fail(fmt::format("display_floor \"{}\" is not an integer", rest));
      table.display_floor = *v;
      have_floor = true;
    } else if (key == "provenance") {
      if (!table.provenance.empty()) table.provenance.push_back('\n');
      table.provenance += std::string(rest);
    } else if (key == "band") {
      Band b;
      const auto level_text = next_word(rest);
      const auto level = detail::parse_int(level_text);
      if (!level) throw fail(fmt::format("band level \"{}\" is not an integer", level_text));
      b.level = *level;
      b.low = number(next_word(rest), "band low");
      b.high = number(next_word(rest), "band high");
      b.color = std::string(next_word(rest));
      b.tag = std::string(next_word(rest));
      b.label = std::string(rest);
      if (b.tag.empty() || b.label.empty()) throw fail("band needs level, low, high, color, tag and label");
      table.bands.push_back(std::move(b));
    } else {
      throw fail(fmt::format("unknown directive \"{}\"", key));
    }
  }

  auto missing = [&](const char* what) {
    return InputError(fmt::format("{}: missing \"{}\" directive", origin, what));
  };
  if (!have_format) throw missing("format");
  if (!have_kind) throw missing("kind");
  if (table.scale_name.empty()) throw missing("scale_name");
  if (table.plain_name.empty()) throw missing("plain_name");
  if (table.glyph_id.empty()) throw missing("glyph");
  if (table.unit.empty()) throw missing("unit");
  if (!have_domain) throw missing("domain");
  if (!have_closure) throw missing("closure");
  if (!have_severity) throw missing("severity");
  if (!have_floor) throw missing("display_floor");
  if (table.provenance.empty()) throw missing("provenance");
  if (table.bands.empty()) throw missing("band");
  return table;
}

std::vector<std::string> integrity_problems(const ScaleTable& t) {
  std::vector<std::string> problems;
  if (!(t.domain_low < t.domain_high)) problems.push_back("domain low must be below domain high");

  const auto req = required_domain(t.kind);
  if (t.domain_low > req.low || t.domain_high < req.high) {
    problems.push_back(fmt::format("domain [{}, {}] does not cover the required [{}, {}]", t.domain_low, t.domain_high,
                                   req.low, req.high));
  }

  for (std::size_t i = 0; i < t.bands.size(); ++i) {
    const auto& b = t.bands[i];
    if (b.level != static_cast<int>(i)) {
      problems.push_back(fmt::format("band {} has level {}; levels must run 0, 1, 2, ... in order", i, b.level));
    }
    if (!(b.low < b.high)) problems.push_back(fmt::format("level {}: low {} is not below high {}", b.level, b.low, b.high));
    if (!is_hex_color(b.color)) problems.push_back(fmt::format("level {}: colour \"{}\" is not #RRGGBB", b.level, b.color));
    if (i + 1 < t.bands.size()) {
      const auto& n = t.bands[i + 1];
      const bool contiguous = t.severity == SeverityDirection::increasing ? b.high == n.low : b.low == n.high;
      if (!contiguous) {
        problems.push_back(fmt::format("levels {} and {} are not contiguous in the {} direction", b.level, n.level,
                                       t.severity == SeverityDirection::increasing ? "increasing" : "decreasing"));
      }
    }
  }

  if (!t.bands.empty()) {
    double min_low = t.bands.front().low;
    double max_high = t.bands.front().high;
    for (const auto& b : t.bands) {
      min_low = std::min(min_low, b.low);
      max_high = std::max(max_high, b.high);
    }
    if (min_low != t.domain_low || max_high != t.domain_high) {
      problems.push_back(fmt::format("bands span [{}, {}] but the domain is [{}, {}]", min_low, max_high, t.domain_low,
                                     t.domain_high));
    }
  }

  if (t.display_floor < 0 || t.display_floor > t.max_level()) {
    problems.push_back(fmt::format("display_floor {} outside levels 0-{}", t.display_floor, t.max_level()));
  }
  return problems;
}

ScaleTable load_scale_table(const std::filesystem::path& path) {
  auto table = parse_scale_table(read_file(path), path.string());
  if (auto problems = integrity_problems(table); !problems.empty()) {
    throw InputError(fmt::format("{}: integrity check failed: {}", path.string(), problems.front()));
  }
  return table;
}

const ScaleTable& HazardTables::for_kind(HazardKind kind) const {
  switch (kind) {
    case HazardKind::wind:
      return wind;
    case HazardKind::wind_chill:
      return wind_chill;
    case HazardKind::freezing_temp:
      return freezing;
    case HazardKind::winter_precip:
      return winter_precip;
  }
  return wind;
}

std::string_view table_file_name(HazardKind kind) {
  switch (kind) {
    case HazardKind::wind:
      return "beaufort.scale";
    case HazardKind::wind_chill:
      return "wind_chill.scale";
    case HazardKind::freezing_temp:
      return "freezing.scale";
    case HazardKind::winter_precip:
      return "winter_precip.scale";
  }
  return "";
}

HazardTables load_hazard_tables(const std::filesystem::path& dir) {
  auto load = [&](HazardKind kind) {
    auto table = load_scale_table(dir / table_file_name(kind));
    if (table.kind != kind) {
      throw InputError(fmt::format("{}: declares kind {} but {} was expected", (dir / table_file_name(kind)).string(),
                                   to_string(table.kind), to_string(kind)));
    }
    return table;
  };
  // Named locals: GCC 11 skips destroying already-built members when a later
  // initializer of a braced aggregate throws.
  auto wind = load(HazardKind::wind);
  auto wind_chill = load(HazardKind::wind_chill);
  auto freezing = load(HazardKind::freezing_temp);
  auto winter_precip = load(HazardKind::winter_precip);
  return HazardTables{std::move(wind), std::move(wind_chill), std::move(freezing), std::move(winter_precip)};
}

}  // namespace hazcast

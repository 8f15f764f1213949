#include "hazcast/text_parser.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "text_util.hpp"

namespace hazcast {

namespace {

using detail::ascii_lower;
using detail::is_alpha;
using detail::is_digit;
using detail::is_space;

constexpr std::string_view kDegree = "\xC2\xB0";      // °
constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";  // −

constexpr std::array<std::string_view, 7> kWeekdays{"monday", "tuesday", "wednesday", "thursday",
                                                    "friday", "saturday", "sunday"};

enum class FieldKind { temperature, wind, wind_chill };

struct Phrase {
  std::string text;  // lower case
  FieldKind field{FieldKind::temperature};
};

std::vector<Phrase> sorted_by_length(std::vector<Phrase> phrases) {
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const Phrase& a, const Phrase& b) { return a.text.size() > b.text.size(); });
  return phrases;
}

const std::vector<Phrase>& header_phrases() {
  static const std::vector<Phrase> phrases = [] {
    std::vector<Phrase> p;
    for (auto s : {"today", "tonight", "this morning", "this afternoon", "this evening", "overnight", "tomorrow",
                   "tomorrow night"}) {
      p.push_back({s});
    }
    for (auto day : kWeekdays) {
      p.push_back({std::string(day)});
      p.push_back({std::string(day) + " night"});
    }
    return sorted_by_length(std::move(p));
  }();
  return phrases;
}

const std::vector<Phrase>& field_phrases() {
  static const std::vector<Phrase> phrases = sorted_by_length({
      {"temperatures", FieldKind::temperature}, {"temperature", FieldKind::temperature},
      {"temps", FieldKind::temperature},        {"temp", FieldKind::temperature},
      {"highs", FieldKind::temperature},        {"high", FieldKind::temperature},
      {"lows", FieldKind::temperature},         {"low", FieldKind::temperature},
      {"winds", FieldKind::wind},               {"wind", FieldKind::wind},
      {"wind chills", FieldKind::wind_chill},   {"wind chill", FieldKind::wind_chill},
      {"windchills", FieldKind::wind_chill},    {"windchill", FieldKind::wind_chill},
  });
  return phrases;
}

struct LabelMatch {
  const Phrase* phrase{};
  Span label;           // the phrase as written
  std::size_t value{};  // first byte after the colon
};

/// Matches "<phrase> :" at the start of `line` (leading blanks allowed).
std::optional<LabelMatch> match_label(std::string_view text, Span line, const std::vector<Phrase>& phrases) {
  std::size_t start = line.begin;
  while (start < line.end && is_space(text[start])) ++start;
  const std::string_view rest = text.substr(start, line.end - start);
  for (const auto& phrase : phrases) {
    if (!detail::istarts_with(rest, phrase.text)) continue;
    std::size_t i = phrase.text.size();
    if (i < rest.size() && is_alpha(rest[i])) continue;
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
    if (i < rest.size() && rest[i] == ':') {
      return LabelMatch{&phrase, {start, start + phrase.text.size()}, start + i + 1};
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> invalid_utf8_offset(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      len = 4;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return i;
    }
    i += len;
  }
  return std::nullopt;
}

enum class RawUnit { fahrenheit, celsius, mph, kph, knots };

struct Token {
  enum class Kind { number, unit, word, separator } kind{Kind::word};
  double value{};
  RawUnit unit{RawUnit::fahrenheit};
  std::string word;  // lower case
  Span span;
};

std::optional<RawUnit> unit_word(std::string_view w) {
  if (w == "f" || w == "degrees" || w == "degree") return RawUnit::fahrenheit;
  if (w == "c") return RawUnit::celsius;
  if (w == "mph") return RawUnit::mph;
  if (w == "kph" || w == "km/h" || w == "kmh" || w == "kmph") return RawUnit::kph;
  if (w == "knots" || w == "kt" || w == "kts") return RawUnit::knots;
  return std::nullopt;
}

bool minus_at(std::string_view s, std::size_t i, std::size_t& len) {
  if (s[i] == '-') {
    len = 1;
    return true;
  }
  if (s.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
    len = kUnicodeMinus.size();
    return true;
  }
  return false;
}

bool number_starts(std::string_view s, std::size_t i) {
  return i < s.size() && (is_digit(s[i]) || (s[i] == '.' && i + 1 < s.size() && is_digit(s[i + 1])));
}

/// Splits a field value into numbers, units and words. `base` is the offset
/// of `s` within the whole input.
std::vector<Token> tokenize_value(std::string_view s, std::size_t base) {
  std::vector<Token> tokens;
  auto last_is_number = [&] {
    if (tokens.empty()) return false;
    const auto& t = tokens.back();
    if (t.kind == Token::Kind::number) return true;
    return t.kind == Token::Kind::unit && tokens.size() >= 2 && tokens[tokens.size() - 2].kind == Token::Kind::number;
  };
  auto read_number = [&](std::size_t i, bool negative, std::size_t sign_begin) {
    std::size_t j = i;
    while (j < s.size() && is_digit(s[j])) ++j;
    if (j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1])) {
      ++j;
      while (j < s.size() && is_digit(s[j])) ++j;
    }
    const double magnitude = detail::parse_double(s.substr(i, j - i)).value_or(0.0);
    Token t;
    t.kind = Token::Kind::number;
    t.value = negative ? -magnitude : magnitude;
    t.span = {base + sign_begin, base + j};
    tokens.push_back(std::move(t));
    return j;
  };

  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    std::size_t minus_len = 0;
    if (is_space(c)) {
      ++i;
    } else if (c == '(') {
      const auto close = s.find(')', i);
      i = close == std::string_view::npos ? s.size() : close + 1;
    } else if (minus_at(s, i, minus_len)) {
      std::size_t j = i + minus_len;
      while (j < s.size() && is_space(s[j])) ++j;
      bool next_is_number = number_starts(s, j);
      std::size_t inner_minus = 0;
      if (!next_is_number && j < s.size() && minus_at(s, j, inner_minus)) next_is_number = number_starts(s, j + inner_minus);
      if (next_is_number && last_is_number()) {
        Token t;
        t.kind = Token::Kind::separator;
        t.span = {base + i, base + i + minus_len};
        tokens.push_back(std::move(t));
        i += minus_len;
      } else if (number_starts(s, i + minus_len)) {
        i = read_number(i + minus_len, true, i);
      } else {
        i += minus_len;
      }
    } else if (number_starts(s, i)) {
      i = read_number(i, false, i);
    } else if (s.substr(i, kDegree.size()) == kDegree) {
      std::size_t j = i + kDegree.size();
      RawUnit unit = RawUnit::fahrenheit;
      if (j < s.size() && (s[j] == 'F' || s[j] == 'f' || s[j] == 'C' || s[j] == 'c') &&
          (j + 1 >= s.size() || !is_alpha(s[j + 1]))) {
        unit = ascii_lower(s[j]) == 'c' ? RawUnit::celsius : RawUnit::fahrenheit;
        ++j;
      }
      Token t;
      t.kind = Token::Kind::unit;
      t.unit = unit;
      t.span = {base + i, base + j};
      tokens.push_back(std::move(t));
      i = j;
    } else if (is_alpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (is_alpha(s[j]) || (s[j] == '/' && j + 1 < s.size() && is_alpha(s[j + 1])))) ++j;
      Token t;
      t.word = detail::to_lower(s.substr(i, j - i));
      t.span = {base + i, base + j};
      const bool after_number = !tokens.empty() && tokens.back().kind == Token::Kind::number;
      if (auto u = unit_word(t.word); u && (after_number || (t.word.size() > 1 && t.word != "degrees"))) {
        t.kind = Token::Kind::unit;
        t.unit = *u;
      }
      tokens.push_back(std::move(t));
      i = j;
    } else {
      ++i;
    }
  }
  return tokens;
}

struct Measurement {
  double value{};
  RawUnit unit{};
  std::size_t token_index{};
  Span span;
};

/// Binds each number to the next unit token after it, or `fallback`.
std::vector<Measurement> measurements(const std::vector<Token>& tokens, RawUnit fallback) {
  std::vector<Measurement> out;
  std::size_t pending_from = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == Token::Kind::number) {
      out.push_back({tokens[i].value, fallback, i, tokens[i].span});
    } else if (tokens[i].kind == Token::Kind::unit) {
      for (std::size_t k = pending_from; k < out.size(); ++k) out[k].unit = tokens[i].unit;
      pending_from = out.size();
    }
  }
  return out;
}

bool is_temperature_unit(RawUnit u) { return u == RawUnit::fahrenheit || u == RawUnit::celsius; }

double to_fahrenheit(double v, RawUnit u) { return u == RawUnit::celsius ? v * 9.0 / 5.0 + 32.0 : v; }

double to_mph(double v, RawUnit u) {
  switch (u) {
    case RawUnit::kph:
      return v / 1.609344;
    case RawUnit::knots:
      return v * 1.150779448;
    default:
      return v;
  }
}

std::string_view unit_name(RawUnit u) {
  switch (u) {
    case RawUnit::fahrenheit:
      return "F";
    case RawUnit::celsius:
      return "C";
    case RawUnit::mph:
      return "mph";
    case RawUnit::kph:
      return "km/h";
    case RawUnit::knots:
      return "knots";
  }
  return "?";
}

std::optional<Compass> direction_word(std::string_view w) {
  static constexpr std::array<std::pair<std::string_view, Compass>, 8> kNames{{
      {"north", Compass::N},
      {"northeast", Compass::NE},
      {"east", Compass::E},
      {"southeast", Compass::SE},
      {"south", Compass::S},
      {"southwest", Compass::SW},
      {"west", Compass::W},
      {"northwest", Compass::NW},
  }};
  for (const auto& [name, dir] : kNames) {
    if (w == name) return dir;
  }
  return compass_from_string(w);
}

/// Accumulates a min/max envelope across one or more labelled lines.
struct Envelope {
  std::optional<double> low;
  std::optional<double> high;

  void add(double v) {
    low = std::min(low.value_or(v), v);
    high = std::max(high.value_or(v), v);
  }
  [[nodiscard]] bool empty() const { return !low.has_value(); }
};

struct PeriodDraft {
  std::string label;
  Span header;
  Envelope temperature;
  Envelope sustained;
  Envelope wind_chill;
  std::optional<double> gust;
  std::optional<Compass> direction;
  bool saw_temperature_field = false;
  bool saw_wind_field = false;
  bool calm = false;
  std::vector<PrecipEvent> precip;
  std::vector<std::string> notes;
  std::vector<std::pair<std::size_t, std::size_t>> narrative;  // [begin, end) pieces
};

struct Word {
  std::string text;  // lower case
  std::size_t begin{};
};

std::vector<Word> words_of(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_alpha(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_alpha(s[j])) ++j;
    out.push_back({detail::to_lower(s.substr(i, j - i)), i});
    i = j;
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

class RawForecastParser {
 public:
  explicit RawForecastParser(std::string_view text) : text_(text), recognized_(text.size(), false) {}

  ParseResult run(std::string_view source_id) {
    if (detail::trim(text_).empty()) {
      error({0, text_.size()}, "empty forecast text");
      return finish(std::nullopt);
    }
    if (auto bad = invalid_utf8_offset(text_)) {
      error({*bad, *bad + 1}, "input is not valid UTF-8");
      return finish(std::nullopt);
    }

    const auto lines = split_lines();
    std::vector<std::pair<std::size_t, LabelMatch>> headers;  // (line index, match)
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (auto m = match_label(text_, lines[i], header_phrases())) headers.emplace_back(i, *m);
    }

    ForecastDocument doc;
    doc.source_id = std::string(source_id);
    const std::size_t summary_end_line = headers.empty() ? lines.size() : headers.front().first;
    doc.summary_text = read_preamble(lines, summary_end_line, doc);

    if (headers.size() != kPeriodCount) {
      const Span where = headers.empty() ? Span{0, text_.size()} : headers.back().second.label;
      error(where, fmt::format("expected {} periods, found {}", kPeriodCount, headers.size()));
      return finish(std::nullopt);
    }
    if (doc.summary_text.empty()) error({0, headers.front().second.label.begin}, "missing forecast summary before the first period");

    for (std::size_t h = 0; h < headers.size(); ++h) {
      const std::size_t first = headers[h].first;
      const std::size_t last = h + 1 < headers.size() ? headers[h + 1].first : lines.size();
      auto period = read_period(lines, first, last, headers[h].second);
      if (period) doc.periods.push_back(std::move(*period));
    }

    if (has_errors()) return finish(std::nullopt);
    for (const auto& v : validate(doc)) error(span_for_violation(v, headers), fmt::format("{}: {}", v.field, v.rule));
    if (has_errors()) return finish(std::nullopt);
    return finish(std::move(doc));
  }

 private:
  std::vector<Span> split_lines() const {
    std::vector<Span> lines;
    std::size_t begin = 0;
    while (begin <= text_.size()) {
      auto nl = text_.find('\n', begin);
      if (nl == std::string_view::npos) nl = text_.size();
      std::size_t end = nl;
      if (end > begin && text_[end - 1] == '\r') --end;
      lines.push_back({begin, end});
      begin = nl + 1;
    }
    return lines;
  }

  std::string read_preamble(const std::vector<Span>& lines, std::size_t end_line, ForecastDocument& doc) {
    bool saw_issued = false;
    std::string summary;
    for (std::size_t i = 0; i < end_line; ++i) {
      const Span line = lines[i];
      std::string_view content = detail::trim(text_.substr(line.begin, line.end - line.begin));
      if (content.empty()) continue;
      const std::size_t content_begin = static_cast<std::size_t>(content.data() - text_.data());

      if (detail::istarts_with(content, "higher summits forecast") && summary.empty()) {
        mark({content_begin, content_begin + content.size()});
        continue;
      }
      if (detail::istarts_with(content, "issued:")) {
        const std::string_view value = detail::trim(content.substr(7));
        const Span value_span{content_begin + 7, content_begin + content.size()};
        if (auto ts = parse_timestamp(value)) {
          doc.issued_at = *ts;
          saw_issued = true;
          mark({content_begin, content_begin + content.size()});
        } else {
          error(value_span, fmt::format("unrecognised issue time \"{}\" (expected YYYY-MM-DD HH:MM with optional offset)", value));
        }
        continue;
      }
      std::size_t skip = 0;
      if (detail::istarts_with(content, "summary:")) skip = 8;
      mark({content_begin, content_begin + content.size()});
      const std::string piece = collapse_whitespace(content.substr(skip));
      if (piece.empty()) continue;
      if (!summary.empty()) summary.push_back(' ');
      summary += piece;
    }
    if (!saw_issued && !has_errors()) {
      warning({0, 0}, "no \"Issued:\" line; issue time set to 1970-01-01T00:00:00Z");
    }
    return summary;
  }

  std::optional<ForecastPeriod> read_period(const std::vector<Span>& lines, std::size_t first, std::size_t last,
                                            const LabelMatch& header) {
    PeriodDraft draft;
    draft.header = header.label;
    draft.label = collapse_whitespace(text_.substr(header.label.begin, header.label.end - header.label.begin));
    mark({header.label.begin, header.value});

    draft.narrative.emplace_back(header.value, lines[first].end);
    for (std::size_t i = first + 1; i < last; ++i) {
      if (auto field = match_label(text_, lines[i], field_phrases())) {
        mark({field->label.begin, field->value});
        read_field(draft, *field, lines[i]);
      } else {
        draft.narrative.emplace_back(lines[i].begin, lines[i].end);
      }
    }
    read_narrative(draft);

    const Span where = draft.header;
    if (!draft.saw_temperature_field && !draft.saw_wind_field) {
      error(where, fmt::format("period \"{}\" has neither temperatures nor winds", draft.label));
      return std::nullopt;
    }
    if (!draft.saw_temperature_field) {
      error(where, fmt::format("period \"{}\" has no temperatures", draft.label));
      return std::nullopt;
    }
    if (!draft.saw_wind_field) {
      error(where, fmt::format("period \"{}\" has no winds", draft.label));
      return std::nullopt;
    }
    if (draft.temperature.empty() || (draft.sustained.empty() && !draft.calm)) return std::nullopt;

    ForecastPeriod p;
    p.label = draft.label;
    p.temperature = {*draft.temperature.low, *draft.temperature.high, Unit::fahrenheit};
    p.wind.direction = draft.direction;
    p.wind.sustained = draft.sustained.empty() ? ValueRange{0.0, 0.0, Unit::mph}
                                               : ValueRange{*draft.sustained.low, *draft.sustained.high, Unit::mph};
    if (draft.gust) {
      if (*draft.gust >= p.wind.sustained.high) {
        p.wind.gust_high = draft.gust;
      } else {
        warning(where, fmt::format("gusts of {} mph are below the sustained {} mph in \"{}\"; gusts dropped",
                                   detail::format_number(*draft.gust), detail::format_number(p.wind.sustained.high),
                                   draft.label));
      }
    }
    if (!draft.wind_chill.empty()) p.wind_chill = ValueRange{*draft.wind_chill.low, *draft.wind_chill.high, Unit::fahrenheit};
    p.precip_events = std::move(draft.precip);
    p.extra_hazard_notes = std::move(draft.notes);
    return p;
  }

  void read_field(PeriodDraft& draft, const LabelMatch& field, Span line) {
    const std::string_view value = text_.substr(field.value, line.end - field.value);
    const Span value_span{field.value, line.end};
    const auto tokens = tokenize_value(value, field.value);
    const FieldKind kind = field.phrase->field;
    const RawUnit fallback = kind == FieldKind::wind ? RawUnit::mph : RawUnit::fahrenheit;
    const auto numbers = measurements(tokens, fallback);
    const std::string label(text_.substr(field.label.begin, field.label.end - field.label.begin));

    for (const auto& m : numbers) {
      const bool ok = kind == FieldKind::wind ? !is_temperature_unit(m.unit) : is_temperature_unit(m.unit);
      if (!ok) {
        error(m.span, fmt::format("{} cannot be measured in {}", label, unit_name(m.unit)));
        return;
      }
    }

    switch (kind) {
      case FieldKind::temperature:
      case FieldKind::wind_chill: {
        if (kind == FieldKind::temperature) draft.saw_temperature_field = true;
        if (numbers.empty()) {
          error(value_span, fmt::format("{} has no values", label));
          return;
        }
        auto& env = kind == FieldKind::temperature ? draft.temperature : draft.wind_chill;
        for (const auto& m : numbers) env.add(to_fahrenheit(m.value, m.unit));
        break;
      }
      case FieldKind::wind: {
        draft.saw_wind_field = true;
        std::optional<std::size_t> gust_at;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          const auto& t = tokens[i];
          if (t.kind != Token::Kind::word) continue;
          if (!gust_at && detail::istarts_with(t.word, "gust")) gust_at = i;
          if (!draft.direction) {
            if (auto d = direction_word(t.word)) draft.direction = d;
          }
          if (t.word == "calm") draft.calm = true;
        }
        bool any_sustained = false;
        std::optional<double> gust;
        for (const auto& m : numbers) {
          const double mph = to_mph(m.value, m.unit);
          if (mph < 0.0) {
            error(m.span, "wind speed cannot be negative");
            return;
          }
          if (gust_at && m.token_index > *gust_at) {
            gust = std::max(gust.value_or(mph), mph);
          } else {
            draft.sustained.add(mph);
            any_sustained = true;
          }
        }
        if (gust_at && !gust) {
          warning(tokens[*gust_at].span, "gusts mentioned without a speed; gust left unset");
        }
        if (gust) draft.gust = std::max(draft.gust.value_or(*gust), *gust);
        if (!any_sustained && !draft.calm) {
          error(value_span, fmt::format("{} has no sustained speed", label));
          return;
        }
        break;
      }
    }
    mark(value_span);
  }

  void read_narrative(PeriodDraft& draft) {
    // Join the narrative pieces with spaces, remembering where each joined
    // byte came from so sentence spans can be mapped back.
    std::string joined;
    std::vector<std::size_t> origin;
    for (const auto& [b, e] : draft.narrative) {
      if (!joined.empty()) {
        joined.push_back(' ');
        origin.push_back(b);
      }
      for (std::size_t k = b; k < e; ++k) {
        joined.push_back(text_[k]);
        origin.push_back(k);
      }
    }

    std::size_t start = 0;
    for (std::size_t i = 0; i <= joined.size(); ++i) {
      const bool at_end = i == joined.size();
      const bool boundary = !at_end && (joined[i] == '.' || joined[i] == '!' || joined[i] == '?' || joined[i] == ';') &&
                            (i + 1 == joined.size() || is_space(joined[i + 1]));
      if (!at_end && !boundary) continue;
      const std::size_t stop = at_end ? i : i + 1;
      std::string_view sentence = std::string_view(joined).substr(start, stop - start);
      const std::string_view trimmed = detail::trim(sentence);
      if (!trimmed.empty()) {
        const std::size_t tb = static_cast<std::size_t>(trimmed.data() - joined.data());
        const Span span{origin[tb], origin[tb + trimmed.size() - 1] + 1};
        classify_sentence(draft, trimmed, span);
      }
      start = stop;
    }
  }

  void classify_sentence(PeriodDraft& draft, std::string_view sentence, Span span) {
    const auto words = words_of(sentence);
    bool chance = false;
    bool likely = false;
    bool hazard = false;
    for (const auto& w : words) {
      if (w.text == "chance" || w.text == "possible" || w.text == "possibly" || w.text == "slight") chance = true;
      if (w.text == "likely") likely = true;
      if (detail::istarts_with(w.text, "flood") || detail::istarts_with(w.text, "fog") ||
          detail::istarts_with(w.text, "visib")) {
        hazard = true;
      }
    }
    const Certainty certainty = chance ? Certainty::chance : likely ? Certainty::likely : Certainty::mentioned;

    std::vector<PrecipKind> kinds;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::string& w = words[i].text;
      const std::string_view next = i + 1 < words.size() ? std::string_view(words[i + 1].text) : std::string_view{};
      std::optional<PrecipKind> kind;
      std::size_t width = 1;
      if (w == "freezing" && (next == "rain" || next == "drizzle")) {
        kind = PrecipKind::freezing_rain;
        width = 2;
      } else if (w == "ice" && next == "pellets") {
        kind = PrecipKind::sleet;
        width = 2;
      } else if ((w == "wintry" && next == "mix") || (w == "mixed" && next == "precipitation")) {
        kind = PrecipKind::mixed;
        width = 2;
      } else if (detail::istarts_with(w, "snow") || w == "flurries") {
        kind = PrecipKind::snow;
      } else if (w == "sleet") {
        kind = PrecipKind::sleet;
      } else if (w == "rain" || w == "rains" || w == "rainfall" || w == "drizzle") {
        kind = PrecipKind::rain;
      }
      if (kind && !(i > 0 && words[i - 1].text == "no")) kinds.push_back(*kind);
      i += width - 1;
    }

    if (kinds.empty() && !hazard) return;  // unrecognised; counts against coverage
    mark(span);
    for (auto k : kinds) {
      const bool seen = std::any_of(draft.precip.begin(), draft.precip.end(), [&](const PrecipEvent& e) { return e.kind == k; });
      if (!seen) draft.precip.push_back({k, certainty});
    }
    if (hazard) draft.notes.push_back(collapse_whitespace(sentence));
  }

  Span span_for_violation(const Violation& v, const std::vector<std::pair<std::size_t, LabelMatch>>& headers) const {
    // "periods[2]..." points at that header; anything else at the whole input.
    if (v.field.rfind("periods[", 0) == 0) {
      const auto idx = detail::parse_int(std::string_view(v.field).substr(8, v.field.find(']') - 8));
      if (idx && *idx >= 0 && static_cast<std::size_t>(*idx) < headers.size()) return headers[*idx].second.label;
    }
    return {0, text_.size()};
  }

  void mark(Span s) {
    for (std::size_t i = s.begin; i < s.end && i < recognized_.size(); ++i) recognized_[i] = true;
  }

  void error(Span s, std::string msg) { result_.diagnostics.push_back({Severity::error, clamp(s), std::move(msg)}); }
  void warning(Span s, std::string msg) { result_.diagnostics.push_back({Severity::warning, clamp(s), std::move(msg)}); }

  Span clamp(Span s) const {
    s.end = std::min(s.end, text_.size());
    s.begin = std::min(s.begin, s.end);
    return s;
  }

  bool has_errors() const { return result_.has_errors(); }

  ParseResult finish(std::optional<ForecastDocument> doc) {
    std::size_t total = 0;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (is_space(text_[i])) continue;
      ++total;
      if (recognized_[i]) ++seen;
    }
    result_.coverage = total == 0 ? 0.0 : static_cast<double>(seen) / static_cast<double>(total);
    if (!has_errors()) result_.document = std::move(doc);
    return std::move(result_);
  }

  std::string_view text_;
  std::vector<bool> recognized_;
  ParseResult result_;
};

}  // namespace

ParseResult parse_forecast(std::string_view text, std::string_view source_id) {
  return RawForecastParser(text).run(source_id);
}

}  // namespace hazcast

#include "hazcast/canonical.hpp"

#include <initializer_list>
#include <set>

#include <fmt/format.h>
#include "json.hpp"

#include "hazcast/errors.hpp"
#include "text_util.hpp"

namespace hazcast {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

ordered_json range_to_json(const ValueRange& r) {
  return ordered_json{{"low", r.low}, {"high", r.high}, {"unit", to_string(r.unit)}};
}

ordered_json period_to_json(const ForecastPeriod& p) {
  ordered_json out;
  out["label"] = p.label;
  out["temperature"] = range_to_json(p.temperature);
  ordered_json wind;
  if (p.wind.direction) wind["direction"] = to_string(*p.wind.direction);
  wind["sustained"] = range_to_json(p.wind.sustained);
  if (p.wind.gust_high) wind["gust_high"] = *p.wind.gust_high;
  out["wind"] = std::move(wind);
  if (p.wind_chill) out["wind_chill"] = range_to_json(*p.wind_chill);
  ordered_json precip = ordered_json::array();
  for (const auto& e : p.precip_events) {
    precip.push_back(ordered_json{{"kind", to_string(e.kind)}, {"certainty", to_string(e.certainty)}});
  }
  out["precip_events"] = std::move(precip);
  out["extra_hazard_notes"] = p.extra_hazard_notes;
  return out;
}

/// Thrown while walking the parsed tree; `key` locates the span.
struct SchemaError {
  std::string message;
  std::string key;
};

struct Reader {
  static void require_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> required,
                           std::initializer_list<std::string_view> optional = {}) {
    if (!obj.is_object()) throw SchemaError{fmt::format("{}: expected an object", path), {}};
    std::set<std::string_view> known(required);
    known.insert(optional.begin(), optional.end());
    for (const auto& [key, value] : obj.items()) {
      if (!known.count(key)) throw SchemaError{fmt::format("{}: unknown key \"{}\"", path, key), key};
    }
    for (auto key : required) {
      if (!obj.contains(key)) {
        throw SchemaError{fmt::format("{}: missing key \"{}\"", path, key), {}};
      }
    }
  }

  static std::string string_at(const json& obj, const std::string& path, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw SchemaError{fmt::format("{}.{}: expected a string", path, key), key};
    return v.get<std::string>();
  }

  static double number_at(const json& obj, const std::string& path, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SchemaError{fmt::format("{}.{}: expected a number", path, key), key};
    return v.get<double>();
  }

  static ValueRange range_at(const json& obj, const std::string& path, const char* key) {
    const std::string sub = path + "." + key;
    const auto& r = obj.at(key);
    require_keys(r, sub, {"low", "high", "unit"});
    const std::string unit_text = string_at(r, sub, "unit");
    const auto unit = unit_from_string(unit_text);
    if (!unit) throw SchemaError{fmt::format("{}.unit: unknown unit \"{}\"", sub, unit_text), "unit"};
    return ValueRange{number_at(r, sub, "low"), number_at(r, sub, "high"), *unit};
  }

  static ForecastPeriod period(const json& obj, const std::string& path) {
    require_keys(obj, path, {"label", "temperature", "wind", "precip_events", "extra_hazard_notes"}, {"wind_chill"});
    ForecastPeriod p;
    p.label = string_at(obj, path, "label");
    p.temperature = range_at(obj, path, "temperature");

    const std::string wpath = path + ".wind";
    const auto& w = obj.at("wind");
    require_keys(w, wpath, {"sustained"}, {"direction", "gust_high"});
    if (w.contains("direction")) {
      const std::string dir = string_at(w, wpath, "direction");
      p.wind.direction = compass_from_string(dir);
      if (!p.wind.direction || dir != to_string(*p.wind.direction)) {
        throw SchemaError{fmt::format("{}.direction: unknown compass point \"{}\"", wpath, dir), "direction"};
      }
    }
    p.wind.sustained = range_at(w, wpath, "sustained");
    if (w.contains("gust_high")) p.wind.gust_high = number_at(w, wpath, "gust_high");

    if (obj.contains("wind_chill")) p.wind_chill = range_at(obj, path, "wind_chill");

    const auto& precip = obj.at("precip_events");
    if (!precip.is_array()) throw SchemaError{path + ".precip_events: expected an array", "precip_events"};
    for (std::size_t i = 0; i < precip.size(); ++i) {
      const std::string epath = fmt::format("{}.precip_events[{}]", path, i);
      require_keys(precip[i], epath, {"kind", "certainty"});
      const std::string kind = string_at(precip[i], epath, "kind");
      const std::string certainty = string_at(precip[i], epath, "certainty");
      const auto k = precip_kind_from_string(kind);
      if (!k) throw SchemaError{fmt::format("{}.kind: unknown precipitation kind \"{}\"", epath, kind), "kind"};
      const auto c = certainty_from_string(certainty);
      if (!c) throw SchemaError{fmt::format("{}.certainty: unknown certainty \"{}\"", epath, certainty), "certainty"};
      p.precip_events.push_back({*k, *c});
    }

    const auto& notes = obj.at("extra_hazard_notes");
    if (!notes.is_array()) throw SchemaError{path + ".extra_hazard_notes: expected an array", "extra_hazard_notes"};
    for (const auto& n : notes) {
      if (!n.is_string()) throw SchemaError{path + ".extra_hazard_notes: expected strings", "extra_hazard_notes"};
      p.extra_hazard_notes.push_back(n.get<std::string>());
    }
    return p;
  }
};

Span locate_key(std::string_view text, const std::string& key) {
  if (!key.empty()) {
    const std::string quoted = "\"" + key + "\"";
    if (const auto pos = text.find(quoted); pos != std::string_view::npos) return {pos, pos + quoted.size()};
  }
  return {0, text.size()};
}

ParseResult failure(Span span, std::string message) {
  ParseResult result;
  result.diagnostics.push_back({Severity::error, span, std::move(message)});
  return result;
}

}  // namespace

std::string emit_canonical(const ForecastDocument& doc) {
  require_valid(doc);
  ordered_json out;
  out["schema"] = kCanonicalSchema;
  out["schema_version"] = kCanonicalSchemaVersion;
  out["source_id"] = doc.source_id;
  out["issued_at"] = format_timestamp(doc.issued_at);
  out["summary_text"] = doc.summary_text;
  ordered_json periods = ordered_json::array();
  for (const auto& p : doc.periods) periods.push_back(period_to_json(p));
  out["periods"] = std::move(periods);
  try {
    return out.dump(2) + "\n";
  } catch (const json::type_error& e) {
    throw InputError(fmt::format("document text is not valid UTF-8: {}", e.what()));
  }
}

ParseResult parse_canonical(std::string_view text) {
  if (detail::trim(text).empty()) return failure({0, text.size()}, "missing schema version");

  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    return failure({at, std::min(at + 1, text.size())}, fmt::format("malformed canonical text: {}", e.what()));
  }

  if (!root.is_object() || !root.contains("schema_version")) {
    return failure({0, text.size()}, "missing schema version");
  }

  ForecastDocument doc;
  try {
    Reader::require_keys(root, "document", {"schema", "schema_version", "source_id", "issued_at", "summary_text", "periods"});
    const auto& version = root.at("schema_version");
    if (!version.is_number_integer() || version.get<long long>() != kCanonicalSchemaVersion) {
      throw SchemaError{fmt::format("unsupported schema version {} (expected {})", version.dump(), kCanonicalSchemaVersion),
                        "schema_version"};
    }
    if (Reader::string_at(root, "document", "schema") != kCanonicalSchema) {
      throw SchemaError{fmt::format("schema must be \"{}\"", kCanonicalSchema), "schema"};
    }
    doc.source_id = Reader::string_at(root, "document", "source_id");
    const std::string issued = Reader::string_at(root, "document", "issued_at");
    const auto ts = parse_timestamp(issued);
    if (!ts || format_timestamp(*ts) != issued) {
      throw SchemaError{fmt::format("issued_at: expected YYYY-MM-DDTHH:MM:SSZ, found \"{}\"", issued), "issued_at"};
    }
    doc.issued_at = *ts;
    doc.summary_text = Reader::string_at(root, "document", "summary_text");
    const auto& periods = root.at("periods");
    if (!periods.is_array()) throw SchemaError{"periods: expected an array", "periods"};
    for (std::size_t i = 0; i < periods.size(); ++i) {
      doc.periods.push_back(Reader::period(periods[i], fmt::format("periods[{}]", i)));
    }
  } catch (const SchemaError& e) {
    return failure(locate_key(text, e.key), e.message);
  }

  ParseResult result;
  for (const auto& v : validate(doc)) {
    const std::string root_key = v.field.substr(0, v.field.find_first_of("[."));
    result.diagnostics.push_back({Severity::error, locate_key(text, root_key), fmt::format("{}: {}", v.field, v.rule)});
  }
  if (result.diagnostics.empty()) {
    result.document = std::move(doc);
    result.coverage = 1.0;
  }
  return result;
}

}  // namespace hazcast

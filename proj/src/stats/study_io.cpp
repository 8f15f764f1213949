#include "hazcast/stats/study_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace hazcast::stats {

namespace {

using Json = nlohmann::ordered_json;

struct Row {
  std::size_t line{};
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

// RFC 4180 style: quoted fields may hold commas, newlines and doubled quotes.
Table read_csv(std::string_view text, std::string_view origin) {
  Table table;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto end_field = [&] {
    fields.push_back(was_quoted ? field : std::string(detail::trim(field)));
    field.clear();
    was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = fields.size() == 1 && fields.front().empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(fields);
      } else {
        table.rows.push_back({row_line, std::move(fields)});
      }
    }
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      if (!detail::trim(field).empty()) throw InputError(fmt::format("{}:{}: stray quote inside a field", origin, line));
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else if (c != '\r') {
      if (was_quoted && !detail::is_space(c)) {
        throw InputError(fmt::format("{}:{}: text after a closing quote", origin, line));
      }
      field.push_back(c);
    }
  }
  if (quoted) throw InputError(fmt::format("{}:{}: unterminated quoted field", origin, line));
  if (!field.empty() || !fields.empty() || was_quoted) end_row();
  return table;
}

class Columns {
 public:
  Columns(const Table& table, std::string_view origin, std::vector<std::string_view> required,
          std::vector<std::string_view> optional)
      : origin_(origin) {
    if (table.header.empty()) throw InputError(fmt::format("{}: missing header row", origin));
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const std::string& name = table.header[i];
      const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                         std::find(optional.begin(), optional.end(), name) != optional.end();
      if (!known) throw InputError(fmt::format("{}:1: unknown column \"{}\"", origin, name));
      if (!index_.emplace(name, i).second) throw InputError(fmt::format("{}:1: duplicate column \"{}\"", origin, name));
    }
    for (auto name : required) {
      if (!index_.count(std::string(name))) throw InputError(fmt::format("{}:1: missing column \"{}\"", origin, name));
    }
    width_ = table.header.size();
  }

  void check_width(const Row& row) const {
    if (row.fields.size() != width_) {
      throw InputError(fmt::format("{}:{}: expected {} fields, found {}", origin_, row.line, width_, row.fields.size()));
    }
  }

  [[nodiscard]] bool has(std::string_view name) const { return index_.count(std::string(name)) > 0; }

  [[nodiscard]] const std::string& text(const Row& row, std::string_view name) const {
    const std::string& v = row.fields[index_.at(std::string(name))];
    if (v.empty()) throw InputError(fmt::format("{}:{}: missing {}", origin_, row.line, name));
    return v;
  }

  [[nodiscard]] double number(const Row& row, std::string_view name) const {
    const auto v = detail::parse_double(text(row, name));
    if (!v || !std::isfinite(*v)) {
      throw InputError(fmt::format("{}:{}: {} \"{}\" is not a number", origin_, row.line, name, text(row, name)));
    }
    return *v;
  }

  [[nodiscard]] bool flag(const Row& row, std::string_view name) const {
    const std::string v = detail::to_lower(text(row, name));
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw InputError(fmt::format("{}:{}: {} \"{}\" is not a boolean", origin_, row.line, name, text(row, name)));
  }

  [[nodiscard]] std::string_view origin() const { return origin_; }

 private:
  std::string_view origin_;
  std::map<std::string, std::size_t> index_;
  std::size_t width_{};
};

struct ParticipantRow {
  LayoutCondition condition{};
  double grips{};
  bool per_day{};
  bool summary_only{};
  Cohort cohort{Cohort::crowd};
  std::size_t responses{};
};

std::string condition_name(LayoutCondition c) { return std::string(to_string(c)); }

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json group_json(const GroupSummary& g) {
  Json j;
  j["condition"] = condition_name(g.condition);
  j["n"] = g.n;
  j["mean"] = number(g.mean);
  j["sd"] = g.sd ? number(*g.sd) : Json(nullptr);
  if (g.ci95) {
    j["ci95"] = Json{{"low", number(g.ci95->low)}, {"high", number(g.ci95->high)}};
  } else {
    j["ci95"] = nullptr;
  }
  return j;
}

Json proportion_json(const Proportion& p) {
  return Json{{"count", p.count}, {"total", p.total}, {"percent", p.percent}};
}

std::string fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.{}f}", v, digits);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string p_text(double p) { return p < 0.0001 ? "< 0.0001" : "= " + fixed(p, 4); }

}  // namespace

std::vector<ResponseRecord> read_study(std::string_view responses_csv, std::string_view participants_csv,
                                       std::string_view responses_origin, std::string_view participants_origin) {
  const Table rtable = read_csv(responses_csv, responses_origin);
  if (rtable.rows.empty()) throw InputError(fmt::format("{}: no records", responses_origin));
  const Table ptable = read_csv(participants_csv, participants_origin);
  const Columns pcols(ptable, participants_origin,
                      {"participant_id", "condition", "grips_score", "mentioned_per_day_info",
                       "mentioned_summary_only_info"},
                      {"cohort"});
  std::map<std::string, ParticipantRow> participants;
  for (const auto& row : ptable.rows) {
    pcols.check_width(row);
    ParticipantRow p;
    const auto& cond = pcols.text(row, "condition");
    const auto c = condition_from_string(cond);
    if (!c) {
      throw InputError(fmt::format("{}:{}: unknown condition \"{}\" (expected baseline, summary-last, icons or per-day-icons)",
                                   participants_origin, row.line, cond));
    }
    p.condition = *c;
    p.grips = pcols.number(row, "grips_score");
    p.per_day = pcols.flag(row, "mentioned_per_day_info");
    p.summary_only = pcols.flag(row, "mentioned_summary_only_info");
    if (pcols.has("cohort")) {
      const std::string cohort = detail::to_lower(pcols.text(row, "cohort"));
      if (cohort == "observer") {
        p.cohort = Cohort::observer;
      } else if (cohort != "crowd") {
        throw InputError(fmt::format("{}:{}: unknown cohort \"{}\" (expected crowd or observer)", participants_origin,
                                     row.line, cohort));
      }
    }
    const auto& id = pcols.text(row, "participant_id");
    if (!participants.emplace(id, p).second) {
      throw InputError(fmt::format("{}:{}: duplicate participant \"{}\"", participants_origin, row.line, id));
    }
  }

  std::vector<std::string_view> rcolumns{"participant_id", "forecast_id"};
  rcolumns.insert(rcolumns.end(), kActivityColumns.begin(), kActivityColumns.end());
  const Columns rcols(rtable, responses_origin, rcolumns, {});

  std::vector<ResponseRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : rtable.rows) {
    rcols.check_width(row);
    ResponseRecord r;
    r.participant_id = rcols.text(row, "participant_id");
    r.forecast_id = rcols.text(row, "forecast_id");
    const auto it = participants.find(r.participant_id);
    if (it == participants.end()) {
      throw InputError(fmt::format("{}:{}: participant \"{}\" is not in the participant file", responses_origin, row.line,
                                   r.participant_id));
    }
    if (!seen.emplace(r.participant_id, r.forecast_id).second) {
      throw InputError(fmt::format("{}:{}: duplicate response for participant \"{}\" and forecast \"{}\"", responses_origin,
                                   row.line, r.participant_id, r.forecast_id));
    }
    for (std::size_t k = 0; k < kActivityCount; ++k) {
      const double v = rcols.number(row, kActivityColumns[k]);
      if (!(v >= 0.0 && v <= 100.0)) {
        throw InputError(fmt::format("{}:{}: {} rating {} is outside [0, 100]", responses_origin, row.line,
                                     kActivityColumns[k], detail::format_number(v)));
      }
      r.activity_ratings[k] = v;
    }
    auto& p = it->second;
    ++p.responses;
    r.condition = p.condition;
    r.grips_score = p.grips;
    r.mentioned_per_day_info = p.per_day;
    r.mentioned_summary_only_info = p.summary_only;
    r.cohort = p.cohort;
    out.push_back(std::move(r));
  }
  for (const auto& [id, p] : participants) {
    if (p.responses == 0) throw InputError(fmt::format("{}: participant \"{}\" has no responses", participants_origin, id));
  }
  return out;
}

std::string report_json(const StatsReport& report) {
  Json j;
  j["schema"] = "hazcast.stats_report";
  j["schema_version"] = 1;
  j["records"] = report.records;
  j["participants"] = report.participants;
  auto groups = Json::array();
  for (const auto& g : report.groups) groups.push_back(group_json(g));
  j["groups"] = std::move(groups);
  j["anova"] = Json{{"f", number(report.anova.f)},
                    {"df_between", report.anova.df_between},
                    {"df_within", report.anova.df_within},
                    {"p", report.anova.p},
                    {"ss_between", report.anova.ss_between},
                    {"ss_within", report.anova.ss_within}};
  auto pairwise = Json::array();
  for (const auto& t : report.pairwise) {
    pairwise.push_back(Json{{"group_a", condition_name(report.groups[t.group_a].condition)},
                            {"group_b", condition_name(report.groups[t.group_b].condition)},
                            {"t", number(t.t)},
                            {"df", t.df},
                            {"p_raw", t.p_raw},
                            {"p_adjusted", t.p_adjusted}});
  }
  j["pairwise_correction"] = Json{{"method", "bonferroni"}, {"comparisons", report.pairwise.size()}};
  j["pairwise"] = std::move(pairwise);
  j["regression"] = Json{{"predictor", "grips_score"},
                         {"response", "mean_aggregate_risk"},
                         {"slope", report.regression.slope},
                         {"intercept", report.regression.intercept},
                         {"r_squared", report.regression.r_squared},
                         {"p", report.regression.p},
                         {"n", report.regression.n}};
  auto coding = Json::array();
  for (const auto& row : report.coding) {
    coding.push_back(Json{{"condition", row.condition ? condition_name(*row.condition) : "overall"},
                          {"mentioned_per_day_info", proportion_json(row.per_day_info)},
                          {"mentioned_summary_only_info", proportion_json(row.summary_only_info)}});
  }
  j["coding"] = std::move(coding);
  if (report.observers) {
    auto obs = group_json(*report.observers);
    obs.erase("condition");
    j["observers"] = std::move(obs);
  }
  return j.dump(2) + "\n";
}

std::string report_text(const StatsReport& report) {
  std::string out;
  out += fmt::format("Study report: {} records from {} participants\n\n", report.records, report.participants);
  out += "Perceived risk by condition (per-participant mean of the 0-600 aggregate)\n";
  out += fmt::format("  {:<15} {:>4} {:>8} {:>8}  {}\n", "condition", "n", "M", "SD", "95% CI");
  for (const auto& g : report.groups) {
    out += fmt::format("  {:<15} {:>4} {:>8} {:>8}  [{}, {}]\n", condition_name(g.condition), g.n, fixed(g.mean, 2),
                       fixed(*g.sd, 2), fixed(g.ci95->low, 2), fixed(g.ci95->high, 2));
  }
  const auto& a = report.anova;
  out += fmt::format("\nOne-way ANOVA: F({}, {}) = {}, p {}\n", a.df_between, a.df_within, fixed(a.f, 3), p_text(a.p));
  out += fmt::format("\nPairwise t-tests (independent samples, Bonferroni over {} comparisons)\n", report.pairwise.size());
  for (const auto& t : report.pairwise) {
    out += fmt::format("  {} vs {}: t({}) = {}, p {}, adjusted p {}\n", condition_name(report.groups[t.group_a].condition),
                       condition_name(report.groups[t.group_b].condition), t.df, fixed(t.t, 3), p_text(t.p_raw),
                       p_text(t.p_adjusted));
  }
  const auto& r = report.regression;
  out += fmt::format("\nRisk propensity: slope = {}, R^2 = {}, p {} (n = {})\n", fixed(r.slope, 3), fixed(r.r_squared, 3),
                     p_text(r.p), r.n);
  out += "\nCoding (participants mentioning per-day / summary-only information)\n";
  for (const auto& row : report.coding) {
    out += fmt::format("  {:<15} per-day {}/{} ({}%), summary-only {}/{} ({}%)\n",
                       row.condition ? condition_name(*row.condition) : "overall", row.per_day_info.count,
                       row.per_day_info.total, fixed(row.per_day_info.percent, 2), row.summary_only_info.count,
                       row.summary_only_info.total, fixed(row.summary_only_info.percent, 2));
  }
  if (report.observers) {
    const auto& o = *report.observers;
    out += fmt::format("\nObservers (reference only, excluded from tests): n = {}, M = {}", o.n, fixed(o.mean, 2));
    if (o.sd) out += fmt::format(", SD = {}", fixed(*o.sd, 2));
    out += "\n";
  }
  return out;
}

std::string plot_json(const StatsReport& report) {
  Json j;
  j["y_axis"] = Json{{"label", "Aggregate perceived risk"}, {"min", 0}, {"max", 600}};
  j["error_bars"] = "95% t confidence interval of the mean";
  auto series = Json::array();
  for (const auto& g : report.groups) {
    series.push_back(Json{{"condition", condition_name(g.condition)},
                          {"n", g.n},
                          {"mean", g.mean},
                          {"ci_low", g.ci95->low},
                          {"ci_high", g.ci95->high}});
  }
  j["series"] = std::move(series);
  if (report.observers) {
    j["reference"] = Json{{"label", "observers"}, {"n", report.observers->n}, {"mean", report.observers->mean}};
  }
  return j.dump(2) + "\n";
}

}  // namespace hazcast::stats

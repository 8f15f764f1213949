#include "hazcast/stats/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "hazcast/stats/distributions.hpp"

namespace hazcast::stats {

namespace {

constexpr double kRatingMax = 100.0;

double sum_squares_about(std::span<const double> values, double centre) {
  double ss = 0.0;
  for (double v : values) ss += (v - centre) * (v - centre);
  return ss;
}

void require_finite(std::span<const double> values, std::string_view what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError(fmt::format("{}: value {} is not finite", what, v));
  }
}

struct Participant {
  std::vector<ResponseRecord> records;
};

GroupSummary summarise(LayoutCondition condition, std::span<const double> values) {
  GroupSummary g;
  g.condition = condition;
  g.n = values.size();
  g.mean = mean(values);
  if (values.size() >= 2) {
    g.sd = sample_sd(values);
    g.ci95 = t_ci95(values);
  }
  return g;
}

}  // namespace

std::string_view to_string(Cohort cohort) { return cohort == Cohort::crowd ? "crowd" : "observer"; }

double aggregate_risk(std::span<const double> ratings) {
  if (ratings.size() != kActivityCount) {
    throw InputError(fmt::format("expected {} activity ratings, got {}", kActivityCount, ratings.size()));
  }
  double total = 0.0;
  for (double r : ratings) {
    if (!(r >= 0.0 && r <= kRatingMax)) throw InputError(fmt::format("rating {} is outside [0, 100]", r));
    total += r;
  }
  return total;
}

double participant_mean_risk(std::span<const ResponseRecord> records) {
  if (records.empty()) throw InputError("participant has no records");
  double total = 0.0;
  for (const auto& r : records) total += aggregate_risk(r.activity_ratings);
  return total / static_cast<double>(records.size());
}

double mean(std::span<const double> values) {
  if (values.empty()) throw InputError("mean of no values");
  require_finite(values, "mean");
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) throw InputError("standard deviation needs at least 2 values");
  return std::sqrt(sum_squares_about(values, mean(values)) / static_cast<double>(values.size() - 1));
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw InputError(fmt::format("ANOVA needs at least 2 groups, got {}", groups.size()));
  std::size_t total_n = 0;
  std::vector<double> means;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() < 2) throw InputError(fmt::format("ANOVA group {} has fewer than 2 values", i + 1));
    means.push_back(mean(groups[i]));
    total_n += groups[i].size();
  }
  double grand = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) grand += means[i] * static_cast<double>(groups[i].size());
  grand /= static_cast<double>(total_n);

  AnovaResult out;
  out.df_between = static_cast<int>(groups.size()) - 1;
  out.df_within = static_cast<int>(total_n - groups.size());
  // Equal means contribute nothing, even if the weighted grand mean rounds differently.
  const bool equal_means = std::all_of(means.begin(), means.end(), [&](double m) { return m == means.front(); });
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!equal_means) out.ss_between += static_cast<double>(groups[i].size()) * (means[i] - grand) * (means[i] - grand);
    out.ss_within += sum_squares_about(groups[i], means[i]);
  }
  if (out.ss_between == 0.0) {
    out.f = 0.0;
    out.p = 1.0;
  } else if (out.ss_within == 0.0) {
    out.f = std::numeric_limits<double>::infinity();
    out.p = 0.0;
  } else {
    out.f = (out.ss_between / out.df_between) / (out.ss_within / out.df_within);
    out.p = f_upper_tail(out.f, out.df_between, out.df_within);
  }
  return out;
}

double bonferroni(double p, std::size_t comparisons) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(fmt::format("p-value {} is outside [0, 1]", p));
  if (comparisons == 0) throw InputError("Bonferroni correction needs at least 1 comparison");
  return std::min(1.0, p * static_cast<double>(comparisons));
}

std::vector<PairwiseTest> pairwise_t_tests(std::span<const std::vector<double>> groups,
                                           std::optional<std::size_t> correction_count) {
  if (groups.size() < 2) throw InputError(fmt::format("pairwise tests need at least 2 groups, got {}", groups.size()));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() < 2) throw InputError(fmt::format("group {} has fewer than 2 values", i + 1));
  }
  const std::size_t pairs = groups.size() * (groups.size() - 1) / 2;
  const std::size_t count = correction_count.value_or(pairs);

  std::vector<PairwiseTest> out;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const auto& ga = groups[a];
      const auto& gb = groups[b];
      const double ma = mean(ga);
      const double mb = mean(gb);
      const double na = static_cast<double>(ga.size());
      const double nb = static_cast<double>(gb.size());
      PairwiseTest row;
      row.group_a = a;
      row.group_b = b;
      row.df = static_cast<int>(ga.size() + gb.size() - 2);
      const double pooled = (sum_squares_about(ga, ma) + sum_squares_about(gb, mb)) / row.df;
      if (ma == mb) {
        row.t = 0.0;
      } else if (pooled == 0.0) {
        row.t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
      } else {
        row.t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
      }
      row.p_raw = student_t_two_sided_p(row.t, row.df);
      row.p_adjusted = bonferroni(row.p_raw, count);
      out.push_back(row);
    }
  }
  return out;
}

ConfidenceInterval t_ci95(std::span<const double> values) {
  if (values.size() < 2) throw InputError("a t interval needs at least 2 values");
  const double m = mean(values);
  const double sd = sample_sd(values);
  if (sd == 0.0) return {m, m};
  const double n = static_cast<double>(values.size());
  const double half = student_t_quantile(0.975, n - 1.0) * sd / std::sqrt(n);
  return {m - half, m + half};
}

Regression grips_regression(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InputError(fmt::format("regression needs at least 3 points, got {}", points.size()));
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [x, y] : points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InputError("regression predictor has zero variance");

  Regression out;
  out.n = points.size();
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  if (syy == 0.0) {
    out.r_squared = 0.0;
    out.p = 1.0;
    return out;
  }
  out.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  const double df = static_cast<double>(points.size()) - 2.0;
  if (out.r_squared >= 1.0) {
    out.p = 0.0;
  } else {
    const double t = std::sqrt(out.r_squared * df / (1.0 - out.r_squared));
    out.p = student_t_two_sided_p(t, df);
  }
  return out;
}

Proportion make_proportion(std::size_t count, std::size_t total) {
  if (count > total) throw InputError(fmt::format("count {} exceeds total {}", count, total));
  Proportion p{count, total, 0.0};
  if (total > 0) p.percent = std::round(static_cast<double>(count) * 10000.0 / static_cast<double>(total)) / 100.0;
  return p;
}

std::vector<CodingRow> coding_tabulation(std::span<const ResponseRecord> records) {
  std::map<std::string, const ResponseRecord*> first;
  for (const auto& r : records) first.emplace(r.participant_id, &r);

  struct Counts {
    std::size_t total = 0;
    std::size_t per_day = 0;
    std::size_t summary_only = 0;
  };
  Counts overall;
  std::map<LayoutCondition, Counts> by_condition;
  for (const auto& [id, r] : first) {
    for (Counts* c : {&overall, &by_condition[r->condition]}) {
      ++c->total;
      c->per_day += r->mentioned_per_day_info ? 1 : 0;
      c->summary_only += r->mentioned_summary_only_info ? 1 : 0;
    }
  }
  std::vector<CodingRow> out;
  out.push_back({std::nullopt, make_proportion(overall.per_day, overall.total),
                 make_proportion(overall.summary_only, overall.total)});
  for (auto condition : kAllConditions) {
    const auto it = by_condition.find(condition);
    if (it == by_condition.end()) continue;
    out.push_back({condition, make_proportion(it->second.per_day, it->second.total),
                   make_proportion(it->second.summary_only, it->second.total)});
  }
  return out;
}

StatsReport analyze_study(std::span<const ResponseRecord> records) {
  if (records.empty()) throw InputError("no records");

  std::map<std::string, Participant> participants;
  for (const auto& r : records) {
    static_cast<void>(aggregate_risk(r.activity_ratings));
    auto& p = participants[r.participant_id];
    if (!p.records.empty()) {
      const auto& f = p.records.front();
      if (f.condition != r.condition || f.grips_score != r.grips_score || f.cohort != r.cohort ||
          f.mentioned_per_day_info != r.mentioned_per_day_info ||
          f.mentioned_summary_only_info != r.mentioned_summary_only_info) {
        throw InputError(fmt::format("participant {} has inconsistent condition or participant fields", r.participant_id));
      }
    }
    p.records.push_back(r);
  }

  StatsReport report;
  report.records = records.size();

  std::map<LayoutCondition, std::vector<double>> by_condition;
  std::vector<double> observer_means;
  std::vector<std::pair<double, double>> grips_points;
  std::vector<ResponseRecord> crowd_records;
  for (const auto& [id, p] : participants) {
    const double m = participant_mean_risk(p.records);
    const auto& f = p.records.front();
    if (f.cohort == Cohort::observer) {
      observer_means.push_back(m);
      continue;
    }
    by_condition[f.condition].push_back(m);
    grips_points.emplace_back(f.grips_score, m);
    crowd_records.push_back(f);
    ++report.participants;
  }
  if (report.participants == 0) throw InputError("no records from crowd participants");

  std::vector<std::vector<double>> groups;
  for (auto condition : kAllConditions) {
    const auto it = by_condition.find(condition);
    if (it == by_condition.end()) continue;
    report.groups.push_back(summarise(condition, it->second));
    groups.push_back(it->second);
  }
  report.anova = one_way_anova(groups);
  report.pairwise = pairwise_t_tests(groups);
  report.regression = grips_regression(grips_points);
  report.coding = coding_tabulation(crowd_records);
  if (!observer_means.empty()) report.observers = summarise(LayoutCondition::baseline, observer_means);
  return report;
}

}  // namespace hazcast::stats

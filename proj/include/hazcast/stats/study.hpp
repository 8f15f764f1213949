#pragma once

// Analysis of the forecast-design study: per-participant aggregate risk,
// between-groups ANOVA, Bonferroni-corrected pairwise t-tests, 95% t
// intervals, risk-propensity regression and coding proportions.
//
// Inputs that make a statistic undefined (too few values, a constant
// predictor, ratings outside [0, 100]) throw InputError.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hazcast/render.hpp"

namespace hazcast::stats {

inline constexpr std::size_t kActivityCount = 6;

/// Column names in the response file, in rating order.
inline constexpr std::array<std::string_view, kActivityCount> kActivityColumns{
    "car_trip", "day_hike", "mountaineering", "backcountry_skiing", "single_night_camping", "multi_night_camping"};

enum class Cohort { crowd, observer };

[[nodiscard]] std::string_view to_string(Cohort cohort);

struct ResponseRecord {
  std::string participant_id;
  LayoutCondition condition{LayoutCondition::baseline};
  std::string forecast_id;
  std::array<double, kActivityCount> activity_ratings{};
  double grips_score{};
  bool mentioned_per_day_info{};
  bool mentioned_summary_only_info{};
  Cohort cohort{Cohort::crowd};
};

/// Sum of exactly six ratings, each in [0, 100].
[[nodiscard]] double aggregate_risk(std::span<const double> ratings);

/// Mean aggregate risk over one participant's records.
[[nodiscard]] double participant_mean_risk(std::span<const ResponseRecord> records);

struct AnovaResult {
  double f{};
  int df_between{};
  int df_within{};
  double p{};
  double ss_between{};
  double ss_within{};
};

/// Needs at least two groups with at least two values each. When every value
/// inside each group is identical, F is 0 for equal means and +inf otherwise.
[[nodiscard]] AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

/// min(1, p * comparisons).
[[nodiscard]] double bonferroni(double p, std::size_t comparisons);

struct PairwiseTest {
  std::size_t group_a{};
  std::size_t group_b{};
  double t{};
  int df{};
  double p_raw{};
  double p_adjusted{};
};

/// Independent-samples pooled-variance t-test for every pair (a < b).
/// `correction_count` defaults to the number of pairs.
[[nodiscard]] std::vector<PairwiseTest> pairwise_t_tests(std::span<const std::vector<double>> groups,
                                                        std::optional<std::size_t> correction_count = std::nullopt);

struct ConfidenceInterval {
  double low{};
  double high{};
};

/// mean +- t(0.975, n-1) * sd / sqrt(n); needs n >= 2.
[[nodiscard]] ConfidenceInterval t_ci95(std::span<const double> values);

[[nodiscard]] double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); needs n >= 2.
[[nodiscard]] double sample_sd(std::span<const double> values);

struct Regression {
  double slope{};
  double intercept{};
  double r_squared{};
  double p{};
  std::size_t n{};
};

/// Least-squares fit of y on x over (x, y) pairs; p from the slope's t test
/// with n - 2 df. Needs n >= 3 and a non-constant x.
[[nodiscard]] Regression grips_regression(std::span<const std::pair<double, double>> points);

struct Proportion {
  std::size_t count{};
  std::size_t total{};
  double percent{};  // rounded to 2 decimals
};

[[nodiscard]] Proportion make_proportion(std::size_t count, std::size_t total);

struct CodingRow {
  std::optional<LayoutCondition> condition;  // empty for the overall row
  Proportion per_day_info;
  Proportion summary_only_info;
};

/// Counted once per participant: the overall row, then one row per condition
/// present, in condition order.
[[nodiscard]] std::vector<CodingRow> coding_tabulation(std::span<const ResponseRecord> records);

struct GroupSummary {
  LayoutCondition condition{LayoutCondition::baseline};
  std::size_t n{};
  double mean{};
  std::optional<double> sd;                 // needs n >= 2
  std::optional<ConfidenceInterval> ci95;  // needs n >= 2
};

struct StatsReport {
  std::size_t records{};
  std::size_t participants{};
  std::vector<GroupSummary> groups;
  AnovaResult anova;
  std::vector<PairwiseTest> pairwise;  // indices into groups
  Regression regression;
  std::vector<CodingRow> coding;
  /// Observer cohort: reference mean only, excluded from every test.
  std::optional<GroupSummary> observers;
};

/// Full pipeline over crowd participants; observers are summarised separately.
[[nodiscard]] StatsReport analyze_study(std::span<const ResponseRecord> records);

}  // namespace hazcast::stats

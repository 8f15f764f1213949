#pragma once

// Study data files and report output.
//
// responses.csv, one row per (participant, forecast):
//   participant_id,forecast_id,car_trip,day_hike,mountaineering,
//   backcountry_skiing,single_night_camping,multi_night_camping
//
// participants.csv, one row per participant:
//   participant_id,condition,grips_score,mentioned_per_day_info,
//   mentioned_summary_only_info[,cohort]
//
// Both files need a header row; columns may appear in any order. Fields may
// be double-quoted. Booleans are true/false, yes/no or 1/0; cohort is crowd
// (default) or observer; condition uses the layout names. Missing or
// out-of-range ratings are errors and are never imputed.

#include <string>
#include <string_view>
#include <vector>

#include "hazcast/stats/study.hpp"

namespace hazcast::stats {

/// Joins the two files. Throws InputError ("<origin>:<line>: ...");
/// a response file without data rows fails with "no records".
[[nodiscard]] std::vector<ResponseRecord> read_study(std::string_view responses_csv, std::string_view participants_csv,
                                                     std::string_view responses_origin = "responses",
                                                     std::string_view participants_origin = "participants");

/// Machine-readable report (JSON, trailing newline).
[[nodiscard]] std::string report_json(const StatsReport& report);
/// Human-readable report.
[[nodiscard]] std::string report_text(const StatsReport& report);
/// Group means with 95% interval bounds for external plotting (JSON).
[[nodiscard]] std::string plot_json(const StatsReport& report);

}  // namespace hazcast::stats

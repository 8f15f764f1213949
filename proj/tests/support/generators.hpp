#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hazcast/forecast.hpp"
#include "hazcast/stats/study.hpp"

namespace hazcast::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);

/// Values rounded to `step` so they print like forecast numbers.
double stepped(Rng& rng, double lo, double hi, double step);

/// A valid period. `wild` draws full-precision doubles and odd text for
/// serializer round trips; otherwise values look like real forecasts.
ForecastPeriod random_period(Rng& rng, std::string label, bool wild = false);

/// A valid four-period document with alternating day and night labels.
ForecastDocument random_document(Rng& rng, bool wild = false);

std::vector<double> random_values(Rng& rng, std::size_t n, double lo, double hi);

/// A synthetic study: `per_group` crowd participants in every condition,
/// `forecasts` responses each, plus `observers` observer participants.
std::vector<stats::ResponseRecord> random_study(Rng& rng, std::size_t per_group, std::size_t forecasts,
                                                std::size_t observers = 0);

}  // namespace hazcast::testing

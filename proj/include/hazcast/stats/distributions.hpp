#pragma once

// Distribution functions for the study statistics, built on the regularized
// incomplete beta function (continued fraction, relative tolerance 1e-10 or
// better over the parameter ranges used here).

namespace hazcast::stats {

/// I_x(a, b) for a, b > 0 and x in [0, 1]. Throws InputError otherwise.
[[nodiscard]] double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `df` > 0 degrees of freedom.
[[nodiscard]] double student_t_cdf(double t, double df);

/// Two-sided p-value P(|T| >= |t|).
[[nodiscard]] double student_t_two_sided_p(double t, double df);

/// Inverse of student_t_cdf for p in (0, 1).
[[nodiscard]] double student_t_quantile(double p, double df);

/// Upper tail P(F >= f) of the F distribution with (d1, d2) degrees of freedom.
[[nodiscard]] double f_upper_tail(double f, double d1, double d2);

}  // namespace hazcast::stats

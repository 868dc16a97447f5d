#pragma once

namespace tweetarx {

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation (modified Lentz) with 1e-10 termination.
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with df > 0 degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value P(|T| >= |t|) = I_x(df/2, 1/2) with x = df/(df + t^2).
double student_t_p_two_sided(double t, double df);

}  // namespace tweetarx

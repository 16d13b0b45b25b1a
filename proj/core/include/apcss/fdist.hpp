#pragma once

namespace apcss {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tail P(F > x) of the F distribution with (d1, d2) degrees of freedom.
/// Throws InvalidArgument for negative or NaN x and non-positive df.
/// x = +inf gives 0.
double f_upper_tail(double x, int d1, int d2);

}  // namespace apcss

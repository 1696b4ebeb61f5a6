#pragma once

namespace bindcap {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series expansion below the a+1 crossover, Lentz continued
/// fraction above.
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-squared distribution with k degrees of
/// freedom: P(X > x) = Q(k/2, x/2).
double chi_squared_sf(double x, double k);

}  // namespace bindcap

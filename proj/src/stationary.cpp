#include "bindcap/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bindcap/discrete.hpp"
#include "bindcap/errors.hpp"

namespace bindcap {

// Detailed balance gives the weights as a running product of rate ratios:
// A_{k+1} = A_k * abar_k / down_{k+1}, anchored at A_0 = prod_k down_k / k
// (for mass-action down-rates k*beta this is beta^n, so the normalizer z
// matches the per-receptor convention). For n > 30 the products are
// accumulated in log space; the weights span too many orders of magnitude
// for doubles well before rates become extreme.
StationaryDistribution stationary(const BirthDeathChannel& ch,
                                  const FeedbackPolicy& pol) {
  const int n = ch.n();
  const std::vector<double> abar = averaged_up_rates(ch, pol);
  for (int k = 0; k < n; ++k) {
    if (abar[k] <= 0.0) {
      std::ostringstream msg;
      msg << "chain is not irreducible: policy-averaged up-rate is zero at state "
          << k << " (p_" << k << " = " << pol.p[k] << ")";
      throw IrreducibilityError(msg.str());
    }
  }

  StationaryDistribution out;
  out.pi.resize(static_cast<size_t>(n) + 1);

  if (n <= 30) {
    std::vector<double> a(static_cast<size_t>(n) + 1);
    a[0] = 1.0;
    for (int k = 1; k <= n; ++k) a[0] *= ch.down()[k - 1] / k;
    for (int k = 0; k < n; ++k) a[k + 1] = a[k] * abar[k] / ch.down()[k];
    double z = 0.0;
    for (double v : a) z += v;
    for (int k = 0; k <= n; ++k) out.pi[k] = a[k] / z;
    out.z = z;
    out.log_z = std::log(z);
    return out;
  }

  std::vector<double> log_a(static_cast<size_t>(n) + 1);
  double l0 = 0.0;
  for (int k = 1; k <= n; ++k) l0 += std::log(ch.down()[k - 1] / k);
  log_a[0] = l0;
  for (int k = 0; k < n; ++k) {
    log_a[k + 1] = log_a[k] + std::log(abar[k]) - std::log(ch.down()[k]);
  }
  const double m = *std::max_element(log_a.begin(), log_a.end());
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += std::exp(log_a[k] - m);
  const double log_z = m + std::log(sum);
  for (int k = 0; k <= n; ++k) out.pi[k] = std::exp(log_a[k] - log_z);
  out.log_z = log_z;
  out.z = std::exp(log_z);  // may overflow to inf for very large n
  return out;
}

}  // namespace bindcap

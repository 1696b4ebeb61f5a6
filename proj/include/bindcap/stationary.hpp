#pragma once

#include "bindcap/channel.hpp"
#include "bindcap/policy.hpp"

#include <vector>

namespace bindcap {

/// Long-run occupancy law of the output chain. pi sums to 1; z is the sum of
/// the detailed-balance weights A_k (A_0 = prod_k down[k]/k, so mass-action
/// down-rates give A_0 = beta^n). z overflows double range for very large n;
/// log_z is always finite.
struct StationaryDistribution {
  std::vector<double> pi;
  double z = 0.0;
  double log_z = 0.0;
};

/// Stationary distribution of the output chain under a feedback policy,
/// computed from the detailed-balance product form. Independent of the time
/// step. Throws IrreducibilityError if any policy-averaged up-rate is zero.
/// Weights are accumulated in log space once n exceeds 30.
StationaryDistribution stationary(const BirthDeathChannel& ch,
                                  const FeedbackPolicy& pol);

}  // namespace bindcap

#pragma once

#include "bindcap/channel.hpp"
#include "bindcap/matrix.hpp"
#include "bindcap/policy.hpp"

namespace bindcap {

/// One-step transition matrices of the discretized chain for the two inputs.
/// Both are (n+1)x(n+1), tridiagonal and row-stochastic.
struct DiscreteChannelMatrices {
  double tau = 0.0;
  Matrix p_h;
  Matrix p_l;
};

/// Largest time step for which every row of both transition matrices keeps a
/// nonnegative diagonal: 1 / max over states and inputs of (up + down) rate.
double max_time_step(const BirthDeathChannel& ch);

/// Throws StepSizeError (naming the violated state) unless
/// 0 < tau < max_time_step(ch).
void check_time_step(const BirthDeathChannel& ch, double tau);

/// Builds the tridiagonal one-step matrices with up-entry tau*a, down-entry
/// tau*b, diagonal the remainder.
DiscreteChannelMatrices discretize(const BirthDeathChannel& ch, double tau);

/// Policy-averaged up-rates: abar[k] = p[k]*up_h[k] + (1-p[k])*up_l[k].
std::vector<double> averaged_up_rates(const BirthDeathChannel& ch,
                                      const FeedbackPolicy& pol);

/// One-step transition matrix of the output chain under a feedback policy:
/// the up-entries use the policy-averaged rates, down-entries are unchanged.
Matrix output_chain(const BirthDeathChannel& ch, const FeedbackPolicy& pol,
                    double tau);

}  // namespace bindcap

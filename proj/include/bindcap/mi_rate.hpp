#pragma once

#include <optional>

#include "bindcap/channel.hpp"
#include "bindcap/policy.hpp"

namespace bindcap {

enum class RateBasis { per_second, per_step };

/// A mutual information rate, tagged with its unit. tau is present iff the
/// basis is per_step. Values are clamped at zero: round-off negatives larger
/// than -1e-12 become exactly 0, anything more negative is a ConsistencyError.
struct MiRate {
  double value = 0.0;
  RateBasis basis = RateBasis::per_second;
  std::optional<double> tau;
};

/// Exact mutual information rate of the discretized chain, in nats per step:
/// a sum over the non-full states of the stationary-weighted difference
/// between the output-averaged and input-conditioned next-step entropies.
MiRate mi_rate_discrete(const BirthDeathChannel& ch, const FeedbackPolicy& pol,
                        double tau);

/// Small-step limit of the information rate, in nats per second: the edge sum
/// sum_k pi_k * (phi(abar_k) - p_k phi(up_h_k) - (1-p_k) phi(up_l_k)).
MiRate mi_rate_continuous(const BirthDeathChannel& ch,
                          const FeedbackPolicy& pol);

/// Closed form for independent channels under a state-independent input:
/// n * Psi(p) * beta / (abar + beta), nats per second. Agrees with
/// mi_rate_continuous at the uniform policy. Throws ValidationError for
/// non-independent channels.
MiRate mi_rate_iid(const BirthDeathChannel& ch, double p);

}  // namespace bindcap

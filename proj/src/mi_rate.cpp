#include "bindcap/mi_rate.hpp"

#include <cmath>
#include <sstream>

#include "bindcap/discrete.hpp"
#include "bindcap/entropy.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/stationary.hpp"

namespace bindcap {

namespace {

// Information rates are differences of entropies and can round to a tiny
// negative number when the true value is zero (e.g. alpha_l == alpha_h).
// Snap those to zero; anything materially negative means a bug upstream.
double clamp_nonnegative(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v > -1e-12) return 0.0;
  std::ostringstream msg;
  msg << what << " came out negative (" << v
      << "), beyond round-off; rates or stationary weights are inconsistent";
  throw ConsistencyError(msg.str());
}

}  // namespace

MiRate mi_rate_discrete(const BirthDeathChannel& ch, const FeedbackPolicy& pol,
                        double tau) {
  validate_for(pol, ch.n());
  check_time_step(ch, tau);
  const StationaryDistribution st = stationary(ch, pol);
  const std::vector<double> abar = averaged_up_rates(ch, pol);

  // Per-step information is a stationary average over states of the gap
  // between the next-step entropy given the output alone and given output
  // plus input. From state k the step distribution is (up, down, stay) with
  // probabilities (tau*a, tau*b_k, rest), so each term is a three-outcome
  // entropy. At k = n the input does not act (no up-move), so that state
  // contributes nothing and the sum stops at n-1.
  double total = 0.0;
  for (int k = 0; k < ch.n(); ++k) {
    const double qd = tau * ch.down_rate(k);
    const double mixed = triple_entropy(tau * abar[k], qd);
    const double cond = pol.p[k] * triple_entropy(tau * ch.up_h()[k], qd) +
                        (1.0 - pol.p[k]) * triple_entropy(tau * ch.up_l()[k], qd);
    total += st.pi[k] * (mixed - cond);
  }

  MiRate out;
  out.value = clamp_nonnegative(total, "discrete information rate");
  out.basis = RateBasis::per_step;
  out.tau = tau;
  return out;
}

MiRate mi_rate_continuous(const BirthDeathChannel& ch,
                          const FeedbackPolicy& pol) {
  validate_for(pol, ch.n());
  const StationaryDistribution st = stationary(ch, pol);
  const std::vector<double> abar = averaged_up_rates(ch, pol);

  // Small-tau limit of the per-step sum divided by tau: the down-rate and
  // stay terms cancel between the mixed and conditioned entropies, leaving
  // only the binding edge of each non-full state.
  double total = 0.0;
  for (int k = 0; k < ch.n(); ++k) {
    const double edge = partial_entropy(abar[k]) -
                        pol.p[k] * partial_entropy(ch.up_h()[k]) -
                        (1.0 - pol.p[k]) * partial_entropy(ch.up_l()[k]);
    total += st.pi[k] * edge;
  }

  MiRate out;
  out.value = clamp_nonnegative(total, "continuous information rate");
  out.basis = RateBasis::per_second;
  return out;
}

MiRate mi_rate_iid(const BirthDeathChannel& ch, double p) {
  if (ch.kind() != ChannelKind::independent || !ch.kinetics()) {
    throw ValidationError(
        "the closed-form state-independent rate applies only to channels "
        "built from independent receptor kinetics");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "input probability must lie in [0, 1], got " << p;
    throw ValidationError(msg.str());
  }
  const ReceptorKinetics kin = *ch.kinetics();
  const double abar = p * kin.alpha_h + (1.0 - p) * kin.alpha_l;
  // Computed as n times the one-receptor rate so the value is bitwise equal
  // across n at the same p (receptor count only enters as this factor).
  const double per_receptor =
      receptor_info_density(p, kin) * kin.beta / (abar + kin.beta);
  const double value = ch.n() * per_receptor;

  MiRate out;
  out.value = clamp_nonnegative(value, "state-independent information rate");
  out.basis = RateBasis::per_second;
  return out;
}

}  // namespace bindcap

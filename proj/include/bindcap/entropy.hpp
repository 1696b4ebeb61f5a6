#pragma once

#include "bindcap/kinetics.hpp"

namespace bindcap {

/// Partial entropy phi(p) = -p ln p, with phi(0) = 0. Defined for any
/// nonnegative argument (rates as well as probabilities); satisfies the
/// product rule phi(k p) = k phi(p) + p phi(k). Natural log: values in nats.
/// Throws std::domain_error for negative arguments.
double partial_entropy(double p);

/// Entropy of the three-outcome distribution (p, q, 1-p-q) in nats.
/// triple_entropy(p, 0) is the binary entropy of p.
/// Throws std::domain_error unless p, q >= 0 and p + q <= 1.
double triple_entropy(double p, double q);

/// Per-receptor information density
/// Psi(p) = phi(p alpha_h + (1-p) alpha_l) - p phi(alpha_h) - (1-p) phi(alpha_l),
/// the continuous-time rate contributed by one receptor's binding edge.
double receptor_info_density(double p, const ReceptorKinetics& kin);

}  // namespace bindcap

#include "bindcap/entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bindcap {

double partial_entropy(double p) {
  if (!(p >= 0.0)) {  // catches NaN too
    std::ostringstream msg;
    msg << "partial_entropy requires a nonnegative argument, got " << p;
    throw std::domain_error(msg.str());
  }
  if (p == 0.0) return 0.0;
  return -p * std::log(p);
}

double triple_entropy(double p, double q) {
  if (!(p >= 0.0) || !(q >= 0.0) || !(p + q <= 1.0)) {
    std::ostringstream msg;
    msg << "triple_entropy requires p, q >= 0 and p + q <= 1, got p = " << p
        << ", q = " << q;
    throw std::domain_error(msg.str());
  }
  // 1-p-q can land a hair below zero in floating point when p+q == 1.
  const double r = std::max(0.0, 1.0 - p - q);
  return partial_entropy(p) + partial_entropy(q) + partial_entropy(r);
}

double receptor_info_density(double p, const ReceptorKinetics& kin) {
  // Identically zero when the two inputs drive the same rate; return that
  // exactly rather than let the rounded mixture leak last-ulp noise.
  if (kin.alpha_h == kin.alpha_l) return 0.0;
  const double mix = p * kin.alpha_h + (1.0 - p) * kin.alpha_l;
  return partial_entropy(mix) - p * partial_entropy(kin.alpha_h) -
         (1.0 - p) * partial_entropy(kin.alpha_l);
}

}  // namespace bindcap

#include "bindcap/policy.hpp"

#include <cmath>
#include <sstream>

#include "bindcap/errors.hpp"

namespace bindcap {

FeedbackPolicy FeedbackPolicy::uniform(int n, double value) {
  return FeedbackPolicy{std::vector<double>(static_cast<size_t>(n), value)};
}

void validate(const FeedbackPolicy& pol) {
  if (pol.p.empty()) throw ValidationError("policy must have at least one entry");
  for (size_t k = 0; k < pol.p.size(); ++k) {
    const double v = pol.p[k];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream msg;
      msg << "policy entry p_" << k << " = " << v << " is not a probability";
      throw ValidationError(msg.str());
    }
  }
}

void validate_for(const FeedbackPolicy& pol, int n) {
  validate(pol);
  if (pol.size() != n) {
    std::ostringstream msg;
    msg << "policy has " << pol.size() << " entries but the channel has " << n
        << " free inputs (states 0.." << n - 1 << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace bindcap

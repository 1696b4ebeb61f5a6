#include "bindcap/discrete.hpp"

#include <cmath>
#include <sstream>

#include "bindcap/errors.hpp"

namespace bindcap {

double max_time_step(const BirthDeathChannel& ch) {
  double worst = 0.0;
  for (int k = 0; k <= ch.n(); ++k) {
    const double exit_h = ch.up_rate(k, true) + ch.down_rate(k);
    const double exit_l = ch.up_rate(k, false) + ch.down_rate(k);
    worst = std::max(worst, std::max(exit_h, exit_l));
  }
  return 1.0 / worst;
}

void check_time_step(const BirthDeathChannel& ch, double tau) {
  if (!std::isfinite(tau) || tau <= 0.0) {
    throw StepSizeError("time step tau must be finite and positive");
  }
  for (int k = 0; k <= ch.n(); ++k) {
    for (bool high : {true, false}) {
      const double exit = ch.up_rate(k, high) + ch.down_rate(k);
      if (tau * exit >= 1.0) {
        std::ostringstream msg;
        msg << "time step " << tau << " too large: tau*(up+down) = " << tau * exit
            << " >= 1 at state " << k << " under " << (high ? "high" : "low")
            << " input; need tau < " << 1.0 / exit;
        throw StepSizeError(msg.str());
      }
    }
  }
}

namespace {

Matrix tridiagonal_step(int n, double tau, const double* up, const double* down) {
  Matrix m(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double pu = k < n ? tau * up[k] : 0.0;
    const double pd = k > 0 ? tau * down[k - 1] : 0.0;
    if (k < n) m(k, k + 1) = pu;
    if (k > 0) m(k, k - 1) = pd;
    m(k, k) = 1.0 - (pu + pd);
  }
  return m;
}

}  // namespace

DiscreteChannelMatrices discretize(const BirthDeathChannel& ch, double tau) {
  check_time_step(ch, tau);
  const int n = ch.n();
  return DiscreteChannelMatrices{
      tau, tridiagonal_step(n, tau, ch.up_h().data(), ch.down().data()),
      tridiagonal_step(n, tau, ch.up_l().data(), ch.down().data())};
}

std::vector<double> averaged_up_rates(const BirthDeathChannel& ch,
                                      const FeedbackPolicy& pol) {
  validate_for(pol, ch.n());
  std::vector<double> abar(static_cast<size_t>(ch.n()));
  for (int k = 0; k < ch.n(); ++k) {
    abar[k] = pol.p[k] * ch.up_h()[k] + (1.0 - pol.p[k]) * ch.up_l()[k];
  }
  return abar;
}

Matrix output_chain(const BirthDeathChannel& ch, const FeedbackPolicy& pol,
                    double tau) {
  check_time_step(ch, tau);
  const std::vector<double> abar = averaged_up_rates(ch, pol);
  return tridiagonal_step(ch.n(), tau, abar.data(), ch.down().data());
}

}  // namespace bindcap

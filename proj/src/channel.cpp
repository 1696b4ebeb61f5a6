#include "bindcap/channel.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "bindcap/errors.hpp"

namespace bindcap {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

void check_rate_vectors(const std::vector<double>& up_h,
                        const std::vector<double>& up_l,
                        const std::vector<double>& down) {
  const size_t n = up_h.size();
  if (n == 0) throw ValidationError("channel needs at least one state transition (n >= 1)");
  if (up_l.size() != n || down.size() != n) {
    std::ostringstream msg;
    msg << "rate vectors must have equal length: up_h has " << n << ", up_l has "
        << up_l.size() << ", down has " << down.size();
    throw ValidationError(msg.str());
  }
  for (size_t k = 0; k < n; ++k) {
    if (!finite_nonneg(up_h[k]) || !finite_nonneg(up_l[k])) {
      std::ostringstream msg;
      msg << "up-rates must be finite and nonnegative (state " << k << ")";
      throw ValidationError(msg.str());
    }
    if (!std::isfinite(down[k]) || down[k] <= 0.0) {
      std::ostringstream msg;
      msg << "down-rates must be finite and strictly positive (state " << k + 1 << ")";
      throw ValidationError(msg.str());
    }
  }
}

}  // namespace

void validate(const ReceptorKinetics& kin) {
  if (!std::isfinite(kin.alpha_l) || !std::isfinite(kin.alpha_h) ||
      !std::isfinite(kin.beta)) {
    throw ValidationError("kinetic rates must be finite");
  }
  if (kin.alpha_l < 0.0 || kin.alpha_h < 0.0) {
    throw ValidationError("binding rates must be nonnegative");
  }
  if (kin.alpha_l > kin.alpha_h) {
    throw ValidationError("alpha_l must not exceed alpha_h (low vs. high concentration)");
  }
  if (kin.beta <= 0.0) {
    throw ValidationError("unbinding rate beta must be strictly positive");
  }
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::independent: return "independent";
    case ChannelKind::cooperative: return "cooperative";
    case ChannelKind::custom: return "custom";
  }
  return "?";
}

ChannelKind channel_kind_from_string(const std::string& s) {
  if (s == "independent") return ChannelKind::independent;
  if (s == "cooperative") return ChannelKind::cooperative;
  if (s == "custom") return ChannelKind::custom;
  throw ValidationError("unknown channel kind '" + s +
                        "' (expected independent, cooperative, or custom)");
}

BirthDeathChannel::BirthDeathChannel(ChannelKind kind, std::vector<double> up_h,
                                     std::vector<double> up_l,
                                     std::vector<double> down,
                                     std::optional<ReceptorKinetics> kin)
    : n_(static_cast<int>(up_h.size())),
      kind_(kind),
      up_h_(std::move(up_h)),
      up_l_(std::move(up_l)),
      down_(std::move(down)),
      kin_(kin) {}

BirthDeathChannel build_independent_channel(int n, const ReceptorKinetics& kin) {
  if (n < 1) throw ValidationError("receptor count n must be >= 1");
  validate(kin);
  std::vector<double> up_h(n), up_l(n), down(n);
  for (int k = 0; k < n; ++k) {
    up_h[k] = (n - k) * kin.alpha_h;
    up_l[k] = (n - k) * kin.alpha_l;
    down[k] = (k + 1) * kin.beta;
  }
  check_rate_vectors(up_h, up_l, down);
  return BirthDeathChannel(ChannelKind::independent, std::move(up_h),
                           std::move(up_l), std::move(down), kin);
}

BirthDeathChannel build_cooperative_channel(int n, const ReceptorKinetics& kin) {
  if (n < 1) throw ValidationError("receptor count n must be >= 1");
  validate(kin);
  std::vector<double> up_h(n, kin.alpha_h), up_l(n, kin.alpha_l), down(n, kin.beta);
  check_rate_vectors(up_h, up_l, down);
  return BirthDeathChannel(ChannelKind::cooperative, std::move(up_h),
                           std::move(up_l), std::move(down), kin);
}

BirthDeathChannel build_custom_channel(std::vector<double> up_h,
                                       std::vector<double> up_l,
                                       std::vector<double> down) {
  check_rate_vectors(up_h, up_l, down);
  return BirthDeathChannel(ChannelKind::custom, std::move(up_h), std::move(up_l),
                           std::move(down), std::nullopt);
}

}  // namespace bindcap

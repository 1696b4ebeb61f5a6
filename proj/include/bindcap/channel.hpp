#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bindcap/kinetics.hpp"

namespace bindcap {

enum class ChannelKind { independent, cooperative, custom };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& s);

/// Birth-death Markov channel on states 0..n (number of bound receptors).
/// Rates are *total* transition rates out of a state: up_h[k] / up_l[k] is the
/// rate of k -> k+1 under high / low input, down()[k-1] the rate of k -> k-1.
/// Immutable after construction; safe to share across threads.
class BirthDeathChannel {
 public:
  int n() const { return n_; }
  ChannelKind kind() const { return kind_; }

  const std::vector<double>& up_h() const { return up_h_; }
  const std::vector<double>& up_l() const { return up_l_; }
  const std::vector<double>& down() const { return down_; }

  /// Total up-rate out of state k (zero for the fully bound state k == n).
  double up_rate(int k, bool high_input) const {
    if (k >= n_) return 0.0;
    return high_input ? up_h_[k] : up_l_[k];
  }
  /// Total down-rate out of state k (zero for k == 0).
  double down_rate(int k) const { return k == 0 ? 0.0 : down_[k - 1]; }

  /// Generating per-receptor kinetics; set for independent and cooperative
  /// channels, empty for custom rate vectors.
  const std::optional<ReceptorKinetics>& kinetics() const { return kin_; }

 private:
  BirthDeathChannel(ChannelKind kind, std::vector<double> up_h,
                    std::vector<double> up_l, std::vector<double> down,
                    std::optional<ReceptorKinetics> kin);

  int n_;
  ChannelKind kind_;
  std::vector<double> up_h_, up_l_, down_;
  std::optional<ReceptorKinetics> kin_;

  friend BirthDeathChannel build_independent_channel(int n,
                                                     const ReceptorKinetics&);
  friend BirthDeathChannel build_cooperative_channel(int n,
                                                     const ReceptorKinetics&);
  friend BirthDeathChannel build_custom_channel(std::vector<double> up_h,
                                                std::vector<double> up_l,
                                                std::vector<double> down);
};

/// n identical receptors binding independently under mass action:
/// up-rate (n-k)*alpha, down-rate k*beta.
BirthDeathChannel build_independent_channel(int n, const ReceptorKinetics& kin);

/// Cooperative binding: total rates do not scale with occupancy
/// (up-rate alpha and down-rate beta from every state).
BirthDeathChannel build_cooperative_channel(int n, const ReceptorKinetics& kin);

/// Arbitrary tridiagonal rates. All three vectors must have the same length
/// n >= 1; up rates must be nonnegative, down rates strictly positive.
BirthDeathChannel build_custom_channel(std::vector<double> up_h,
                                       std::vector<double> up_l,
                                       std::vector<double> down);

}  // namespace bindcap

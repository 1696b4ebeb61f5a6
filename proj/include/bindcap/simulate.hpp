#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bindcap/channel.hpp"
#include "bindcap/policy.hpp"

namespace bindcap {

struct SimulationConfig {
  std::int64_t steps = 0;
  double tau = 0.0;
  std::uint64_t seed = 0;
  std::int64_t burn_in = 0;  // discarded prefix, must be < steps
};

/// A simulated run of the discretized channel. One entry of inputs/states per
/// step; states[i] is the state after step i. Carries enough metadata
/// (policy, occupancy law, mixing stride) for the estimators to stay pure
/// functions of the trajectory.
///
/// Randomness: a SplitMix64 master seeded with `seed` yields, in order, the
/// initial-state stream, the step stream, and the bootstrap stream. The
/// initial state inverts the stationary CDF on one draw. Each step draws the
/// input (u < p_k selects high; p = 1/2 in the fully bound state, where the
/// input cannot matter), then the move: u < tau*a goes up, u < tau*(a+b)
/// goes down, otherwise stay.
struct Trajectory {
  int n = 0;
  double tau = 0.0;
  std::int64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::uint32_t initial_state = 0;
  std::vector<std::uint8_t> inputs;   // 0 = low, 1 = high
  std::vector<std::uint32_t> states;
  std::vector<double> policy;
  std::vector<double> stationary_pi;
  std::int64_t thin_stride = 1;  // ~10 relaxation times, for occupancy tests
};

/// Transition counts indexed (previous state, input, next state). Only moves
/// to adjacent states can occur, so storage is (n+1) x 2 x {down,stay,up}.
class TransitionCounts {
 public:
  explicit TransitionCounts(int n) : n_(n), c_(static_cast<size_t>(n + 1) * 6, 0) {}

  std::uint64_t& at(int prev, int input, int delta) {
    return c_[(static_cast<size_t>(prev) * 2 + input) * 3 + (delta + 1)];
  }
  std::uint64_t at(int prev, int input, int delta) const {
    return c_[(static_cast<size_t>(prev) * 2 + input) * 3 + (delta + 1)];
  }
  /// Count for an arbitrary (prev, input, next) triple; zero when the states
  /// are not adjacent.
  std::uint64_t count(int prev, int input, int next) const;

  std::uint64_t row_total(int prev, int input) const;
  std::uint64_t total() const;
  int n() const { return n_; }

 private:
  int n_;
  std::vector<std::uint64_t> c_;
};

struct EmpiricalEstimate {
  double mi_per_second = 0.0;
  double stderr_per_second = 0.0;
  TransitionCounts counts{0};
  /// (state, input) rows never visited although their stationary mass
  /// exceeds 1e-6.
  std::vector<std::pair<int, int>> flagged_rows;
};

/// Simulates the discrete-time channel under a feedback policy.
/// Deterministic given the config. Throws StepSizeError for an invalid tau
/// and ValidationError for a bad config or policy.
Trajectory simulate_trajectory(const BirthDeathChannel& ch,
                               const FeedbackPolicy& pol,
                               const SimulationConfig& cfg);

/// Plug-in estimate of the mutual information rate from the post-burn-in
/// transition counts: empirical H(next | prev) - H(next | input, prev),
/// divided by tau. The standard error comes from a 50-block bootstrap over
/// contiguous transition blocks (200 replicates, seeded from the
/// trajectory's bootstrap stream). Requires at least 10^4 transitions after
/// burn-in.
EmpiricalEstimate estimate_mi(const Trajectory& traj, double tau);

struct OccupancyTest {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::int64_t stride = 1;
  std::int64_t samples = 0;
};

/// Pearson chi-squared test of the post-burn-in state histogram against the
/// stationary law. States are sampled every thin_stride steps so the samples
/// are effectively independent; adjacent states with expected count < 5 are
/// pooled.
OccupancyTest occupancy_chi_squared(const Trajectory& traj);

/// Delimited-text trajectory export, one `step,input,state` row per step.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// Binary trajectory export: magic "BCTRAJ1\n", then little-endian
/// u32 n, u64 steps, f64 tau, u32 initial_state, then per step u8 input and
/// u32 state.
void write_trajectory_binary(const Trajectory& traj, std::ostream& out);

/// Delimited-text count-tensor export, `prev,input,next,count` rows for the
/// structurally reachable triples.
void write_counts_csv(const TransitionCounts& counts, std::ostream& out);

}  // namespace bindcap

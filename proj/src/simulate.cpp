#include "bindcap/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "bindcap/discrete.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/rng.hpp"
#include "bindcap/stationary.hpp"
#include "bindcap/stats.hpp"

namespace bindcap {

namespace {

// Derived generators, in the order the master stream hands them out. Keeping
// the derivation in one place is what makes runs reproducible from the seed
// alone.
struct SeedStreams {
  SplitMix64 init;
  SplitMix64 step;
  SplitMix64 bootstrap;
};

SeedStreams derive_streams(std::uint64_t seed) {
  SplitMix64 master(seed);
  SplitMix64 init = master.split();
  SplitMix64 step = master.split();
  SplitMix64 boot = master.split();
  return SeedStreams{init, step, boot};
}

int draw_from_pmf(const std::vector<double>& pmf, double u) {
  double acc = 0.0;
  for (size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(pmf.size()) - 1;
}

}  // namespace

std::uint64_t TransitionCounts::count(int prev, int input, int next) const {
  if (prev < 0 || prev > n_ || next < 0 || next > n_) return 0;
  const int delta = next - prev;
  if (delta < -1 || delta > 1) return 0;
  return at(prev, input, delta);
}

std::uint64_t TransitionCounts::row_total(int prev, int input) const {
  return at(prev, input, -1) + at(prev, input, 0) + at(prev, input, 1);
}

std::uint64_t TransitionCounts::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t v : c_) t += v;
  return t;
}

Trajectory simulate_trajectory(const BirthDeathChannel& ch,
                               const FeedbackPolicy& pol,
                               const SimulationConfig& cfg) {
  validate_for(pol, ch.n());
  if (cfg.steps <= 0) {
    throw ValidationError("simulation needs a positive number of steps");
  }
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.steps) {
    std::ostringstream msg;
    msg << "burn-in must lie in [0, steps), got burn_in = " << cfg.burn_in
        << " with steps = " << cfg.steps;
    throw ValidationError(msg.str());
  }
  check_time_step(ch, cfg.tau);

  const int n = ch.n();
  const StationaryDistribution st = stationary(ch, pol);
  SeedStreams streams = derive_streams(cfg.seed);

  Trajectory traj;
  traj.n = n;
  traj.tau = cfg.tau;
  traj.burn_in = cfg.burn_in;
  traj.seed = cfg.seed;
  traj.policy = pol.p;
  traj.stationary_pi = st.pi;
  traj.initial_state =
      static_cast<std::uint32_t>(draw_from_pmf(st.pi, streams.init.next_double()));

  traj.inputs.resize(static_cast<size_t>(cfg.steps));
  traj.states.resize(static_cast<size_t>(cfg.steps));

  int cur = static_cast<int>(traj.initial_state);
  for (std::int64_t i = 0; i < cfg.steps; ++i) {
    // The fully bound state has no binding edge; a fair coin keeps the
    // draw count per step fixed without biasing anything observable.
    const double pk = (cur < n) ? pol.p[cur] : 0.5;
    const bool high = streams.step.next_double() < pk;
    const double up = cfg.tau * ch.up_rate(cur, high);
    const double down = cfg.tau * ch.down_rate(cur);
    const double u = streams.step.next_double();
    if (u < up) {
      ++cur;
    } else if (u < up + down) {
      --cur;
    }
    traj.inputs[static_cast<size_t>(i)] = high ? 1 : 0;
    traj.states[static_cast<size_t>(i)] = static_cast<std::uint32_t>(cur);
  }

  // Mixing-time proxy for the thinning stride: the slowest state empties at
  // rate abar + down at least, so ~10 of those times apart the samples are
  // effectively independent draws from the occupancy law.
  const std::vector<double> abar = averaged_up_rates(ch, pol);
  double min_exit = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const double exit = (k < n ? abar[k] : 0.0) + ch.down_rate(k);
    min_exit = std::min(min_exit, exit);
  }
  traj.thin_stride =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                    std::ceil(10.0 / (cfg.tau * min_exit))));
  return traj;
}

namespace {

// Empirical conditional mutual information per step,
// H(next | prev) - H(next | input, prev), from a count tensor.
double plugin_mi_per_step(const TransitionCounts& counts) {
  const int n = counts.n();
  const double total = static_cast<double>(counts.total());
  if (total <= 0.0) return 0.0;

  double h_given_prev = 0.0;
  double h_given_both = 0.0;
  for (int prev = 0; prev <= n; ++prev) {
    const std::uint64_t state_total =
        counts.row_total(prev, 0) + counts.row_total(prev, 1);
    for (int delta = -1; delta <= 1; ++delta) {
      const std::uint64_t merged =
          counts.at(prev, 0, delta) + counts.at(prev, 1, delta);
      if (merged > 0) {
        const double w = static_cast<double>(merged) / total;
        h_given_prev -= w * std::log(static_cast<double>(merged) /
                                     static_cast<double>(state_total));
      }
      for (int input = 0; input < 2; ++input) {
        const std::uint64_t c = counts.at(prev, input, delta);
        if (c > 0) {
          const double w = static_cast<double>(c) / total;
          h_given_both -= w * std::log(static_cast<double>(c) /
                                       static_cast<double>(
                                           counts.row_total(prev, input)));
        }
      }
    }
  }
  // A conditional mutual information of the empirical law; negative values
  // can only be round-off.
  return std::max(0.0, h_given_prev - h_given_both);
}

}  // namespace

EmpiricalEstimate estimate_mi(const Trajectory& traj, double tau) {
  if (!(tau > 0.0)) {
    std::ostringstream msg;
    msg << "per-second conversion needs tau > 0, got " << tau;
    throw ValidationError(msg.str());
  }
  const std::int64_t steps = static_cast<std::int64_t>(traj.states.size());
  const std::int64_t used = steps - traj.burn_in;
  if (used < 10000) {
    std::ostringstream msg;
    msg << "plug-in estimate needs at least 10000 post-burn-in transitions, "
           "have "
        << used;
    throw ValidationError(msg.str());
  }

  const int n = traj.n;
  constexpr int kBlocks = 50;
  constexpr int kReplicates = 200;

  // One count tensor per contiguous block; the full tensor is their sum and
  // the bootstrap resamples whole blocks to respect the serial dependence.
  std::vector<TransitionCounts> blocks(kBlocks, TransitionCounts(n));
  const std::int64_t base = used / kBlocks;
  const std::int64_t rem = used % kBlocks;
  std::int64_t i = traj.burn_in;
  for (int b = 0; b < kBlocks; ++b) {
    const std::int64_t len = base + (b < rem ? 1 : 0);
    TransitionCounts& c = blocks[static_cast<size_t>(b)];
    for (std::int64_t j = 0; j < len; ++j, ++i) {
      const int prev = (i == 0) ? static_cast<int>(traj.initial_state)
                                : static_cast<int>(traj.states[static_cast<size_t>(i - 1)]);
      const int input = traj.inputs[static_cast<size_t>(i)];
      const int delta = static_cast<int>(traj.states[static_cast<size_t>(i)]) - prev;
      ++c.at(prev, input, delta);
    }
  }

  EmpiricalEstimate est;
  est.counts = TransitionCounts(n);
  for (const TransitionCounts& c : blocks) {
    for (int prev = 0; prev <= n; ++prev) {
      for (int input = 0; input < 2; ++input) {
        for (int delta = -1; delta <= 1; ++delta) {
          est.counts.at(prev, input, delta) += c.at(prev, input, delta);
        }
      }
    }
  }
  est.mi_per_second = plugin_mi_per_step(est.counts) / tau;

  // Block bootstrap: resample the 50 blocks with replacement, re-estimate,
  // and report the spread of the replicates.
  SeedStreams streams = derive_streams(traj.seed);
  SplitMix64& boot = streams.bootstrap;
  std::vector<double> replicates(kReplicates);
  for (int r = 0; r < kReplicates; ++r) {
    TransitionCounts resampled(n);
    for (int b = 0; b < kBlocks; ++b) {
      const int pick = static_cast<int>(boot.next() % kBlocks);
      const TransitionCounts& c = blocks[static_cast<size_t>(pick)];
      for (int prev = 0; prev <= n; ++prev) {
        for (int input = 0; input < 2; ++input) {
          for (int delta = -1; delta <= 1; ++delta) {
            resampled.at(prev, input, delta) += c.at(prev, input, delta);
          }
        }
      }
    }
    replicates[static_cast<size_t>(r)] = plugin_mi_per_step(resampled) / tau;
  }
  double mean = 0.0;
  for (double v : replicates) mean += v;
  mean /= kReplicates;
  double var = 0.0;
  for (double v : replicates) var += (v - mean) * (v - mean);
  var /= (kReplicates - 1);
  est.stderr_per_second = std::sqrt(var);

  // Rows the run never visited even though the occupancy law says it should
  // have: a red flag for a broken simulator or a far-too-short run.
  for (int prev = 0; prev <= n; ++prev) {
    const double p_high = (prev < n) ? traj.policy[static_cast<size_t>(prev)] : 0.5;
    for (int input = 0; input < 2; ++input) {
      const double mass =
          traj.stationary_pi[static_cast<size_t>(prev)] *
          (input == 1 ? p_high : 1.0 - p_high);
      if (est.counts.row_total(prev, input) == 0 && mass > 1e-6) {
        est.flagged_rows.emplace_back(prev, input);
      }
    }
  }
  return est;
}

OccupancyTest occupancy_chi_squared(const Trajectory& traj) {
  const std::int64_t steps = static_cast<std::int64_t>(traj.states.size());
  const std::int64_t stride = std::max<std::int64_t>(1, traj.thin_stride);

  std::vector<std::int64_t> hist(static_cast<size_t>(traj.n) + 1, 0);
  std::int64_t samples = 0;
  for (std::int64_t i = traj.burn_in; i < steps; i += stride) {
    ++hist[traj.states[static_cast<size_t>(i)]];
    ++samples;
  }
  if (samples < 10) {
    std::ostringstream msg;
    msg << "occupancy test has only " << samples
        << " thinned samples (stride " << stride
        << "); run longer or reduce the stride";
    throw ValidationError(msg.str());
  }

  // Pool adjacent states until each category expects at least 5 counts; the
  // asymptotic chi-squared law is unreliable below that.
  std::vector<double> obs_pooled, exp_pooled;
  double oa = 0.0, ea = 0.0;
  for (int k = 0; k <= traj.n; ++k) {
    oa += static_cast<double>(hist[static_cast<size_t>(k)]);
    ea += samples * traj.stationary_pi[static_cast<size_t>(k)];
    if (ea >= 5.0) {
      obs_pooled.push_back(oa);
      exp_pooled.push_back(ea);
      oa = ea = 0.0;
    }
  }
  if (ea > 0.0 || oa > 0.0) {
    if (!exp_pooled.empty()) {
      obs_pooled.back() += oa;
      exp_pooled.back() += ea;
    } else {
      obs_pooled.push_back(oa);
      exp_pooled.push_back(ea);
    }
  }

  OccupancyTest out;
  out.stride = stride;
  out.samples = samples;
  out.dof = static_cast<int>(obs_pooled.size()) - 1;
  if (out.dof < 1) {
    out.statistic = 0.0;
    out.p_value = 1.0;
    return out;
  }
  double stat = 0.0;
  for (size_t j = 0; j < obs_pooled.size(); ++j) {
    const double d = obs_pooled[j] - exp_pooled[j];
    stat += d * d / exp_pooled[j];
  }
  out.statistic = stat;
  out.p_value = chi_squared_sf(stat, out.dof);
  return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "step,input,state\n";
  for (size_t i = 0; i < traj.states.size(); ++i) {
    out << i << ',' << static_cast<int>(traj.inputs[i]) << ',' << traj.states[i]
        << '\n';
  }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8 && !std::is_integral_v<T>) {
    std::memcpy(&bits, &value, 8);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

void write_trajectory_binary(const Trajectory& traj, std::ostream& out) {
  out.write("BCTRAJ1\n", 8);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(traj.n));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(traj.states.size()));
  put_le<double>(out, traj.tau);
  put_le<std::uint32_t>(out, traj.initial_state);
  for (size_t i = 0; i < traj.states.size(); ++i) {
    out.put(static_cast<char>(traj.inputs[i]));
    put_le<std::uint32_t>(out, traj.states[i]);
  }
}

void write_counts_csv(const TransitionCounts& counts, std::ostream& out) {
  out << "prev,input,next,count\n";
  for (int prev = 0; prev <= counts.n(); ++prev) {
    for (int input = 0; input < 2; ++input) {
      for (int delta = -1; delta <= 1; ++delta) {
        const int next = prev + delta;
        if (next < 0 || next > counts.n()) continue;
        out << prev << ',' << input << ',' << next << ','
            << counts.at(prev, input, delta) << '\n';
      }
    }
  }
}

}  // namespace bindcap

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bindcap/channel.hpp"
#include "bindcap/policy.hpp"

namespace bindcap {

struct CapacityOptions {
  int max_feedback_n = 16;   // dense-stage dimension limit
  int grid_points = 21;      // per axis for n <= 3
  int lhs_samples = 4096;    // Latin hypercube size for n > 3
  std::uint64_t lhs_seed = 0x1905;
  double p_tol = 1e-9;       // golden-section bracket width
  double sweep_tol = 1e-12;  // stop when a full coordinate sweep gains less
  int max_sweeps = 200;
};

struct CapacityResult {
  double capacity = 0.0;          // nats per second
  FeedbackPolicy argmax;          // optimizing policy (uniform in IID mode)
  std::optional<double> p_star;   // scalar argmax, set by IID optimization
  long iterations = 0;            // objective evaluations
  bool converged = false;
  double final_step = 0.0;        // last bracket width / last sweep gain
};

/// Capacity over state-independent inputs: maximizes the continuous-limit
/// rate at the uniform policy over p in [0, 1], golden section after a
/// 64-point scan. A channel with identical high- and low-input rates has
/// capacity 0; the argmax ties break to p = 0.5.
CapacityResult capacity_iid(const BirthDeathChannel& ch,
                            const CapacityOptions& opt = {});

/// Capacity over feedback policies: coarse stage (full grid for n <= 3,
/// seeded Latin hypercube above) followed by golden-section coordinate
/// ascent, refining both the best coarse point and the IID optimum.
/// Deterministic for fixed options. Throws ValidationError when n exceeds
/// opt.max_feedback_n.
CapacityResult capacity_feedback(const BirthDeathChannel& ch,
                                 const CapacityOptions& opt = {});

struct ScalingRow {
  int n = 0;
  double capacity = 0.0;
  double p_star = 0.0;
  double ratio = 0.0;  // capacity / (n * single-receptor capacity)
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double max_ratio_error = 0.0;    // max |ratio - 1|
  double max_p_star_spread = 0.0;  // max |p_star(n) - p_star(1)|
};

/// Checks that the IID capacity of n independent receptors is n times the
/// single-receptor capacity with the same optimizer, for n = 1..n_max.
/// Throws ConsistencyError if any ratio deviates from 1 by more than 1e-10
/// or the argmax drifts by more than 1e-9 (that would be a bug, not an
/// input problem).
ScalingReport verify_linear_scaling(const ReceptorKinetics& kin, int n_max,
                                    const CapacityOptions& opt = {});

}  // namespace bindcap

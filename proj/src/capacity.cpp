#include "bindcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "bindcap/entropy.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/mi_rate.hpp"
#include "bindcap/optimize.hpp"
#include "bindcap/rng.hpp"

namespace bindcap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A policy can disconnect the chain (p_k = 0 where the low-input up-rate is
// zero). Such points are simply infeasible for the optimizer.
double safe_rate(const BirthDeathChannel& ch, const FeedbackPolicy& pol) {
  try {
    return mi_rate_continuous(ch, pol).value;
  } catch (const IrreducibilityError&) {
    return kNegInf;
  }
}

struct AscentResult {
  std::vector<double> p;
  double value = kNegInf;
  long evals = 0;
  bool converged = false;
  double last_gain = 0.0;
};

AscentResult coordinate_ascent(const BirthDeathChannel& ch,
                               std::vector<double> p,
                               const CapacityOptions& opt) {
  const int n = ch.n();
  AscentResult res;
  FeedbackPolicy pol{p};
  double value = safe_rate(ch, pol);
  ++res.evals;

  bool converged = false;
  double last_gain = 0.0;
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    const double before = value;
    for (int k = 0; k < n; ++k) {
      auto line = [&](double x) {
        pol.p[k] = x;
        ++res.evals;
        return safe_rate(ch, pol);
      };
      const double keep = pol.p[k];
      const GoldenResult g = golden_section_maximize(line, 0.0, 1.0, opt.p_tol);
      // Accept only improvements; golden section can return a midpoint a
      // hair below the incumbent on flat stretches.
      if (g.fx > value) {
        pol.p[k] = g.x;
        value = g.fx;
      } else {
        pol.p[k] = keep;
      }
    }
    last_gain = value - before;
    if (!(last_gain > opt.sweep_tol)) {
      converged = true;
      break;
    }
  }

  res.p = pol.p;
  res.value = value;
  res.converged = converged;
  res.last_gain = last_gain;
  return res;
}

}  // namespace

CapacityResult capacity_iid(const BirthDeathChannel& ch,
                            const CapacityOptions& opt) {
  const int n = ch.n();
  long evals = 0;

  // For independent receptors the rate is exactly n times a one-receptor
  // expression, so maximize that expression instead: the optimizer then
  // walks an identical trajectory for every n and the argmax cannot drift
  // with receptor count. Other kinds get the full edge-sum rate at a
  // state-independent (uniform) policy.
  std::function<double(double)> objective;
  if (ch.kind() == ChannelKind::independent && ch.kinetics()) {
    const ReceptorKinetics kin = *ch.kinetics();
    objective = [kin, &evals](double p) {
      ++evals;
      const double abar = p * kin.alpha_h + (1.0 - p) * kin.alpha_l;
      return receptor_info_density(p, kin) * kin.beta / (abar + kin.beta);
    };
  } else {
    objective = [&ch, n, &evals](double p) {
      ++evals;
      try {
        return mi_rate_continuous(ch, FeedbackPolicy::uniform(n, p)).value;
      } catch (const IrreducibilityError&) {
        return kNegInf;
      }
    };
  }

  const ScanResult scan = scan_maximize(objective, 0.0, 1.0, 64);
  const GoldenResult g =
      golden_section_maximize(objective, scan.lo, scan.hi, opt.p_tol);
  double best_x = g.fx >= scan.best_fx ? g.x : scan.best_x;
  double best_fx = std::max(g.fx, scan.best_fx);

  if (!(best_fx > 0.0)) {
    // Indistinguishable inputs (or a fully flat objective): zero capacity,
    // and every p is an argmax. Report the symmetric one.
    best_x = 0.5;
    best_fx = 0.0;
  }

  CapacityResult out;
  out.capacity = (ch.kind() == ChannelKind::independent && ch.kinetics())
                     ? n * best_fx
                     : best_fx;
  out.argmax = FeedbackPolicy::uniform(n, best_x);
  out.p_star = best_x;
  out.iterations = evals;
  out.converged = true;
  out.final_step = g.final_width;
  return out;
}

CapacityResult capacity_feedback(const BirthDeathChannel& ch,
                                 const CapacityOptions& opt) {
  const int n = ch.n();
  if (n > opt.max_feedback_n) {
    std::ostringstream msg;
    msg << "feedback optimization over " << n
        << " coordinates exceeds the configured limit of "
        << opt.max_feedback_n
        << "; raise max_feedback_n if the run time is acceptable";
    throw ValidationError(msg.str());
  }

  long evals = 0;
  std::vector<double> coarse_best(n, 0.5);
  double coarse_fx = kNegInf;

  if (n <= 3) {
    // Full tensor grid.
    const int g = opt.grid_points;
    std::vector<int> idx(n, 0);
    FeedbackPolicy pol{std::vector<double>(n, 0.0)};
    while (true) {
      for (int k = 0; k < n; ++k) pol.p[k] = static_cast<double>(idx[k]) / (g - 1);
      const double fx = safe_rate(ch, pol);
      ++evals;
      if (fx > coarse_fx) {
        coarse_fx = fx;
        coarse_best = pol.p;
      }
      int k = 0;
      while (k < n && ++idx[k] == g) idx[k++] = 0;
      if (k == n) break;
    }
  } else {
    // Seeded Latin hypercube: one stratum per sample per axis, independently
    // permuted, so every axis is swept evenly at any sample count.
    SplitMix64 rng(opt.lhs_seed);
    const int s = opt.lhs_samples;
    std::vector<std::vector<double>> coords(n, std::vector<double>(s));
    for (int k = 0; k < n; ++k) {
      std::vector<int> perm(s);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = s - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[i], perm[j]);
      }
      for (int i = 0; i < s; ++i) {
        coords[k][i] = (perm[i] + rng.next_double()) / s;
      }
    }
    FeedbackPolicy pol{std::vector<double>(n, 0.0)};
    for (int i = 0; i < s; ++i) {
      for (int k = 0; k < n; ++k) pol.p[k] = coords[k][i];
      const double fx = safe_rate(ch, pol);
      ++evals;
      if (fx > coarse_fx) {
        coarse_fx = fx;
        coarse_best = pol.p;
      }
    }
  }

  // Polish from the best coarse point and from the best state-independent
  // policy; feedback can only improve on the latter, and the two starts
  // guard each other against a bad basin.
  const CapacityResult iid = capacity_iid(ch, opt);
  evals += iid.iterations;

  AscentResult a = coordinate_ascent(ch, coarse_best, opt);
  AscentResult b = coordinate_ascent(ch, iid.argmax.p, opt);
  evals += a.evals + b.evals;
  const AscentResult& best = (a.value >= b.value) ? a : b;

  if (!(best.value > kNegInf)) {
    throw IrreducibilityError(
        "no feasible feedback policy: every probed policy left the chain "
        "disconnected");
  }

  CapacityResult out;
  out.capacity = std::max(best.value, 0.0);
  out.argmax = FeedbackPolicy{best.p};
  out.iterations = evals;
  out.converged = a.converged && b.converged;
  out.final_step = best.last_gain;
  return out;
}

ScalingReport verify_linear_scaling(const ReceptorKinetics& kin, int n_max,
                                    const CapacityOptions& opt) {
  if (n_max < 1) throw ValidationError("scaling check needs n_max >= 1");

  ScalingReport rep;
  rep.rows.reserve(static_cast<size_t>(n_max));
  double c1 = 0.0;
  double p1 = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const BirthDeathChannel ch = build_independent_channel(n, kin);
    const CapacityResult r = capacity_iid(ch, opt);
    ScalingRow row;
    row.n = n;
    row.capacity = r.capacity;
    row.p_star = r.p_star.value_or(0.0);
    if (n == 1) {
      c1 = r.capacity;
      p1 = row.p_star;
    }
    row.ratio = (c1 > 0.0) ? r.capacity / (n * c1) : 1.0;
    rep.rows.push_back(row);
    rep.max_ratio_error = std::max(rep.max_ratio_error, std::abs(row.ratio - 1.0));
    rep.max_p_star_spread =
        std::max(rep.max_p_star_spread, std::abs(row.p_star - p1));
  }

  if (rep.max_ratio_error > 1e-10 || rep.max_p_star_spread > 1e-9) {
    std::ostringstream msg;
    msg << "capacity of independent receptors failed to scale linearly: "
        << "max |C(n)/(n C(1)) - 1| = " << rep.max_ratio_error
        << ", max argmax spread = " << rep.max_p_star_spread;
    throw ConsistencyError(msg.str());
  }
  return rep;
}

}  // namespace bindcap

#pragma once

#include <functional>

namespace bindcap {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  long iterations = 0;
  double final_width = 0.0;
};

/// Derivative-free maximization of f on [lo, hi] by golden-section shrinking
/// until the bracket is narrower than xtol. Assumes f is unimodal on the
/// bracket; with a multimodal f it returns some local maximum.
GoldenResult golden_section_maximize(const std::function<double(double)>& f,
                                     double lo, double hi, double xtol);

struct ScanResult {
  double best_x = 0.0;
  double best_fx = 0.0;
  double lo = 0.0;   // bracket around the best grid point
  double hi = 0.0;
};

/// Evaluates f on a uniform grid of `points` samples of [lo, hi] and returns
/// the best sample together with the one-cell bracket around it.
ScanResult scan_maximize(const std::function<double(double)>& f, double lo,
                         double hi, int points);

}  // namespace bindcap

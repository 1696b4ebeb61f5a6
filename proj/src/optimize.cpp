#include "bindcap/optimize.hpp"

#include <cmath>
#include <sstream>

#include "bindcap/errors.hpp"

namespace bindcap {

GoldenResult golden_section_maximize(const std::function<double(double)>& f,
                                     double lo, double hi, double xtol) {
  if (!(lo < hi) || !(xtol > 0.0)) {
    std::ostringstream msg;
    msg << "golden section needs lo < hi and xtol > 0, got [" << lo << ", "
        << hi << "], xtol = " << xtol;
    throw ValidationError(msg.str());
  }
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  long iters = 0;
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++iters;
  }

  GoldenResult out;
  out.x = 0.5 * (a + b);
  out.fx = f(out.x);
  out.iterations = iters;
  out.final_width = b - a;
  // The midpoint is the reported argmax, but one of the interior probes may
  // still hold the better value; never return a worse point than we probed.
  if (fc > out.fx && c >= a && c <= b) {
    out.x = c;
    out.fx = fc;
  }
  if (fd > out.fx && d >= a && d <= b) {
    out.x = d;
    out.fx = fd;
  }
  return out;
}

ScanResult scan_maximize(const std::function<double(double)>& f, double lo,
                         double hi, int points) {
  if (!(lo < hi) || points < 2) {
    std::ostringstream msg;
    msg << "scan needs lo < hi and at least 2 points, got [" << lo << ", "
        << hi << "], points = " << points;
    throw ValidationError(msg.str());
  }
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_fx = f(lo);
  for (int i = 1; i < points; ++i) {
    const double x = (i == points - 1) ? hi : lo + i * step;
    const double fx = f(x);
    if (fx > best_fx) {
      best = i;
      best_fx = fx;
    }
  }
  ScanResult out;
  out.best_x = (best == points - 1) ? hi : lo + best * step;
  out.best_fx = best_fx;
  out.lo = (best == 0) ? lo : lo + (best - 1) * step;
  out.hi = (best == points - 1) ? hi : lo + (best + 1) * step;
  return out;
}

}  // namespace bindcap

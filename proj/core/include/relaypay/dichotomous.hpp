#pragma once

#include <cmath>

namespace relaypay {

struct SearchResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Derivative-free dichotomous search for the minimizer of a unimodal
/// function on [lo, hi]. Each round probes mid -/+ tau * width and keeps the
/// side that holds the smaller probe; equal probes shrink both ends. The
/// bracket width shrinks by a factor (0.5 + tau) or better per round.
template <class F>
SearchResult dichotomous_search(F&& f, double lo, double hi, double delta, double tau,
                                int max_iterations) {
  SearchResult r;
  double width = hi - lo;
  while (width > delta && r.iterations < max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double a = mid - tau * width;
    const double b = mid + tau * width;
    const double fa = f(a);
    const double fb = f(b);
    if (fa < fb) {
      hi = b;
    } else if (fa > fb) {
      lo = a;
    } else {
      lo = a;
      hi = b;
    }
    width = hi - lo;
    ++r.iterations;
  }
  r.x = 0.5 * (lo + hi);
  r.fx = f(r.x);
  return r;
}

/// Rounds needed to shrink `width` below `delta`, plus a small margin.
inline int dichotomous_iteration_cap(double width, double delta, double tau) {
  if (!(width > delta) || !(delta > 0.0)) return 1;
  return static_cast<int>(std::ceil(std::log(width / delta) / std::log(1.0 / (0.5 + tau)))) + 4;
}

}  // namespace relaypay

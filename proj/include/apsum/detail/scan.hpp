#pragma once

#include <algorithm>
#include <functional>

namespace apsum::detail {

struct ScanMax {
  double arg = 0.0;
  double value = 0.0;
};

// Maximum of g over [a, b]: coarse scan on samples+1 equispaced points,
// then repeated local grid zooms around the best bracket. Ties resolve to
// the leftmost point, so the result is deterministic.
template <class F>
ScanMax scan_max(F&& g, double a, double b, int samples, int zoom_passes = 3,
                 int zoom_samples = 32) {
  samples = std::max(samples, 2);
  ScanMax best{a, g(a)};
  double lo = a, hi = b, step = (b - a) / samples;
  int best_i = 0;
  for (int i = 1; i <= samples; ++i) {
    const double x = (i == samples) ? b : a + step * i;
    const double v = g(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  lo = a + step * std::max(0, best_i - 1);
  hi = std::min(b, a + step * (best_i + 1));
  for (int pass = 0; pass < zoom_passes; ++pass) {
    const double h = (hi - lo) / zoom_samples;
    if (h <= 0.0) break;
    int local_best = -1;
    for (int i = 0; i <= zoom_samples; ++i) {
      const double x = (i == zoom_samples) ? hi : lo + h * i;
      const double v = g(x);
      if (v > best.value) {
        best = {x, v};
        local_best = i;
      }
    }
    const double center = (local_best >= 0) ? lo + h * local_best : best.arg;
    const double half = (hi - lo) / zoom_samples;
    lo = std::max(a, center - half);
    hi = std::min(b, center + half);
  }
  return best;
}

}  // namespace apsum::detail

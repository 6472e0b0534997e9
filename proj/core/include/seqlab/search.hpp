#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace seqlab {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  // (x, f(x)) pairs of the coarse scan, kept for diagnostics.
  std::vector<std::pair<double, double>> scan;
};

// Golden-section search on [lo, hi]; stops when the bracket is narrower than
// abs_tol.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo,
                             double hi, double abs_tol = 1e-10);

// Minimises f over [lo, hi] (0 < lo < hi) in log coordinates: a log-spaced scan
// of `grid_points` values locates the best cell, then golden section refines it
// to relative argument tolerance rel_tol. Throws BracketFailure, listing the
// scanned grid, if the scan minimum sits at `lo`.
ScalarMinimum minimize_log_scale(const std::function<double(double)>& f,
                                 double lo, double hi,
                                 std::size_t grid_points = 64,
                                 double rel_tol = 1e-6);

}  // namespace seqlab

#include "seqlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqlab/error.hpp"

namespace seqlab {
namespace {
constexpr double kInvPhi = 0.6180339887498948482;
}

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo,
                             double hi, double abs_tol) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 500 && (b - a) > abs_tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  ScalarMinimum m;
  if (f1 <= f2) {
    m.argmin = x1;
    m.value = f1;
  } else {
    m.argmin = x2;
    m.value = f2;
  }
  return m;
}

ScalarMinimum minimize_log_scale(const std::function<double(double)>& f,
                                 double lo, double hi, std::size_t grid_points,
                                 double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo) || grid_points < 3)
    throw InvalidConfig("minimize: need 0 < lo < hi and at least 3 grid points");
  const double llo = std::log(lo), lhi = std::log(hi);
  std::vector<std::pair<double, double>> scan(grid_points);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double t = double(i) / double(grid_points - 1);
    const double x = i + 1 == grid_points ? hi : std::exp(llo + t * (lhi - llo));
    scan[i] = {x, f(x)};
    if (scan[i].second < scan[best].second) best = i;
  }
  if (!std::isfinite(scan[best].second)) {
    std::ostringstream os;
    os << "minimize: no finite objective value on [" << lo << ", " << hi << "]";
    throw BracketFailure(os.str());
  }
  if (best == 0) {
    std::ostringstream os;
    os << "minimize: scan minimum at the lower bracket end " << lo
       << "; scanned grid:";
    for (const auto& [x, v] : scan) os << " (" << x << ", " << v << ")";
    throw BracketFailure(os.str());
  }
  const double cell_lo = std::log(scan[best - 1].first);
  const double cell_hi = std::log(scan[std::min(best + 1, grid_points - 1)].first);

  const auto in_log = [&](double u) { return f(std::exp(u)); };
  ScalarMinimum refined = golden_section(in_log, cell_lo, cell_hi, rel_tol);
  ScalarMinimum out;
  out.scan = std::move(scan);
  // The scan may already hold the best value (flat objective, endpoint).
  if (out.scan[best].second <= refined.value) {
    out.argmin = out.scan[best].first;
    out.value = out.scan[best].second;
  } else {
    out.argmin = std::exp(refined.argmin);
    out.value = refined.value;
  }
  return out;
}

}  // namespace seqlab

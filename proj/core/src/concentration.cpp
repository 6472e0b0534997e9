#include "seqlab/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

DiagonalQuadraticForm::DiagonalQuadraticForm(std::vector<double> diag)
    : diag_(std::move(diag)) {
  bool any_positive = false;
  for (double d : diag_) {
    if (!(d >= 0.0) || !std::isfinite(d))
      throw InvalidConfig("quadratic form: entries must be finite and >= 0");
    any_positive = any_positive || d > 0.0;
    trace_ += d;
    trace_sq_ += d * d;
    norm_ = std::max(norm_, d);
  }
  if (!any_positive)
    throw InvalidConfig("quadratic form: need at least one positive entry");
}

DiagonalQuadraticForm DiagonalQuadraticForm::identity(std::size_t dim) {
  return DiagonalQuadraticForm(std::vector<double>(dim, 1.0));
}

double quad_form_tail_threshold(const DiagonalQuadraticForm& q, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw InvalidConfig("tail threshold: t must be finite and >= 0");
  return q.trace() + 2.0 * std::sqrt(q.trace_sq() * t) +
         2.0 * q.spectral_norm() * t;
}

TailCheck mc_tail_check(const DiagonalQuadraticForm& q, double t,
                        std::size_t reps, std::uint64_t seed) {
  if (reps < 10000) throw InvalidConfig("tail check: reps must be >= 10^4");
  TailCheck out;
  out.threshold = quad_form_tail_threshold(q, t);
  out.reps = reps;
  const auto& d = q.diag();
  for (std::size_t r = 0; r < reps; ++r) {
    const GaussianStream xi(seed, stream_domain::quadratic_form | r);
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double z = xi(i);
      s += d[i] * z * z;
    }
    if (s > out.threshold) ++out.exceedances;
  }
  out.empirical_prob =
      static_cast<double>(out.exceedances) / static_cast<double>(reps);
  out.bound = std::exp(-t);
  out.slack = 3.0 * std::sqrt(out.bound / static_cast<double>(reps));
  out.pass = out.empirical_prob <= out.bound + out.slack;
  return out;
}

}  // namespace seqlab

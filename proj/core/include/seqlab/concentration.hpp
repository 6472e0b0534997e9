#pragma once

// Upper tail of a Gaussian quadratic form ||A xi||^2 with Sigma = A^T A
// diagonal:
//   P(||A xi||^2 > tr Sigma + 2 sqrt(tr Sigma^2 t) + 2 ||Sigma|| t) <= exp(-t).

#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqlab {

class DiagonalQuadraticForm {
 public:
  // Entries must be finite and >= 0 with at least one positive.
  explicit DiagonalQuadraticForm(std::vector<double> diag);

  static DiagonalQuadraticForm identity(std::size_t dim);

  const std::vector<double>& diag() const noexcept { return diag_; }
  std::size_t dim() const noexcept { return diag_.size(); }
  double trace() const noexcept { return trace_; }
  double trace_sq() const noexcept { return trace_sq_; }
  double spectral_norm() const noexcept { return norm_; }

 private:
  std::vector<double> diag_;
  double trace_ = 0.0;
  double trace_sq_ = 0.0;
  double norm_ = 0.0;
};

double quad_form_tail_threshold(const DiagonalQuadraticForm& q, double t);

struct TailCheck {
  double threshold = 0.0;
  std::size_t exceedances = 0;
  std::size_t reps = 0;
  double empirical_prob = 0.0;
  double bound = 0.0;  // exp(-t)
  double slack = 0.0;  // 3 sqrt(exp(-t) / reps)
  bool pass = false;
};

// Counts draws of sum diag_i xi_i^2 above the threshold; pass iff the
// exceedance frequency is at most exp(-t) + 3 sqrt(exp(-t) / reps).
// Requires reps >= 10^4.
TailCheck mc_tail_check(const DiagonalQuadraticForm& q, double t,
                        std::size_t reps, std::uint64_t seed);

}  // namespace seqlab

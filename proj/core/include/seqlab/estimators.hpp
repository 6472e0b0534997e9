#pragma once

// Diagonal linear filters x_hat_j = lambda_j y_j.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seqlab/geometry.hpp"
#include "seqlab/model.hpp"

namespace seqlab {

enum class WeightFamily { minimax, asymptotic, pinsker, custom };

const char* to_string(WeightFamily f) noexcept;

struct DiagonalWeights {
  Vector lambda;
  WeightFamily family = WeightFamily::custom;
  // Set for the pinsker family.
  std::optional<double> mu;
  std::optional<double> beta;
  // Non-fatal diagnostics, e.g. a failed monotonicity assumption.
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return lambda.size(); }
  double operator[](std::size_t i) const { return lambda[i]; }

  static DiagonalWeights custom(Vector lambda);
};

// Exact linear minimax filter over B(a, P0):
//   lambda_j = P0 (a_j - a_{j+1}) / (P0 (a_j - a_{j+1}) + eps^2 sigma_j^2).
// Throws InvalidConfig when eps <= 0 or some sigma_j == 0. A failed a2 check
// only attaches a warning; the formula is still well defined.
DiagonalWeights minimax_weights(const Ball& ball, const NoiseProfile& sigma,
                                double eps, std::size_t n);

// Power-law version with 2 alpha P0 j^(-2 alpha - 1) in place of the exact
// boundary energies.
DiagonalWeights asymptotic_weights(double alpha, double p0,
                                   const NoiseProfile& sigma, double eps,
                                   std::size_t n);

struct PinskerConfig {
  double beta = 1.0;
  double radius = 1.0;  // P
  double eps = 1.0;
  std::size_t n = 1;

  void validate() const;
};

// eps^2 sum_{j<=n} b_j^2 ((mu b_j)^-1 - 1)_+ with b_j = j^beta.
double pinsker_capacity(const PinskerConfig& cfg, double mu);

// Root of pinsker_capacity(mu) == P by bisection on [1/b_n, 1/b_1]. Throws
// TruncationInsufficient when the capacity at mu = 1/b_n is still below P.
double pinsker_mu(const PinskerConfig& cfg);

// lambda_j = max(0, 1 - mu j^beta).
DiagonalWeights pinsker_weights(double beta, double mu, std::size_t n);

// Coordinatewise lambda_j y_j; the shorter operand is zero-padded.
Vector apply_weights(const DiagonalWeights& w, std::span<const double> y);

// P0^-1 sum (a_j - a_{j+1})^-1 sigma_j^2 x_j^2
struct BallPenalty {};
// (2 alpha P0)^-1 sum j^(1 + 2 alpha) sigma_j^2 x_j^2
struct PowerLawPenalty {
  double alpha;
};
using PenaltyForm = std::variant<BallPenalty, PowerLawPenalty>;

// Quadratic penalty whose penalised least-squares minimiser is the matching
// filter above. Throws InvalidSequence naming j if a_j == a_{j+1}.
double quadratic_penalty(std::span<const double> x, const Ball& ball,
                         const NoiseProfile& sigma, const PenaltyForm& form);

}  // namespace seqlab

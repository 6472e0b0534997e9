#pragma once

// Gaussian sequence model y_j = x_j + eps * sigma_j * xi_j, j = 1..n.
//
// Sequences are stored 0-based: element [j - 1] holds coordinate j. Every
// public function that takes an index takes the 1-based coordinate index.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace seqlab {

using Vector = std::vector<double>;

class DecaySequence;

class NoiseProfile {
 public:
  enum class Kind { constant, power, table };

  static NoiseProfile constant(double sigma0);
  // sigma_j = c * j^p
  static NoiseProfile power(double c, double p);
  // Entries must be finite and nonnegative; zero entries are accepted so that
  // validate_assumptions can report them.
  static NoiseProfile table(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double operator()(std::size_t j) const;
  Vector materialize(std::size_t n) const;
  // Largest index that can be evaluated; empty for formula kinds.
  std::optional<std::size_t> n_max() const noexcept;

  double c() const noexcept { return c_; }
  double p() const noexcept { return p_; }
  const Vector& values() const noexcept { return values_; }

 private:
  NoiseProfile() = default;

  Kind kind_ = Kind::constant;
  double c_ = 1.0;
  double p_ = 0.0;
  Vector values_;
};

struct SequenceModelConfig {
  double epsilon = 1.0;
  NoiseProfile noise = NoiseProfile::constant(1.0);
  std::size_t n = 1;

  // Throws InvalidConfig.
  void validate() const;
};

// y_j = x_j + eps sigma_j xi_j for j = 1..cfg.n with xi_j drawn from
// GaussianStream(seed, stream); x is zero-padded to length n.
Vector sample_observation(std::span<const double> x,
                          const SequenceModelConfig& cfg, std::uint64_t seed,
                          std::uint64_t stream = 0);

// Singular values r_j of a diagonalised operator.
class OperatorSpectrum {
 public:
  enum class Kind { power, exponential, table };

  // |r_j| = c * j^-gamma
  static OperatorSpectrum power(double c, double gamma);
  // |r_j| = c * j^-kappa * exp(-b * j^gamma)
  static OperatorSpectrum exponential(double c, double kappa, double b,
                                      double gamma);
  static OperatorSpectrum table(std::vector<double> values);

  // Optional sign pattern, cycled if shorter than the materialised range.
  OperatorSpectrum with_signs(std::vector<int> signs) const;

  Kind kind() const noexcept { return kind_; }
  double operator()(std::size_t j) const;

  double c() const noexcept { return c_; }
  double gamma() const noexcept { return gamma_; }
  double kappa() const noexcept { return kappa_; }
  double b() const noexcept { return b_; }

 private:
  OperatorSpectrum() = default;

  Kind kind_ = Kind::power;
  double c_ = 1.0;
  double gamma_ = 0.0;
  double kappa_ = 0.0;
  double b_ = 0.0;
  Vector values_;
  std::vector<int> signs_;
};

struct DirectModel {
  Vector y;
  NoiseProfile noise;
};

// z_j = r_j x_j + eps sigma_j xi_j  ->  y_j = z_j / r_j with noise sigma_j/|r_j|.
// Throws SingularSpectrum naming the first j <= cfg.n with r_j == 0.
DirectModel to_direct_model(std::span<const double> z,
                            const OperatorSpectrum& spectrum,
                            const SequenceModelConfig& cfg);

struct AssumptionReport {
  struct LowerBound {
    bool pass = false;
    double witness = 0.0;  // min_{j<=n} sigma_j^2
    std::size_t index = 0;  // where the minimum is attained
  };
  struct Monotone {
    bool pass = false;
    std::optional<std::size_t> first_violation;
  };

  LowerBound a1;
  Monotone a2;
  Monotone b1;
};

// a1: min sigma_j^2 > 0 over j <= n.
// a2: sigma_j^2 (a_{j-1} - a_j) > sigma_{j-1}^2 (a_j - a_{j+1}), 2 <= j <= n.
// b1: sigma_j^2 j^(2 alpha + 1) strictly increasing for j0 < j <= n.
AssumptionReport validate_assumptions(const DecaySequence& a,
                                      const NoiseProfile& sigma, double alpha,
                                      std::size_t n, std::size_t j0);

}  // namespace seqlab

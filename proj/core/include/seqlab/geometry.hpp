#pragma once

// The ball B(a, P0) = { x : sup_k a_k^-1 sum_{j>=k} x_j^2 <= P0 } and the
// Sobolev ellipsoid { x : sum j^(2 beta) x_j^2 <= P }.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "seqlab/model.hpp"

namespace seqlab {

class DecaySequence {
 public:
  enum class Kind { power, table };

  // a_k = k^(-2 alpha)
  static DecaySequence power(double alpha);
  // Must be positive and strictly decreasing; throws InvalidSequence.
  static DecaySequence table(std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double operator()(std::size_t k) const;
  Vector materialize(std::size_t n) const;
  std::optional<std::size_t> n_max() const noexcept;
  // Smoothness index of the power kind.
  std::optional<double> alpha() const noexcept;

 private:
  DecaySequence() = default;

  Kind kind_ = Kind::power;
  double alpha_ = 1.0;
  Vector values_;
};

class Ball {
 public:
  Ball(DecaySequence a, double p0);

  const DecaySequence& decay() const noexcept { return a_; }
  double p0() const noexcept { return p0_; }

  // P0 (a_j - a_{j+1}), j = 1..n: the least favourable coordinate energies.
  Vector boundary_energies(std::size_t n) const;

 private:
  DecaySequence a_;
  double p0_;
};

struct SobolevEllipsoid {
  double beta;
  std::optional<double> radius;  // empty for the whole space S^beta

  bool contains(std::span<const double> x) const;
};

inline constexpr double kMembershipSlack = 1e-12;

// max_{k <= len(x)} a_k^-1 sum_{j >= k} x_j^2, one backward pass.
double tail_ratio_norm(std::span<const double> x, const DecaySequence& a);

bool is_member(std::span<const double> x, const Ball& ball);

// theta_j = +sqrt(P0 (a_j - a_{j+1})), j = 1..n.
Vector worst_case_signal(const Ball& ball, std::size_t n);

double sobolev_norm_sq(std::span<const double> x, double beta);

// Random member with tail_ratio_norm == t * P0. The direction is a vector of
// independent standard normals; exact scaling uses degree-2 homogeneity.
Vector sample_ball_member(const Ball& ball, std::size_t n, std::uint64_t seed,
                          double t);

}  // namespace seqlab

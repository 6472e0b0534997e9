#include "seqlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqlab/error.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

DecaySequence DecaySequence::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidConfig("decay: alpha must be positive");
  DecaySequence a;
  a.kind_ = Kind::power;
  a.alpha_ = alpha;
  return a;
}

DecaySequence DecaySequence::table(std::vector<double> values) {
  if (values.empty()) throw InvalidSequence("decay: empty table");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw InvalidSequence("decay: a_" + std::to_string(i + 1) +
                            " must be positive and finite");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw InvalidSequence("decay: sequence not strictly decreasing at index " +
                            std::to_string(i + 1));
  }
  DecaySequence a;
  a.kind_ = Kind::table;
  a.values_ = std::move(values);
  return a;
}

double DecaySequence::operator()(std::size_t k) const {
  if (kind_ == Kind::power)
    return std::pow(static_cast<double>(k), -2.0 * alpha_);
  if (k == 0 || k > values_.size())
    throw InvalidSequence("decay: table has " + std::to_string(values_.size()) +
                          " entries, index " + std::to_string(k) +
                          " requested");
  return values_[k - 1];
}

Vector DecaySequence::materialize(std::size_t n) const {
  Vector out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = (*this)(k);
  return out;
}

std::optional<std::size_t> DecaySequence::n_max() const noexcept {
  if (kind_ == Kind::table) return values_.size();
  return std::nullopt;
}

std::optional<double> DecaySequence::alpha() const noexcept {
  if (kind_ == Kind::power) return alpha_;
  return std::nullopt;
}

Ball::Ball(DecaySequence a, double p0) : a_(std::move(a)), p0_(p0) {
  if (!(p0 > 0.0) || !std::isfinite(p0))
    throw InvalidConfig("ball: p0 must be positive and finite");
}

Vector Ball::boundary_energies(std::size_t n) const {
  const Vector a = a_.materialize(n + 1);
  Vector e(n);
  for (std::size_t j = 0; j < n; ++j) e[j] = p0_ * (a[j] - a[j + 1]);
  return e;
}

bool SobolevEllipsoid::contains(std::span<const double> x) const {
  const double s = sobolev_norm_sq(x, beta);
  return radius ? s <= *radius * (1.0 + kMembershipSlack) : std::isfinite(s);
}

double tail_ratio_norm(std::span<const double> x, const DecaySequence& a) {
  double tail = 0.0;
  double best = 0.0;
  for (std::size_t k = x.size(); k >= 1; --k) {
    tail += x[k - 1] * x[k - 1];
    best = std::max(best, tail / a(k));
  }
  return best;
}

bool is_member(std::span<const double> x, const Ball& ball) {
  return tail_ratio_norm(x, ball.decay()) <=
         ball.p0() * (1.0 + kMembershipSlack);
}

Vector worst_case_signal(const Ball& ball, std::size_t n) {
  Vector theta = ball.boundary_energies(n);
  for (double& t : theta) t = std::sqrt(t);
  return theta;
}

double sobolev_norm_sq(std::span<const double> x, double beta) {
  if (!(beta > 0.0)) throw InvalidConfig("sobolev: beta must be positive");
  double s = 0.0;
  for (std::size_t j = 1; j <= x.size(); ++j)
    s += std::pow(static_cast<double>(j), 2.0 * beta) * x[j - 1] * x[j - 1];
  return s;
}

Vector sample_ball_member(const Ball& ball, std::size_t n, std::uint64_t seed,
                          double t) {
  if (n == 0) throw InvalidConfig("ball sampler: n must be at least 1");
  if (!(t >= 0.0 && t <= 1.0))
    throw InvalidConfig("ball sampler: t must lie in [0, 1]");
  Vector x(n, 0.0);
  if (t == 0.0) return x;
  for (std::uint64_t sub = 0;; ++sub) {
    const GaussianStream g(seed, stream_domain::ball_sampler | sub);
    for (std::size_t j = 0; j < n; ++j) x[j] = g(j);
    const double norm = tail_ratio_norm(x, ball.decay());
    if (norm > 0.0) {
      const double scale = std::sqrt(t * ball.p0() / norm);
      for (double& v : x) v *= scale;
      return x;
    }
  }
}

}  // namespace seqlab

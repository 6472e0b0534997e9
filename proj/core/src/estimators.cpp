#include "seqlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqlab/error.hpp"

namespace seqlab {

const char* to_string(WeightFamily f) noexcept {
  switch (f) {
    case WeightFamily::minimax:
      return "minimax";
    case WeightFamily::asymptotic:
      return "asymptotic";
    case WeightFamily::pinsker:
      return "pinsker";
    case WeightFamily::custom:
      return "custom";
  }
  return "custom";
}

DiagonalWeights DiagonalWeights::custom(Vector lambda) {
  DiagonalWeights w;
  w.lambda = std::move(lambda);
  w.family = WeightFamily::custom;
  return w;
}

namespace {

void require_positive_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidConfig("weights: epsilon must be positive and finite");
}

}  // namespace

DiagonalWeights minimax_weights(const Ball& ball, const NoiseProfile& sigma,
                                double eps, std::size_t n) {
  require_positive_eps(eps);
  if (n == 0) throw InvalidConfig("weights: n must be at least 1");

  DiagonalWeights w;
  w.family = WeightFamily::minimax;
  if (n >= 2) {
    const auto rep = validate_assumptions(ball.decay(), sigma, 0.0, n, n);
    if (!rep.a1.pass)
      throw InvalidConfig("weights: sigma_" + std::to_string(rep.a1.index) +
                          " is zero, noise lower bound fails");
    if (!rep.a2.pass)
      w.warnings.push_back(
          "monotonicity of sigma_j^2 (a_{j-1} - a_j) fails at j = " +
          std::to_string(*rep.a2.first_violation) +
          "; the filter is no longer guaranteed linear minimax");
  } else if (!(sigma(1) > 0.0)) {
    throw InvalidConfig("weights: sigma_1 is zero, noise lower bound fails");
  }

  const Vector energy = ball.boundary_energies(n);
  const double e2 = eps * eps;
  w.lambda.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = sigma(j);
    w.lambda[j - 1] = energy[j - 1] / (energy[j - 1] + e2 * s * s);
  }
  return w;
}

DiagonalWeights asymptotic_weights(double alpha, double p0,
                                   const NoiseProfile& sigma, double eps,
                                   std::size_t n) {
  require_positive_eps(eps);
  if (!(alpha > 0.0)) throw InvalidConfig("weights: alpha must be positive");
  if (!(p0 > 0.0)) throw InvalidConfig("weights: p0 must be positive");
  DiagonalWeights w;
  w.family = WeightFamily::asymptotic;
  w.lambda.resize(n);
  const double e2 = eps * eps;
  for (std::size_t j = 1; j <= n; ++j) {
    const double prior =
        2.0 * alpha * p0 * std::pow(static_cast<double>(j), -2.0 * alpha - 1.0);
    const double s = sigma(j);
    w.lambda[j - 1] = prior / (prior + e2 * s * s);
  }
  return w;
}

void PinskerConfig::validate() const {
  if (!(beta > 0.0) || !(radius > 0.0) || !(eps > 0.0) || n == 0)
    throw InvalidConfig("pinsker: beta, P, eps and n must all be positive");
}

double pinsker_capacity(const PinskerConfig& cfg, double mu) {
  double s = 0.0;
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    const double b = std::pow(static_cast<double>(j), cfg.beta);
    if (mu * b >= 1.0) break;  // b_j increasing: the rest are inactive too
    s += b / mu - b * b;
  }
  return cfg.eps * cfg.eps * s;
}

double pinsker_mu(const PinskerConfig& cfg) {
  cfg.validate();
  const double target = cfg.radius;
  double lo = std::pow(static_cast<double>(cfg.n), -cfg.beta);  // 1/b_n
  double hi = 1.0;                                               // 1/b_1
  const double at_lo = pinsker_capacity(cfg, lo);
  if (at_lo < target)
    throw TruncationInsufficient(
        "pinsker: capacity " + std::to_string(at_lo) + " at mu = 1/b_n is below P = " +
        std::to_string(target) + "; increase n");
  // capacity(hi) == 0 < target, and capacity is strictly decreasing on [lo, hi).
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pinsker_capacity(cfg, mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

DiagonalWeights pinsker_weights(double beta, double mu, std::size_t n) {
  if (!(mu >= 0.0)) throw InvalidConfig("pinsker: mu must be nonnegative");
  if (!(beta > 0.0)) throw InvalidConfig("pinsker: beta must be positive");
  DiagonalWeights w;
  w.family = WeightFamily::pinsker;
  w.mu = mu;
  w.beta = beta;
  w.lambda.resize(n);
  for (std::size_t j = 1; j <= n; ++j)
    w.lambda[j - 1] =
        std::max(0.0, 1.0 - mu * std::pow(static_cast<double>(j), beta));
  return w;
}

Vector apply_weights(const DiagonalWeights& w, std::span<const double> y) {
  Vector out(std::max(w.size(), y.size()), 0.0);
  const std::size_t m = std::min(w.size(), y.size());
  for (std::size_t i = 0; i < m; ++i) out[i] = w.lambda[i] * y[i];
  return out;
}

double quadratic_penalty(std::span<const double> x, const Ball& ball,
                         const NoiseProfile& sigma, const PenaltyForm& form) {
  const std::size_t n = x.size();
  double s = 0.0;
  if (std::holds_alternative<BallPenalty>(form)) {
    const Vector a = ball.decay().materialize(n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
      const double gap = a[j - 1] - a[j];
      if (!(gap > 0.0))
        throw InvalidSequence("penalty: a_" + std::to_string(j) + " == a_" +
                              std::to_string(j + 1) + ", division by zero");
      const double sj = sigma(j);
      s += sj * sj * x[j - 1] * x[j - 1] / gap;
    }
    return s / ball.p0();
  }
  const double alpha = std::get<PowerLawPenalty>(form).alpha;
  if (!(alpha > 0.0)) throw InvalidConfig("penalty: alpha must be positive");
  for (std::size_t j = 1; j <= n; ++j) {
    const double sj = sigma(j);
    s += std::pow(static_cast<double>(j), 1.0 + 2.0 * alpha) * sj * sj *
         x[j - 1] * x[j - 1];
  }
  return s / (2.0 * alpha * ball.p0());
}

}  // namespace seqlab

#pragma once

// Risk of diagonal filters: exact, worst case over B(a, P0) by an exact linear
// program, closed-form minimax values, Monte Carlo, and rate diagnostics.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seqlab/estimators.hpp"
#include "seqlab/geometry.hpp"
#include "seqlab/model.hpp"

namespace seqlab {

enum class RiskMethod { exact, lp, mc, formula };

const char* to_string(RiskMethod m) noexcept;

struct RiskReport {
  double value = 0.0;
  double variance_term = 0.0;  // eps^2 sum lambda_j^2 sigma_j^2
  double bias_term = 0.0;
  std::size_t n = 0;
  // Bound on what the coordinates beyond n can change in `value`.
  double tail_bound = 0.0;
  RiskMethod method = RiskMethod::exact;
  std::optional<std::size_t> reps;
  std::optional<double> standard_error;
};

// E ||x_hat - x||^2 = eps^2 sum lambda_j^2 sigma_j^2 + sum (1 - lambda_j)^2 x_j^2
// over j <= max(len w, len x); weights missing past len w are zero.
RiskReport exact_risk(const DiagonalWeights& w, std::span<const double> x,
                      const NoiseProfile& sigma, double eps);

// Bayes risk of independent N(0, theta_j^2) coordinates:
//   eps^2 sum theta_j^2 sigma_j^2 / (theta_j^2 + eps^2 sigma_j^2).
double bayes_gaussian_risk(std::span<const double> theta_sq,
                           const NoiseProfile& sigma, double eps);

// Minimax linear risk over B(a, P0) truncated at n; tail_bound = P0 a_{n+1}.
RiskReport minimax_linear_risk(const Ball& ball, const NoiseProfile& sigma,
                               double eps, std::size_t n);

// Power-law analogue with boundary energies 2 alpha P0 j^(-2 alpha - 1);
// tail_bound = P0 n^(-2 alpha).
RiskReport asymptotic_minimax_risk(double alpha, double p0,
                                   const NoiseProfile& sigma, double eps,
                                   std::size_t n);

struct NestedTailSolution {
  double value = 0.0;
  Vector v;
};

// Exact solution of
//   maximise  sum_j c_j v_j
//   s.t.      v_j >= 0,  sum_{j=k}^{n} v_j <= b_k  (k = 1..n),  b_k >= 0.
// With tail sums T_k the feasible set is a chain 0 <= T_n <= ... <= T_1 and
// T_k <= b_k. Slicing the objective by level t, the slice (b_{m+1}, b_m] can be
// charged to any index j <= m, so the optimum charges it to the prefix argmax
// of c. Ties go to the largest index. O(n).
NestedTailSolution solve_nested_tail_program(std::span<const double> c,
                                             std::span<const double> b);

struct SupRisk {
  RiskReport report;
  Vector maximizer;  // x_j = sqrt(v_j)
};

// Worst-case risk of w over B(a, P0) restricted to j <= n. The omitted tail
// j > n is held at its boundary energy P0 a_{n+1}, so the head constraint is
// sum_{j=k}^{n} x_j^2 <= P0 (a_k - a_{n+1}); the worst-case signal then
// saturates every constraint. tail_bound = P0 a_{n+1}.
SupRisk sup_risk_over_ball(const DiagonalWeights& w, const Ball& ball,
                           const NoiseProfile& sigma, double eps,
                           std::size_t n);

struct PinskerRisk {
  double value = 0.0;
  double mu = 0.0;
  RiskReport report;
  std::vector<std::pair<double, double>> scan;
};

// inf over mu of the worst-case risk of pinsker_weights(beta, mu, n) on the
// ball, with sigma == 1. Golden section over log mu on
// [0.01 n^-beta, 1] after a coarse scan.
PinskerRisk pinsker_minimax_risk(double beta, const Ball& ball, double eps,
                                 std::size_t n);

enum class Smoothness { pinsker_smoother, pinsker_rougher, matched };

struct PinskerAsymptote {
  double value = 0.0;
  double constant = 0.0;      // value / (eps^exponent * |2 ln eps|^log_power)
  double eps_exponent = 0.0;
  double log_power = 0.0;
  Smoothness regime = Smoothness::matched;
  std::optional<double> c1;           // the sum constant when alpha > beta
  std::optional<double> c1_tail;      // analytic estimate of its omitted tail
};

// Leading term of the Pinsker inf-sup risk over B(alpha, P0):
//   alpha < beta: eps^(4 alpha/(1+2 alpha)),
//   alpha > beta: eps^(4 beta/(1+2 beta)),
//   alpha == beta (within 1e-12): eps^(4 alpha/(1+2 alpha)) |2 ln eps|^(1/(1+2 alpha)).
PinskerAsymptote pinsker_asymptote(double alpha, double beta, double p0,
                                   double eps);

// sum_{j>=1} j^(2 beta) (j^(-2 alpha) - (j+1)^(-2 alpha)), alpha > beta.
struct SeriesValue {
  double value;
  double tail;
};
SeriesValue pinsker_rough_constant(double alpha, double beta);

// Singular values |r_j| = C j^-gamma, sigma == 1.
struct PolynomialSpectrumRate {
  double alpha, gamma, p0, c;
};
// Singular values |r_j| = C j^-kappa exp(-B j^gamma), sigma == 1.
struct ExponentialSpectrumRate {
  double alpha, gamma, b, p0;
};
using InverseProblem = std::variant<PolynomialSpectrumRate, ExponentialSpectrumRate>;

struct InverseAsymptote {
  // Empty when the closed-form constant is not finite and positive; `flag`
  // then says why.
  std::optional<double> value;
  double eps_exponent = 0.0;  // polynomial case: 4 alpha / (1 + 2 alpha + 2 gamma)
  double log_exponent = 0.0;  // exponential case: -2 alpha / gamma
  std::optional<std::string> flag;
};

InverseAsymptote inverse_problem_asymptote(const InverseProblem& problem,
                                           double eps);

struct InverseRisk {
  DirectModel direct;       // y = z / r and sigma' = sigma / |r|
  DiagonalWeights weights;  // minimax filter for (ball, sigma')
  SupRisk risk;
};

// Observes z = r * theta + eps xi for the worst-case theta of the ball,
// reduces it to the direct model, and evaluates the worst-case risk of the
// linear minimax filter built for the inflated noise. sigma == 1.
InverseRisk inverse_problem_risk(const Ball& ball,
                                 const OperatorSpectrum& spectrum, double eps,
                                 std::size_t n, std::uint64_t seed);

// Monte Carlo estimate of E ||apply_weights(w, y) - x||^2, sigma as given.
// Replicate r draws its noise from GaussianStream(seed, r + 1); the result is
// a pure function of (w, x, sigma, eps, reps, seed).
RiskReport mc_risk(const DiagonalWeights& w, std::span<const double> x,
                   const NoiseProfile& sigma, double eps, std::size_t reps,
                   std::uint64_t seed);

struct RatePoint {
  double eps;
  double risk;
};

struct RateFit {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Least squares of log(risk) on log(eps).
RateFit rate_exponent(std::span<const RatePoint> points);

// n = max(512, ceil(20 eps^(-2 / (1 + 2 smoothness)))).
std::size_t default_truncation(double eps, double smoothness);

struct SignalFamily {
  std::function<double(std::size_t)> coordinate;
  std::function<std::size_t(double)> truncation;
};

// x_j = j^-decay, truncated by default_truncation(eps, smoothness).
SignalFamily power_decay_signal(double decay, double smoothness);

struct MaxisetPoint {
  double eps;
  std::size_t n;
  double risk;        // inf_mu exact risk of the Pinsker filter
  double normalized;  // risk * eps^(-4 beta/(1 + 2 beta))
  double mu;
};

std::vector<MaxisetPoint> maxiset_diagnostic(const SignalFamily& signal,
                                             double beta,
                                             std::span<const double> eps_grid);

}  // namespace seqlab

#include "seqlab/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "seqlab/error.hpp"
#include "seqlab/rng.hpp"
#include "seqlab/search.hpp"

namespace seqlab {

const char* to_string(RiskMethod m) noexcept {
  switch (m) {
    case RiskMethod::exact:
      return "exact";
    case RiskMethod::lp:
      return "lp";
    case RiskMethod::mc:
      return "mc";
    case RiskMethod::formula:
      return "formula";
  }
  return "exact";
}

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidConfig("risk: epsilon must be positive and finite");
}

double weight_at(const DiagonalWeights& w, std::size_t i) {
  return i < w.size() ? w.lambda[i] : 0.0;
}

}  // namespace

RiskReport exact_risk(const DiagonalWeights& w, std::span<const double> x,
                      const NoiseProfile& sigma, double eps) {
  require_eps(eps);
  RiskReport r;
  r.method = RiskMethod::exact;
  r.n = std::max(w.size(), x.size());
  const double e2 = eps * eps;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double lam = weight_at(w, i);
    if (lam != 0.0) {
      const double s = sigma(i + 1);
      r.variance_term += lam * lam * s * s;
    }
    if (i < x.size()) r.bias_term += (1.0 - lam) * (1.0 - lam) * x[i] * x[i];
  }
  r.variance_term *= e2;
  r.value = r.variance_term + r.bias_term;
  r.tail_bound = 0.0;  // x is finitely supported
  return r;
}

double bayes_gaussian_risk(std::span<const double> theta_sq,
                           const NoiseProfile& sigma, double eps) {
  require_eps(eps);
  const double e2 = eps * eps;
  double s = 0.0;
  for (std::size_t j = 1; j <= theta_sq.size(); ++j) {
    const double t = theta_sq[j - 1];
    if (t < 0.0) throw InvalidData("bayes risk: negative prior variance");
    if (t == 0.0) continue;
    const double sj = sigma(j);
    s += t * sj * sj / (t + e2 * sj * sj);
  }
  return e2 * s;
}

namespace {

// Shared by the exact and the power-law minimax risk: the minimax filter for
// boundary energies `energy` and the risk it attains when x_j^2 = energy_j.
RiskReport bayes_report(std::span<const double> energy,
                        const NoiseProfile& sigma, double eps) {
  RiskReport r;
  r.method = RiskMethod::formula;
  r.n = energy.size();
  const double e2 = eps * eps;
  for (std::size_t j = 1; j <= energy.size(); ++j) {
    const double s2 = sigma(j) * sigma(j);
    const double t = energy[j - 1];
    const double lam = t / (t + e2 * s2);
    r.variance_term += e2 * lam * lam * s2;
    r.bias_term += (1.0 - lam) * (1.0 - lam) * t;
  }
  r.value = e2 * [&] {
    double s = 0.0;
    for (std::size_t j = 1; j <= energy.size(); ++j) {
      const double s2 = sigma(j) * sigma(j);
      s += energy[j - 1] * s2 / (energy[j - 1] + e2 * s2);
    }
    return s;
  }();
  return r;
}

}  // namespace

RiskReport minimax_linear_risk(const Ball& ball, const NoiseProfile& sigma,
                               double eps, std::size_t n) {
  require_eps(eps);
  if (n == 0) throw InvalidConfig("risk: n must be at least 1");
  RiskReport r = bayes_report(ball.boundary_energies(n), sigma, eps);
  r.tail_bound = ball.p0() * ball.decay()(n + 1);
  return r;
}

RiskReport asymptotic_minimax_risk(double alpha, double p0,
                                   const NoiseProfile& sigma, double eps,
                                   std::size_t n) {
  require_eps(eps);
  if (!(alpha > 0.0) || !(p0 > 0.0))
    throw InvalidConfig("risk: alpha and p0 must be positive");
  Vector energy(n);
  for (std::size_t j = 1; j <= n; ++j)
    energy[j - 1] =
        2.0 * alpha * p0 * std::pow(static_cast<double>(j), -2.0 * alpha - 1.0);
  RiskReport r = bayes_report(energy, sigma, eps);
  r.tail_bound = p0 * std::pow(static_cast<double>(n), -2.0 * alpha);
  return r;
}

NestedTailSolution solve_nested_tail_program(std::span<const double> c,
                                             std::span<const double> b) {
  if (c.size() != b.size())
    throw InvalidData("nested program: coefficient and bound lengths differ");
  const std::size_t n = c.size();
  NestedTailSolution sol;
  sol.v.assign(n, 0.0);
  if (n == 0) return sol;

  // Only the running minimum of b binds, because T is nonincreasing.
  Vector cap(n + 1, 0.0);
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(b[k] >= 0.0)) throw InvalidData("nested program: negative bound");
    running = std::min(running, b[k]);
    cap[k] = running;
  }

  constexpr double kTieUlps = 4.0 * std::numeric_limits<double>::epsilon();
  std::size_t best = 0;
  for (std::size_t m = 0; m < n; ++m) {
    if (m == 0 || c[m] >= c[best] - kTieUlps * std::abs(c[best])) best = m;
    const double width = cap[m] - cap[m + 1];
    if (width > 0.0 && c[best] > 0.0) {
      sol.v[best] += width;
      sol.value += width * c[best];
    }
  }
  return sol;
}

SupRisk sup_risk_over_ball(const DiagonalWeights& w, const Ball& ball,
                           const NoiseProfile& sigma, double eps,
                           std::size_t n) {
  require_eps(eps);
  if (n == 0) throw InvalidConfig("risk: n must be at least 1");
  if (w.size() > n)
    throw InvalidConfig("risk: weight vector longer than truncation n");
  for (double l : w.lambda)
    if (!std::isfinite(l)) throw InvalidData("risk: weights must be finite");

  const Vector a = ball.decay().materialize(n + 1);
  const double p0 = ball.p0();
  Vector coef(n), bound(n);
  double variance = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = weight_at(w, i);
    coef[i] = (1.0 - lam) * (1.0 - lam);
    bound[i] = p0 * (a[i] - a[n]);
    if (lam != 0.0) {
      const double s = sigma(i + 1);
      variance += lam * lam * s * s;
    }
  }
  NestedTailSolution lp = solve_nested_tail_program(coef, bound);

  SupRisk out;
  out.report.method = RiskMethod::lp;
  out.report.n = n;
  out.report.variance_term = eps * eps * variance;
  out.report.bias_term = lp.value;
  out.report.value = out.report.variance_term + out.report.bias_term;
  out.report.tail_bound = p0 * a[n];
  out.maximizer = std::move(lp.v);
  for (double& v : out.maximizer) v = std::sqrt(v);
  return out;
}

PinskerRisk pinsker_minimax_risk(double beta, const Ball& ball, double eps,
                                 std::size_t n) {
  require_eps(eps);
  if (!(beta > 0.0)) throw InvalidConfig("pinsker: beta must be positive");
  if (n == 0) throw InvalidConfig("pinsker: n must be at least 1");
  const NoiseProfile unit = NoiseProfile::constant(1.0);
  const auto objective = [&](double mu) {
    return sup_risk_over_ball(pinsker_weights(beta, mu, n), ball, unit, eps, n)
        .report.value;
  };
  const double lo = 0.01 * std::pow(static_cast<double>(n), -beta);
  ScalarMinimum m = minimize_log_scale(objective, lo, 1.0, 64, 1e-6);

  PinskerRisk out;
  out.mu = m.argmin;
  out.value = m.value;
  out.scan = std::move(m.scan);
  out.report =
      sup_risk_over_ball(pinsker_weights(beta, out.mu, n), ball, unit, eps, n)
          .report;
  return out;
}

SeriesValue pinsker_rough_constant(double alpha, double beta) {
  if (!(alpha > beta) || !(beta > 0.0))
    throw InvalidConfig("pinsker constant: needs alpha > beta > 0");
  constexpr std::size_t kTerms = std::size_t{1} << 20;
  double s = 0.0;
  // Summed from the small tail terms upwards.
  for (std::size_t j = kTerms; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    s += std::pow(jd, 2.0 * beta) *
         (std::pow(jd, -2.0 * alpha) - std::pow(jd + 1.0, -2.0 * alpha));
  }
  // Terms behave like 2 alpha j^(2 beta - 2 alpha - 1).
  const double tail = alpha / (alpha - beta) *
                      std::pow(static_cast<double>(kTerms) + 0.5,
                               2.0 * beta - 2.0 * alpha);
  return {s + tail, tail};
}

PinskerAsymptote pinsker_asymptote(double alpha, double beta, double p0,
                                   double eps) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(p0 > 0.0) || !(eps > 0.0))
    throw InvalidConfig("pinsker asymptote: parameters must be positive");
  const double cc = 2.0 * alpha * alpha / ((1.0 + alpha) * (1.0 + 2.0 * alpha));
  PinskerAsymptote out;

  const auto smooth_case = [&](double s, double c1) {
    const double d = 1.0 + 2.0 * s;
    return std::pow(cc, 2.0 * s / d) * std::pow(c1, 1.0 / d) *
           (std::pow(2.0 * s, -2.0 * s / d) + std::pow(2.0 * s, 1.0 / d));
  };

  if (std::abs(alpha - beta) <= 1e-12) {
    const double d = 1.0 + 2.0 * alpha;
    out.regime = Smoothness::matched;
    out.constant =
        (std::pow(2.0 * alpha * alpha, 1.0 / d) +
         std::pow(2.0, -2.0 * alpha / d) * std::pow(alpha, (1.0 - 2.0 * alpha) / d)) *
        std::pow(d, -1.0 / d) * std::pow(p0, 1.0 / d) * std::pow(cc, 2.0 * alpha / d);
    out.eps_exponent = 4.0 * alpha / d;
    out.log_power = 1.0 / d;
  } else if (alpha < beta) {
    out.regime = Smoothness::pinsker_smoother;
    out.constant = smooth_case(alpha, beta / (beta - alpha) * p0);
    out.eps_exponent = 4.0 * alpha / (1.0 + 2.0 * alpha);
  } else {
    out.regime = Smoothness::pinsker_rougher;
    const SeriesValue c1 = pinsker_rough_constant(alpha, beta);
    out.c1 = c1.value;
    out.c1_tail = c1.tail;
    out.constant = smooth_case(beta, c1.value);
    out.eps_exponent = 4.0 * beta / (1.0 + 2.0 * beta);
  }
  out.value = out.constant * std::pow(eps, out.eps_exponent) *
              std::pow(std::abs(2.0 * std::log(eps)), out.log_power);
  return out;
}

InverseAsymptote inverse_problem_asymptote(const InverseProblem& problem,
                                           double eps) {
  require_eps(eps);
  InverseAsymptote out;
  if (const auto* p = std::get_if<PolynomialSpectrumRate>(&problem)) {
    if (!(p->alpha > 0.0) || !(p->gamma > 0.0) || !(p->p0 > 0.0) || !(p->c > 0.0))
      throw InvalidConfig("inverse: alpha, gamma, p0, C must be positive");
    const double d = 1.0 + 2.0 * p->alpha + 2.0 * p->gamma;
    out.eps_exponent = 4.0 * p->alpha / d;
    const double angle =
        std::numbers::pi * (2.0 * p->gamma + 1.0) / (2.0 * p->alpha);
    if (!(angle > 0.0 && angle < std::numbers::pi)) {
      std::ostringstream os;
      os << "sine argument " << angle
         << " lies outside (0, pi); closed-form constant not finite and positive";
      out.flag = os.str();
      return out;
    }
    const double constant =
        std::numbers::pi / (2.0 * p->alpha * std::sin(angle)) *
        std::pow(2.0 * p->alpha * p->p0, (2.0 * p->gamma + 1.0) / d) *
        std::pow(p->c, -2.0 * p->alpha / d);
    out.value = constant * std::pow(eps, out.eps_exponent);
    return out;
  }
  const auto& e = std::get<ExponentialSpectrumRate>(problem);
  if (!(e.alpha > 0.0) || !(e.gamma > 0.0) || !(e.b > 0.0) || !(e.p0 > 0.0))
    throw InvalidConfig("inverse: alpha, gamma, B, p0 must be positive");
  out.log_exponent = -2.0 * e.alpha / e.gamma;
  out.value = e.p0 * std::pow(e.b, 2.0 * e.alpha / e.gamma) *
              std::pow(std::abs(std::log(eps)), out.log_exponent);
  return out;
}

InverseRisk inverse_problem_risk(const Ball& ball,
                                 const OperatorSpectrum& spectrum, double eps,
                                 std::size_t n, std::uint64_t seed) {
  const SequenceModelConfig cfg{eps, NoiseProfile::constant(1.0), n};
  Vector image = worst_case_signal(ball, n);
  for (std::size_t j = 1; j <= n; ++j) image[j - 1] *= spectrum(j);
  const Vector z = sample_observation(image, cfg, seed);
  DirectModel direct = to_direct_model(z, spectrum, cfg);
  DiagonalWeights w = minimax_weights(ball, direct.noise, eps, n);
  SupRisk risk = sup_risk_over_ball(w, ball, direct.noise, eps, n);
  return {std::move(direct), std::move(w), std::move(risk)};
}

namespace {

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double noise_mean = 0.0;

  void add(double loss, double noise) {
    ++count;
    const double d = loss - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (loss - mean);
    noise_mean += (noise - noise_mean) / static_cast<double>(count);
  }

  // Chan et al. pairwise combination.
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double nt = na + nb;
    const double d = o.mean - mean;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    noise_mean += (o.noise_mean - noise_mean) * nb / nt;
    count += o.count;
  }
};

// Fixed partition so the reduction order never depends on the thread count.
constexpr std::size_t kMcChunks = 32;

}  // namespace

RiskReport mc_risk(const DiagonalWeights& w, std::span<const double> x,
                   const NoiseProfile& sigma, double eps, std::size_t reps,
                   std::uint64_t seed) {
  require_eps(eps);
  if (reps < 2) throw InvalidConfig("mc risk: reps must be at least 2");
  const std::size_t n = std::max(w.size(), x.size());
  Vector lam(n, 0.0), xs(n, 0.0), scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lam[i] = weight_at(w, i);
    xs[i] = i < x.size() ? x[i] : 0.0;
    if (lam[i] != 0.0) scale[i] = lam[i] * eps * sigma(i + 1);
  }
  double fixed_bias = 0.0;  // coordinates with lambda == 0 carry no noise
  for (std::size_t i = 0; i < n; ++i)
    if (lam[i] == 0.0) fixed_bias += xs[i] * xs[i];

  std::vector<Moments> parts(kMcChunks);
  const auto run_chunk = [&](std::size_t chunk) {
    const std::size_t begin = reps * chunk / kMcChunks;
    const std::size_t end = reps * (chunk + 1) / kMcChunks;
    Moments m;
    for (std::size_t r = begin; r < end; ++r) {
      const GaussianStream xi(seed, stream_domain::observation + r + 1);
      double loss = fixed_bias;
      double noise = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (lam[i] == 0.0) continue;
        const double z = scale[i] * xi(i);
        const double err = (lam[i] - 1.0) * xs[i] + z;
        loss += err * err;
        noise += z * z;
      }
      m.add(loss, noise);
    }
    parts[chunk] = m;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (hw == 1 || reps < 1000) {
    for (std::size_t c = 0; c < kMcChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t workers = std::min<std::size_t>(hw, kMcChunks);
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < kMcChunks; c += workers) run_chunk(c);
      });
  }

  Moments total;
  for (const Moments& m : parts) total.merge(m);

  RiskReport r;
  r.method = RiskMethod::mc;
  r.n = n;
  r.value = total.mean;
  r.variance_term = total.noise_mean;
  r.bias_term = total.mean - total.noise_mean;
  r.reps = reps;
  const double var = total.m2 / static_cast<double>(reps - 1);
  r.standard_error = std::sqrt(std::max(0.0, var) / static_cast<double>(reps));
  return r;
}

RateFit rate_exponent(std::span<const RatePoint> points) {
  if (points.size() < 3) throw InvalidData("rate fit: need at least 3 points");
  RateFit fit;
  fit.points.assign(points.begin(), points.end());
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    if (!(p.eps > 0.0)) throw InvalidData("rate fit: epsilon must be positive");
    if (!(p.risk > 0.0)) throw InvalidData("rate fit: risk must be positive");
    lx.push_back(std::log(p.eps));
    ly.push_back(std::log(p.risk));
  }
  for (std::size_t i = 0; i < lx.size(); ++i)
    for (std::size_t k = i + 1; k < lx.size(); ++k)
      if (lx[i] == lx[k]) throw InvalidData("rate fit: epsilons must be distinct");
  const double m = static_cast<double>(lx.size());
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::size_t default_truncation(double eps, double smoothness) {
  const double k = 20.0 * std::pow(eps, -2.0 / (1.0 + 2.0 * smoothness));
  return std::max<std::size_t>(512, static_cast<std::size_t>(std::ceil(k)));
}

SignalFamily power_decay_signal(double decay, double smoothness) {
  return {[decay](std::size_t j) {
            return std::pow(static_cast<double>(j), -decay);
          },
          [smoothness](double eps) {
            return default_truncation(eps, smoothness);
          }};
}

std::vector<MaxisetPoint> maxiset_diagnostic(const SignalFamily& signal,
                                             double beta,
                                             std::span<const double> eps_grid) {
  if (!(beta > 0.0)) throw InvalidConfig("maxiset: beta must be positive");
  if (eps_grid.empty()) throw InvalidData("maxiset: empty epsilon grid");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0)) throw InvalidData("maxiset: epsilon must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw InvalidData("maxiset: epsilon grid must be strictly decreasing");
  }
  const double rate = 4.0 * beta / (1.0 + 2.0 * beta);
  const NoiseProfile unit = NoiseProfile::constant(1.0);

  std::vector<MaxisetPoint> out;
  for (double eps : eps_grid) {
    const std::size_t n = signal.truncation(eps);
    Vector x(n);
    for (std::size_t j = 1; j <= n; ++j) x[j - 1] = signal.coordinate(j);
    const auto objective = [&](double mu) {
      return exact_risk(pinsker_weights(beta, mu, n), x, unit, eps).value;
    };
    const double lo = 0.01 * std::pow(static_cast<double>(n), -beta);
    const ScalarMinimum m = minimize_log_scale(objective, lo, 1.0, 64, 1e-6);
    out.push_back({eps, n, m.value, m.value * std::pow(eps, -rate), m.argmin});
  }
  return out;
}

}  // namespace seqlab

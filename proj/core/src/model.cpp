#include "seqlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqlab/error.hpp"
#include "seqlab/geometry.hpp"
#include "seqlab/rng.hpp"

namespace seqlab {

NoiseProfile NoiseProfile::constant(double sigma0) {
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
    throw InvalidConfig("noise: constant sigma must be positive and finite");
  NoiseProfile s;
  s.kind_ = Kind::constant;
  s.c_ = sigma0;
  return s;
}

NoiseProfile NoiseProfile::power(double c, double p) {
  if (!(c > 0.0) || !std::isfinite(c) || !std::isfinite(p))
    throw InvalidConfig("noise: power profile needs c > 0 and finite p");
  NoiseProfile s;
  s.kind_ = Kind::power;
  s.c_ = c;
  s.p_ = p;
  return s;
}

NoiseProfile NoiseProfile::table(std::vector<double> values) {
  if (values.empty()) throw InvalidConfig("noise: empty table");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw InvalidConfig("noise: table entry " + std::to_string(i + 1) +
                          " is negative or not finite");
  }
  NoiseProfile s;
  s.kind_ = Kind::table;
  s.values_ = std::move(values);
  return s;
}

double NoiseProfile::operator()(std::size_t j) const {
  switch (kind_) {
    case Kind::constant:
      return c_;
    case Kind::power:
      return c_ * std::pow(static_cast<double>(j), p_);
    case Kind::table:
      if (j == 0 || j > values_.size())
        throw InvalidConfig("noise: table has " +
                            std::to_string(values_.size()) +
                            " entries, index " + std::to_string(j) +
                            " requested");
      return values_[j - 1];
  }
  return c_;
}

Vector NoiseProfile::materialize(std::size_t n) const {
  Vector out(n);
  for (std::size_t j = 1; j <= n; ++j) out[j - 1] = (*this)(j);
  return out;
}

std::optional<std::size_t> NoiseProfile::n_max() const noexcept {
  if (kind_ == Kind::table) return values_.size();
  return std::nullopt;
}

void SequenceModelConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidConfig("model: epsilon must be positive and finite");
  if (n == 0) throw InvalidConfig("model: truncation n must be at least 1");
  if (auto m = noise.n_max(); m && *m < n)
    throw InvalidConfig("model: noise table shorter than n");
}

Vector sample_observation(std::span<const double> x,
                          const SequenceModelConfig& cfg, std::uint64_t seed,
                          std::uint64_t stream) {
  cfg.validate();
  if (x.size() > cfg.n)
    throw InvalidConfig("model: signal longer than truncation n");
  const GaussianStream xi(seed, stream);
  Vector y(cfg.n);
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    const double signal = j <= x.size() ? x[j - 1] : 0.0;
    y[j - 1] = signal + cfg.epsilon * cfg.noise(j) * xi(j - 1);
  }
  return y;
}

OperatorSpectrum OperatorSpectrum::power(double c, double gamma) {
  if (!(c > 0.0) || !std::isfinite(gamma))
    throw InvalidConfig("spectrum: power kind needs C > 0 and finite gamma");
  OperatorSpectrum s;
  s.kind_ = Kind::power;
  s.c_ = c;
  s.gamma_ = gamma;
  return s;
}

OperatorSpectrum OperatorSpectrum::exponential(double c, double kappa,
                                               double b, double gamma) {
  if (!(c > 0.0) || !(b > 0.0) || !(gamma > 0.0) || !std::isfinite(kappa))
    throw InvalidConfig("spectrum: exp kind needs C > 0, B > 0, gamma > 0");
  OperatorSpectrum s;
  s.kind_ = Kind::exponential;
  s.c_ = c;
  s.kappa_ = kappa;
  s.b_ = b;
  s.gamma_ = gamma;
  return s;
}

OperatorSpectrum OperatorSpectrum::table(std::vector<double> values) {
  if (values.empty()) throw InvalidConfig("spectrum: empty table");
  OperatorSpectrum s;
  s.kind_ = Kind::table;
  s.values_ = std::move(values);
  return s;
}

OperatorSpectrum OperatorSpectrum::with_signs(std::vector<int> signs) const {
  for (int v : signs)
    if (v != 1 && v != -1) throw InvalidConfig("spectrum: signs must be +-1");
  OperatorSpectrum s = *this;
  s.signs_ = std::move(signs);
  return s;
}

double OperatorSpectrum::operator()(std::size_t j) const {
  const double jd = static_cast<double>(j);
  double r = 0.0;
  switch (kind_) {
    case Kind::power:
      r = c_ * std::pow(jd, -gamma_);
      break;
    case Kind::exponential:
      r = c_ * std::pow(jd, -kappa_) * std::exp(-b_ * std::pow(jd, gamma_));
      break;
    case Kind::table:
      if (j == 0 || j > values_.size())
        throw InvalidConfig("spectrum: table has " +
                            std::to_string(values_.size()) +
                            " entries, index " + std::to_string(j) +
                            " requested");
      r = values_[j - 1];
      break;
  }
  if (!signs_.empty()) r *= signs_[(j - 1) % signs_.size()];
  return r;
}

DirectModel to_direct_model(std::span<const double> z,
                            const OperatorSpectrum& spectrum,
                            const SequenceModelConfig& cfg) {
  cfg.validate();
  if (z.size() > cfg.n)
    throw InvalidConfig("model: observation longer than truncation n");
  Vector y(z.size());
  Vector sigma(cfg.n);
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    const double r = spectrum(j);
    if (r == 0.0 || !std::isfinite(r))
      throw SingularSpectrum(j, "spectrum: r_" + std::to_string(j) +
                                    " is zero or not finite");
    sigma[j - 1] = cfg.noise(j) / std::abs(r);
    if (j <= z.size()) y[j - 1] = z[j - 1] / r;
  }
  return {std::move(y), NoiseProfile::table(std::move(sigma))};
}

AssumptionReport validate_assumptions(const DecaySequence& a,
                                      const NoiseProfile& sigma, double alpha,
                                      std::size_t n, std::size_t j0) {
  if (n < 2) throw InvalidConfig("validate: n must be at least 2");
  const Vector av = a.materialize(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    if (!(av[k] < av[k - 1]))
      throw InvalidSequence("validate: decay sequence not strictly decreasing "
                            "at index " + std::to_string(k + 1));
  }
  const Vector s = sigma.materialize(n);

  AssumptionReport rep;
  const auto min_it = std::min_element(s.begin(), s.end());
  rep.a1.witness = (*min_it) * (*min_it);
  rep.a1.index = static_cast<std::size_t>(min_it - s.begin()) + 1;
  rep.a1.pass = rep.a1.witness > 0.0;

  rep.a2.pass = true;
  for (std::size_t j = 2; j <= n; ++j) {
    const double lhs = s[j - 1] * s[j - 1] * (av[j - 2] - av[j - 1]);
    const double rhs = s[j - 2] * s[j - 2] * (av[j - 1] - av[j]);
    if (!(lhs > rhs)) {
      rep.a2.pass = false;
      rep.a2.first_violation = j;
      break;
    }
  }

  rep.b1.pass = true;
  const double e = 2.0 * alpha + 1.0;
  for (std::size_t j = std::max<std::size_t>(j0 + 1, 2); j <= n; ++j) {
    const double cur = s[j - 1] * s[j - 1] * std::pow(double(j), e);
    const double prev = s[j - 2] * s[j - 2] * std::pow(double(j - 1), e);
    if (!(cur > prev)) {
      rep.b1.pass = false;
      rep.b1.first_violation = j;
      break;
    }
  }
  return rep;
}

}  // namespace seqlab

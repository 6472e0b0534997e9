#include "report_io.hpp"

#include <cmath>
#include <cstdio>

namespace seqlab::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json risk_json(const RiskReport& r) {
  json j = {{"value", r.value},
            {"variance_term", r.variance_term},
            {"bias_term", r.bias_term},
            {"n", r.n},
            {"tail_bound", r.tail_bound},
            {"method", to_string(r.method)}};
  if (r.standard_error) j["stderr"] = *r.standard_error;
  if (r.reps) j["reps"] = *r.reps;
  return j;
}

std::string risk_csv(const RiskReport& r) {
  std::string s = "value,variance_term,bias_term,n,tail_bound,method,stderr\n";
  s += format_double(r.value) + "," + format_double(r.variance_term) + "," +
       format_double(r.bias_term) + "," + std::to_string(r.n) + "," +
       format_double(r.tail_bound) + "," + to_string(r.method) + "," +
       (r.standard_error ? format_double(*r.standard_error) : std::string()) + "\n";
  return s;
}

json weights_json(const DiagonalWeights& w) {
  json j = {{"family", to_string(w.family)}, {"lambda", w.lambda}};
  if (w.mu) j["mu"] = *w.mu;
  if (w.beta) j["beta"] = *w.beta;
  if (!w.warnings.empty()) j["warnings"] = w.warnings;
  return j;
}

std::string weights_csv(const DiagonalWeights& w) {
  std::string s = "j,lambda\n";
  for (std::size_t i = 0; i < w.size(); ++i)
    s += std::to_string(i + 1) + "," + format_double(w.lambda[i]) + "\n";
  return s;
}

json rate_json(const RateFit& fit, double expected_exponent) {
  json pts = json::array();
  for (const auto& p : fit.points)
    pts.push_back({{"epsilon", p.eps},
                   {"risk", p.risk},
                   {"normalized", p.risk / std::pow(p.eps, expected_exponent)}});
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"expected_exponent", expected_exponent},
          {"points", pts}};
}

std::string rate_csv(const RateFit& fit, double expected_exponent) {
  std::string s = "epsilon,risk,normalized\n";
  for (const auto& p : fit.points)
    s += format_double(p.eps) + "," + format_double(p.risk) + "," +
         format_double(p.risk / std::pow(p.eps, expected_exponent)) + "\n";
  return s;
}

json maxiset_json(const std::vector<MaxisetPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts)
    arr.push_back({{"epsilon", p.eps},
                   {"risk", p.risk},
                   {"normalized", p.normalized},
                   {"n", p.n},
                   {"mu", p.mu}});
  return {{"points", arr}};
}

std::string maxiset_csv(const std::vector<MaxisetPoint>& pts) {
  std::string s = "epsilon,risk,normalized\n";
  for (const auto& p : pts)
    s += format_double(p.eps) + "," + format_double(p.risk) + "," +
         format_double(p.normalized) + "\n";
  return s;
}

json asymptote_json(const PinskerAsymptote& a) {
  const char* regime = a.regime == Smoothness::matched           ? "matched"
                       : a.regime == Smoothness::pinsker_smoother ? "alpha<beta"
                                                                  : "alpha>beta";
  json j = {{"value", a.value},
            {"constant", a.constant},
            {"eps_exponent", a.eps_exponent},
            {"log_power", a.log_power},
            {"regime", regime}};
  if (a.c1) j["c1"] = *a.c1;
  return j;
}

json inverse_json(const InverseAsymptote& a) {
  json j = {{"eps_exponent", a.eps_exponent}, {"log_exponent", a.log_exponent}};
  j["value"] = a.value ? json(*a.value) : json(nullptr);
  if (a.flag) j["flag"] = *a.flag;
  return j;
}

json tail_json(const TailCheck& c) {
  return {{"threshold", c.threshold},     {"exceedances", c.exceedances},
          {"reps", c.reps},               {"empirical_prob", c.empirical_prob},
          {"bound", c.bound},             {"slack", c.slack},
          {"pass", c.pass}};
}

json assumptions_json(const AssumptionReport& r) {
  const auto mono = [](const AssumptionReport::Monotone& m) {
    json j = {{"pass", m.pass}};
    j["first_violation"] = m.first_violation ? json(*m.first_violation) : json(nullptr);
    return j;
  };
  return {{"a1", {{"pass", r.a1.pass}, {"witness", r.a1.witness}, {"index", r.a1.index}}},
          {"a2", mono(r.a2)},
          {"b1", mono(r.b1)}};
}

}  // namespace seqlab::cli

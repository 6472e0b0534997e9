#include "command.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grammar.hpp"
#include "report_io.hpp"
#include "seqlab/seqlab.hpp"

namespace seqlab::cli {
namespace {

using nlohmann::json;

struct FlagSpec {
  const char* name;
  const char* fallback;  // nullptr: no default
  const char* help;
};

struct VerbSpec {
  const char* verb;
  const char* help;
  std::vector<FlagSpec> flags;
};

const std::vector<FlagSpec>& filter_flags() {
  static const std::vector<FlagSpec> flags = {
      {"family", nullptr, "minimax | asymptotic | pinsker"},
      {"ball", nullptr, "power:alpha=<v>,p0=<v> | table:@<path>,p0=<v>"},
      {"sigma", "const:1", "const:<v> | power:c=<v>,p=<v> | table:@<path>"},
      {"eps", nullptr, "noise level"},
      {"n", nullptr, "truncation level"},
      {"alpha", nullptr, "smoothness of the power-law filter"},
      {"p0", nullptr, "radius of the power-law filter"},
      {"beta", nullptr, "Pinsker exponent"},
      {"mu", nullptr, "Pinsker threshold"},
      {"radius", nullptr, "Pinsker ellipsoid radius P (solves for mu)"},
  };
  return flags;
}

std::vector<FlagSpec> with(std::vector<FlagSpec> base,
                           std::initializer_list<FlagSpec> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

const std::vector<VerbSpec>& verbs() {
  static const std::vector<VerbSpec> table = {
      {"weights", "diagonal filter weights", filter_flags()},
      {"risk-exact", "exact risk of a filter at a signal",
       with(filter_flags(),
            {{"signal", "worst-case",
              "worst-case | zero | power:decay=<v> | table:@<path>"}})},
      {"risk-mc", "Monte Carlo risk of a filter at a signal",
       with(filter_flags(),
            {{"signal", "worst-case",
              "worst-case | zero | power:decay=<v> | table:@<path>"},
             {"reps", "10000", "replicates"}})},
      {"sup-risk", "worst-case risk of a filter over the ball", filter_flags()},
      {"pinsker", "inf over mu of the Pinsker worst-case risk over the ball",
       {{"beta", nullptr, "Pinsker exponent"},
        {"ball", nullptr, "power:alpha=<v>,p0=<v> | table:@<path>,p0=<v>"},
        {"eps", nullptr, "noise level"},
        {"n", nullptr, "truncation level (default: automatic)"}}},
      {"rates", "risk against epsilon and the fitted log-log slope",
       {{"family", nullptr, "asymptotic | minimax | pinsker | inverse"},
        {"alpha", nullptr, "ball smoothness"},
        {"p0", "1", "ball radius"},
        {"beta", nullptr, "Pinsker exponent (family pinsker)"},
        {"sigma", "const:1", "noise profile (asymptotic, minimax)"},
        {"spectrum", "power:C=1,gamma=1", "operator spectrum (family inverse)"},
        {"eps-grid", nullptr, "comma-separated decreasing epsilons"},
        {"n", nullptr, "fixed truncation (default: automatic per epsilon)"}}},
      {"inverse", "closed-form inverse-problem risk asymptotics",
       {{"example", nullptr, "1 (polynomial spectrum) | 2 (exponential)"},
        {"alpha", nullptr, "ball smoothness"},
        {"gamma", nullptr, "spectrum decay exponent"},
        {"p0", "1", "ball radius"},
        {"C", "1", "spectrum scale (example 1)"},
        {"B", "1", "spectrum rate (example 2)"},
        {"eps", nullptr, "noise level"}}},
      {"maxiset", "normalised Pinsker risk of x_j = j^-decay over epsilon",
       {{"beta", nullptr, "Pinsker exponent"},
        {"decay", nullptr, "signal decay exponent"},
        {"eps-grid", nullptr, "comma-separated decreasing epsilons"}}},
      {"concentration", "Monte Carlo check of the quadratic-form tail bound",
       {{"dim", "8", "dimension of the identity form"},
        {"diag", nullptr, "explicit comma-separated diagonal (overrides dim)"},
        {"t", nullptr, "deviation parameter"},
        {"reps", "100000", "replicates"}}},
      {"validate", "check the noise/decay assumptions",
       {{"ball", nullptr, "power:alpha=<v>,p0=<v> | table:@<path>,p0=<v>"},
        {"sigma", "const:1", "noise profile"},
        {"n", nullptr, "largest index checked"},
        {"alpha", nullptr, "smoothness for the power-law check (default: ball alpha)"},
        {"j0", "1", "power-law check starts after j0"}}},
  };
  return table;
}

class Params {
 public:
  explicit Params(const Command& cmd) : cmd_(cmd) {}

  bool has(const std::string& k) const { return cmd_.params.count(k) != 0; }

  const std::string& text(const std::string& k) const {
    const auto it = cmd_.params.find(k);
    if (it == cmd_.params.end())
      throw UsageError(cmd_.verb + ": missing required flag --" + k);
    return it->second;
  }
  double number(const std::string& k) const { return parse_number(text(k), "--" + k); }
  double positive(const std::string& k) const {
    const double v = number(k);
    if (!(v > 0.0)) throw UsageError("--" + k + ": must be positive");
    return v;
  }
  std::size_t count(const std::string& k) const { return parse_count(text(k), "--" + k); }

 private:
  const Command& cmd_;
};

// Converts domain errors raised while interpreting flags into usage errors.
template <class F>
auto as_usage(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const seqlab::Error& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

Ball ball_of(const Params& p) {
  return as_usage("ball", [&] { return parse_ball(p.text("ball")); });
}
NoiseProfile noise_of(const Params& p) {
  return as_usage("sigma", [&] { return parse_noise(p.text("sigma")); });
}

struct FilterInputs {
  std::string family;
  double eps;
  std::size_t n;
  NoiseProfile sigma;
  std::optional<Ball> ball;
};

FilterInputs filter_inputs(const Params& p) {
  FilterInputs in{p.text("family"), p.positive("eps"), p.count("n"),
                  noise_of(p), std::nullopt};
  if (p.has("ball")) in.ball = ball_of(p);
  if (in.family == "minimax") {
    if (!in.ball) throw UsageError("family minimax: missing required flag --ball");
  } else if (in.family == "asymptotic") {
    const bool from_ball = in.ball && in.ball->decay().alpha();
    if (!from_ball && !(p.has("alpha") && p.has("p0")))
      throw UsageError("family asymptotic: need --alpha and --p0 (or a power --ball)");
    if (p.has("alpha")) p.positive("alpha");
    if (p.has("p0")) p.positive("p0");
  } else if (in.family == "pinsker") {
    p.positive("beta");
    if (p.has("mu") == p.has("radius"))
      throw UsageError("family pinsker: give exactly one of --mu and --radius");
    if (p.has("mu") && p.number("mu") < 0.0)
      throw UsageError("--mu: must be nonnegative");
    if (p.has("radius")) p.positive("radius");
  } else {
    throw UsageError("--family: unknown filter family '" + in.family + "'");
  }
  return in;
}

DiagonalWeights build_weights(const Params& p, const FilterInputs& in) {
  if (in.family == "minimax")
    return minimax_weights(*in.ball, in.sigma, in.eps, in.n);
  if (in.family == "asymptotic") {
    const double alpha =
        p.has("alpha") ? p.number("alpha") : *in.ball->decay().alpha();
    const double p0 = p.has("p0") ? p.number("p0") : in.ball->p0();
    return asymptotic_weights(alpha, p0, in.sigma, in.eps, in.n);
  }
  const double beta = p.number("beta");
  const double mu =
      p.has("mu") ? p.number("mu")
                  : pinsker_mu(PinskerConfig{beta, p.number("radius"), in.eps, in.n});
  return pinsker_weights(beta, mu, in.n);
}

Vector signal_of(const Params& p, const FilterInputs& in) {
  const std::string& spec = p.text("signal");
  if (spec == "zero") return Vector(in.n, 0.0);
  if (spec == "worst-case") {
    if (!in.ball) throw UsageError("--signal worst-case: requires --ball");
    return worst_case_signal(*in.ball, in.n);
  }
  if (spec.rfind("power:decay=", 0) == 0) {
    const double s = parse_number(spec.substr(12), "--signal decay");
    Vector x(in.n);
    for (std::size_t j = 1; j <= in.n; ++j) x[j - 1] = std::pow(double(j), -s);
    return x;
  }
  if (spec.rfind("table:@", 0) == 0) {
    Vector x = read_table(spec.substr(7));
    if (x.size() > in.n) throw UsageError("--signal table: longer than --n");
    return x;
  }
  throw UsageError("--signal: unknown form '" + spec + "'");
}

// Checks everything that can be checked without computing.
void check(const Command& cmd) {
  const Params p(cmd);
  const std::string& v = cmd.verb;
  if (v == "weights" || v == "sup-risk") {
    filter_inputs(p);
  } else if (v == "risk-exact" || v == "risk-mc") {
    const FilterInputs in = filter_inputs(p);
    signal_of(p, in);
    if (v == "risk-mc" && p.count("reps") < 2)
      throw UsageError("--reps: must be at least 2");
  } else if (v == "pinsker") {
    p.positive("beta");
    p.positive("eps");
    ball_of(p);
    if (p.has("n")) p.count("n");
  } else if (v == "rates") {
    const std::string& fam = p.text("family");
    parse_eps_grid(p.text("eps-grid"));
    p.positive("alpha");
    p.positive("p0");
    if (p.has("n")) p.count("n");
    if (fam == "pinsker") {
      p.positive("beta");
    } else if (fam == "inverse") {
      as_usage("spectrum", [&] { return parse_spectrum(p.text("spectrum")); });
    } else if (fam == "asymptotic" || fam == "minimax") {
      noise_of(p);
    } else {
      throw UsageError("--family: unknown rate family '" + fam + "'");
    }
  } else if (v == "inverse") {
    const std::string& ex = p.text("example");
    if (ex != "1" && ex != "2") throw UsageError("--example: expected 1 or 2");
    p.positive("alpha");
    p.positive("gamma");
    p.positive("p0");
    p.positive("eps");
    p.positive(ex == "1" ? "C" : "B");
  } else if (v == "maxiset") {
    p.positive("beta");
    p.positive("decay");
    parse_eps_grid(p.text("eps-grid"));
  } else if (v == "concentration") {
    if (p.has("diag"))
      as_usage("diag", [&] {
        return DiagonalQuadraticForm(parse_number_list(p.text("diag"), "--diag"));
      });
    else
      p.count("dim");
    if (p.number("t") < 0.0) throw UsageError("--t: must be nonnegative");
    if (p.count("reps") < 10000) throw UsageError("--reps: must be at least 10000");
  } else if (v == "validate") {
    const Ball ball = ball_of(p);
    noise_of(p);
    if (p.count("n") < 2) throw UsageError("--n: must be at least 2");
    if (!p.has("alpha") && !ball.decay().alpha())
      throw UsageError("validate: --alpha required for a table ball");
    if (p.has("alpha")) p.positive("alpha");
    parse_number(p.text("j0"), "--j0");
  }
}

std::vector<RatePoint> rate_points(const Params& p, double& expected) {
  const std::string& fam = p.text("family");
  const std::vector<double> grid = parse_eps_grid(p.text("eps-grid"));
  const double alpha = p.number("alpha");
  const double p0 = p.number("p0");
  const Ball ball(DecaySequence::power(alpha), p0);
  std::vector<RatePoint> pts;
  if (fam == "asymptotic" || fam == "minimax") {
    expected = 4.0 * alpha / (1.0 + 2.0 * alpha);
    const NoiseProfile sigma = noise_of(p);
    for (double eps : grid) {
      const std::size_t n = p.has("n") ? p.count("n") : default_truncation(eps, alpha);
      const RiskReport r = fam == "asymptotic"
                               ? asymptotic_minimax_risk(alpha, p0, sigma, eps, n)
                               : minimax_linear_risk(ball, sigma, eps, n);
      pts.push_back({eps, r.value});
    }
  } else if (fam == "pinsker") {
    const double beta = p.number("beta");
    const double s = std::min(alpha, beta);
    expected = 4.0 * s / (1.0 + 2.0 * s);
    for (double eps : grid) {
      const std::size_t n = p.has("n") ? p.count("n") : default_truncation(eps, s);
      pts.push_back({eps, pinsker_minimax_risk(beta, ball, eps, n).value});
    }
  } else {
    const OperatorSpectrum spectrum = parse_spectrum(p.text("spectrum"));
    const double gamma =
        spectrum.kind() == OperatorSpectrum::Kind::power ? spectrum.gamma() : 0.0;
    expected = 4.0 * alpha / (1.0 + 2.0 * alpha + 2.0 * gamma);
    for (double eps : grid) {
      const std::size_t n =
          p.has("n") ? p.count("n") : default_truncation(eps, alpha + gamma);
      const std::uint64_t seed = std::stoull(p.text("seed"));
      pts.push_back({eps, inverse_problem_risk(ball, spectrum, eps, n, seed)
                              .risk.report.value});
    }
  }
  return pts;
}

void emit(const Command& cmd, const std::string& body, std::ostream& out) {
  if (!cmd.out_path) {
    out << body;
    return;
  }
  std::filesystem::path path(*cmd.out_path);
  if (const char* dir = std::getenv("SEQLAB_OUTPUT_DIR"); dir && path.is_relative())
    path = std::filesystem::path(dir) / path;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open output file '" + path.string() + "'");
  file << body;
}

std::string execute_to_string(const Command& cmd) {
  const Params p(cmd);
  const std::string& v = cmd.verb;
  const bool csv = cmd.output == OutputFormat::csv;

  if (v == "weights") {
    const FilterInputs in = filter_inputs(p);
    const DiagonalWeights w = build_weights(p, in);
    return csv ? weights_csv(w) : weights_json(w).dump() + "\n";
  }
  if (v == "risk-exact" || v == "risk-mc") {
    const FilterInputs in = filter_inputs(p);
    const DiagonalWeights w = build_weights(p, in);
    const Vector x = signal_of(p, in);
    const RiskReport r =
        v == "risk-exact"
            ? exact_risk(w, x, in.sigma, in.eps)
            : mc_risk(w, x, in.sigma, in.eps, p.count("reps"), cmd.seed);
    json j = risk_json(r);
    for (const auto& warning : w.warnings) j["warnings"].push_back(warning);
    return csv ? risk_csv(r) : j.dump() + "\n";
  }
  if (v == "sup-risk") {
    const FilterInputs in = filter_inputs(p);
    if (!in.ball) throw UsageError("sup-risk: missing required flag --ball");
    const DiagonalWeights w = build_weights(p, in);
    const SupRisk s = sup_risk_over_ball(w, *in.ball, in.sigma, in.eps, in.n);
    if (csv) return risk_csv(s.report);
    json j = risk_json(s.report);
    j["maximizer"] = s.maximizer;
    for (const auto& warning : w.warnings) j["warnings"].push_back(warning);
    return j.dump() + "\n";
  }
  if (v == "pinsker") {
    const Ball ball = ball_of(p);
    const double beta = p.number("beta");
    const double eps = p.number("eps");
    const std::optional<double> alpha = ball.decay().alpha();
    const std::size_t n =
        p.has("n") ? p.count("n")
                   : default_truncation(eps, alpha ? std::min(*alpha, beta) : beta);
    const PinskerRisk r = pinsker_minimax_risk(beta, ball, eps, n);
    if (csv) return risk_csv(r.report);
    json j = risk_json(r.report);
    j["mu"] = r.mu;
    if (alpha) j["asymptote"] = asymptote_json(pinsker_asymptote(*alpha, beta, ball.p0(), eps));
    return j.dump() + "\n";
  }
  if (v == "rates") {
    double expected = 0.0;
    const std::vector<RatePoint> pts = rate_points(p, expected);
    const RateFit fit = rate_exponent(pts);
    return csv ? rate_csv(fit, expected) : rate_json(fit, expected).dump() + "\n";
  }
  if (v == "inverse") {
    const double eps = p.number("eps");
    InverseProblem problem;
    if (p.text("example") == "1")
      problem = PolynomialSpectrumRate{p.number("alpha"), p.number("gamma"),
                                       p.number("p0"), p.number("C")};
    else
      problem = ExponentialSpectrumRate{p.number("alpha"), p.number("gamma"),
                                        p.number("B"), p.number("p0")};
    const InverseAsymptote a = inverse_problem_asymptote(problem, eps);
    json j = inverse_json(a);
    j["exponent"] = p.text("example") == "1" ? a.eps_exponent : a.log_exponent;
    return j.dump() + "\n";
  }
  if (v == "maxiset") {
    const double beta = p.number("beta");
    const std::vector<double> grid = parse_eps_grid(p.text("eps-grid"));
    const auto pts = maxiset_diagnostic(power_decay_signal(p.number("decay"), beta),
                                        beta, grid);
    return csv ? maxiset_csv(pts) : maxiset_json(pts).dump() + "\n";
  }
  if (v == "concentration") {
    const DiagonalQuadraticForm q =
        p.has("diag") ? DiagonalQuadraticForm(parse_number_list(p.text("diag"), "--diag"))
                      : DiagonalQuadraticForm::identity(p.count("dim"));
    const double t = p.number("t");
    const TailCheck c = mc_tail_check(q, t, p.count("reps"), cmd.seed);
    json j = tail_json(c);
    j["dim"] = q.dim();
    j["t"] = t;
    return j.dump() + "\n";
  }
  if (v == "validate") {
    const Ball ball = ball_of(p);
    const double alpha =
        p.has("alpha") ? p.number("alpha") : *ball.decay().alpha();
    const double j0 = p.number("j0");
    const AssumptionReport r =
        validate_assumptions(ball.decay(), noise_of(p), alpha, p.count("n"),
                             static_cast<std::size_t>(std::max(0.0, j0)));
    return assumptions_json(r).dump() + "\n";
  }
  throw UsageError("unknown command '" + v + "'");
}

}  // namespace

Command parse_command(const std::vector<std::string>& args) {
  CLI::App app{"Minimax risk laboratory for the Gaussian sequence model", "seqlab"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::vector<std::pair<const FlagSpec*, CLI::Option*>>> options;
  std::map<std::string, CLI::App*> subs;
  static const std::vector<FlagSpec> common = {
      {"output", "json", "json | csv"},
      {"out", nullptr, "write the primary output to this file"},
      {"seed", "0", "random seed"},
  };

  for (const VerbSpec& vs : verbs()) {
    CLI::App* sub = app.add_subcommand(vs.verb, vs.help);
    subs[vs.verb] = sub;
    auto& store = storage[vs.verb];
    const auto add = [&](const FlagSpec& f) {
      std::string desc = f.help;
      if (f.fallback) desc += std::string(" [default: ") + f.fallback + "]";
      CLI::Option* opt = sub->add_option(std::string("--") + f.name, store[f.name], desc);
      options[vs.verb].push_back({&f, opt});
    };
    for (const FlagSpec& f : vs.flags) add(f);
    for (const FlagSpec& f : common) add(f);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) target = sub;
    throw HelpRequested(target->help());
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = e.get_name();
    throw UsageError(msg);
  }

  Command cmd;
  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    cmd.verb = name;
    for (const auto& [spec, opt] : options[name]) {
      if (opt->count() > 0)
        cmd.params[spec->name] = storage[name][spec->name];
      else if (spec->fallback)
        cmd.params[spec->name] = spec->fallback;
    }
  }
  const std::string output = cmd.params.at("output");
  if (output == "json")
    cmd.output = OutputFormat::json;
  else if (output == "csv")
    cmd.output = OutputFormat::csv;
  else
    throw UsageError("--output: expected json or csv, got '" + output + "'");
  if (auto it = cmd.params.find("out"); it != cmd.params.end()) cmd.out_path = it->second;
  const double seed = parse_number(cmd.params.at("seed"), "--seed");
  if (seed < 0.0 || seed != std::floor(seed) || seed > 9.007199254740992e15)
    throw UsageError("--seed: expected a nonnegative integer");
  cmd.seed = std::stoull(cmd.params.at("seed"));
  check(cmd);
  return cmd;
}

std::string describe(const Command& cmd) {
  json j;
  j["command"] = cmd.verb;
  j["params"] = cmd.params;
  return j.dump();
}

int execute_command(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    emit(cmd, execute_to_string(cmd), out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const seqlab::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_command(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << describe(cmd) << "\n";
  return execute_command(cmd, out, err);
}

}  // namespace seqlab::cli

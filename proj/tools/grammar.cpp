#include "grammar.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

#include "seqlab/error.hpp"

namespace seqlab::cli {
namespace {

std::string str(std::string_view s) { return std::string(s); }

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view spec,
                                                         std::string_view what) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw UsageError(str(what) + ": expected <kind>:<parameters>, got '" +
                     str(spec) + "'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

// "k1=v1,k2=v2" with an optional leading "@path" item.
struct KeyValues {
  std::string path;
  std::map<std::string, std::string, std::less<>> values;
};

KeyValues parse_key_values(std::string_view body, std::string_view what) {
  KeyValues kv;
  for (std::string_view item : split(body, ',')) {
    if (item.empty()) throw UsageError(str(what) + ": empty parameter");
    if (item.front() == '@') {
      if (!kv.path.empty()) throw UsageError(str(what) + ": two table paths");
      kv.path = str(item.substr(1));
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw UsageError(str(what) + ": expected key=value, got '" + str(item) + "'");
    kv.values.emplace(str(item.substr(0, eq)), str(item.substr(eq + 1)));
  }
  return kv;
}

double take(KeyValues& kv, std::string_view key, std::string_view what) {
  const auto it = kv.values.find(key);
  if (it == kv.values.end())
    throw UsageError(str(what) + ": missing '" + str(key) + "='");
  const double v = parse_number(it->second, str(what) + " " + str(key));
  kv.values.erase(it);
  return v;
}

void require_consumed(const KeyValues& kv, std::string_view what) {
  if (!kv.values.empty())
    throw UsageError(str(what) + ": unknown parameter '" +
                     kv.values.begin()->first + "'");
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  if (s.empty()) throw UsageError(str(what) + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError(str(what) + ": not a finite number: '" + s + "'");
  return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const double v = parse_number(text, what);
  if (v < 1.0 || v != std::floor(v) || v > 1e15)
    throw UsageError(str(what) + ": expected a positive integer, got '" +
                     str(text) + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_number_list(std::string_view text,
                                      std::string_view what) {
  std::vector<double> out;
  for (std::string_view item : split(text, ','))
    out.push_back(parse_number(item, what));
  return out;
}

std::vector<double> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open table '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(parse_number(std::string_view(line).substr(first, last - first + 1),
                               "table " + path));
  }
  if (out.empty()) throw UsageError("table '" + path + "' is empty");
  return out;
}

NoiseProfile parse_noise(std::string_view spec) {
  const auto [kind, body] = split_kind(spec, "--sigma");
  if (kind == "const") return NoiseProfile::constant(parse_number(body, "--sigma const"));
  KeyValues kv = parse_key_values(body, "--sigma");
  if (kind == "power") {
    const double c = take(kv, "c", "--sigma power");
    const double p = take(kv, "p", "--sigma power");
    require_consumed(kv, "--sigma power");
    return NoiseProfile::power(c, p);
  }
  if (kind == "table") {
    if (kv.path.empty()) throw UsageError("--sigma table: expected @<path>");
    require_consumed(kv, "--sigma table");
    return NoiseProfile::table(read_table(kv.path));
  }
  throw UsageError("--sigma: unknown kind '" + str(kind) + "'");
}

Ball parse_ball(std::string_view spec) {
  const auto [kind, body] = split_kind(spec, "--ball");
  KeyValues kv = parse_key_values(body, "--ball");
  if (kind == "power") {
    const double alpha = take(kv, "alpha", "--ball power");
    const double p0 = take(kv, "p0", "--ball power");
    require_consumed(kv, "--ball power");
    return Ball(DecaySequence::power(alpha), p0);
  }
  if (kind == "table") {
    if (kv.path.empty()) throw UsageError("--ball table: expected @<path>");
    const double p0 = take(kv, "p0", "--ball table");
    require_consumed(kv, "--ball table");
    return Ball(DecaySequence::table(read_table(kv.path)), p0);
  }
  throw UsageError("--ball: unknown kind '" + str(kind) + "'");
}

OperatorSpectrum parse_spectrum(std::string_view spec) {
  const auto [kind, body] = split_kind(spec, "--spectrum");
  KeyValues kv = parse_key_values(body, "--spectrum");
  if (kind == "power") {
    const double c = take(kv, "C", "--spectrum power");
    const double gamma = take(kv, "gamma", "--spectrum power");
    require_consumed(kv, "--spectrum power");
    return OperatorSpectrum::power(c, gamma);
  }
  if (kind == "exp") {
    const double c = take(kv, "C", "--spectrum exp");
    const double kappa = take(kv, "kappa", "--spectrum exp");
    const double b = take(kv, "B", "--spectrum exp");
    const double gamma = take(kv, "gamma", "--spectrum exp");
    require_consumed(kv, "--spectrum exp");
    return OperatorSpectrum::exponential(c, kappa, b, gamma);
  }
  throw UsageError("--spectrum: unknown kind '" + str(kind) + "'");
}

std::vector<double> parse_eps_grid(std::string_view spec) {
  std::vector<double> grid = parse_number_list(spec, "--eps-grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw UsageError("--eps-grid: values must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      throw UsageError("--eps-grid: values must be strictly decreasing");
  }
  return grid;
}

}  // namespace seqlab::cli

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "command.hpp"
#include "grammar.hpp"

namespace seqlab::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(ParseCommand, WeightsExample) {
  const Command c = parse_command({"weights", "--family", "minimax", "--ball",
                                   "power:alpha=1,p0=1", "--sigma", "const:1", "--eps",
                                   "1", "--n", "8", "--output", "csv"});
  EXPECT_EQ(c.verb, "weights");
  EXPECT_EQ(c.output, OutputFormat::csv);
  EXPECT_EQ(c.params.at("n"), "8");
  EXPECT_EQ(c.params.at("seed"), "0");
  EXPECT_EQ(c.seed, 0u);
  EXPECT_FALSE(c.out_path.has_value());
}

TEST(ParseCommand, RatesExampleFillsDefaults) {
  const Command c = parse_command({"rates", "--family", "asymptotic", "--alpha", "1",
                                   "--p0", "1", "--eps-grid", "1e-2,1e-3,1e-4"});
  EXPECT_EQ(c.verb, "rates");
  EXPECT_EQ(c.output, OutputFormat::json);
  EXPECT_EQ(c.params.at("sigma"), "const:1");
  EXPECT_EQ(c.params.count("n"), 0u);
}

TEST(ParseCommand, UsageErrorsNameTheFlag) {
  const std::vector<std::vector<std::string>> bad = {
      {"weights", "--alpha"},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1", "--eps", "1",
       "--n", "8", "--bogus", "3"},
      {"frobnicate"},
      {},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1", "--eps", "-1",
       "--n", "8"},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1", "--eps", "1", "--n",
       "8"},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1", "--eps", "1x",
       "--n", "8"},
      {"rates", "--family", "asymptotic", "--alpha", "1", "--eps-grid", "1e-3,1e-2"},
      {"concentration", "--t", "1", "--reps", "10"},
      {"inverse", "--example", "3", "--alpha", "1", "--gamma", "1", "--eps", "0.1"},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1", "--eps", "1",
       "--n", "8", "--output", "xml"},
      {"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1", "--eps", "1",
       "--n", "8", "--seed", "-4"},
  };
  for (const auto& args : bad) {
    const Outcome o = invoke(args);
    EXPECT_EQ(o.code, kExitUsage) << o.err;
    EXPECT_NE(o.err.find("usage error"), std::string::npos);
    EXPECT_TRUE(o.out.empty());
  }
  EXPECT_NE(invoke({"weights", "--alpha"}).err.find("alpha"), std::string::npos);
  EXPECT_NE(invoke({"weights", "--family", "minimax", "--ball", "power:alpha=1,p0=1",
                    "--eps", "1", "--n", "8", "--bogus", "3"})
                .err.find("bogus"),
            std::string::npos);
}

TEST(Execute, RiskExactHandSum) {
  const Outcome o = invoke({"risk-exact", "--family", "minimax", "--ball",
                            "power:alpha=1,p0=1", "--eps", "1", "--n", "3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_NEAR(j.at("value").get<double>(), 3.0 / 7 + 5.0 / 41 + 7.0 / 151, 1e-15);
  // Resolved parameters, defaults included, go to stderr.
  const json echo = json::parse(o.err.substr(0, o.err.find('\n')));
  EXPECT_EQ(echo.at("params").at("signal"), "worst-case");
  EXPECT_EQ(echo.at("params").at("sigma"), "const:1");
}

TEST(Execute, WeightsCsv) {
  const Outcome o = invoke({"weights", "--family", "minimax", "--ball",
                            "power:alpha=1,p0=1", "--eps", "1", "--n", "2", "--output",
                            "csv"});
  ASSERT_EQ(o.code, kExitOk);
  std::istringstream lines(o.out);
  std::string header, l1, l2;
  std::getline(lines, header);
  std::getline(lines, l1);
  std::getline(lines, l2);
  EXPECT_EQ(header, "j,lambda");
  EXPECT_EQ(std::stod(l1.substr(2)), 0.75 / 1.75);
  EXPECT_EQ(l1.substr(2), "0.42857142857142855");
  EXPECT_NEAR(std::stod(l2.substr(2)), 5.0 / 41.0, 1e-16);
}

TEST(Execute, Concentration) {
  const Outcome o =
      invoke({"concentration", "--dim", "8", "--t", "1", "--reps", "100000", "--seed", "0"});
  ASSERT_EQ(o.code, kExitOk);
  const json j = json::parse(o.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_NEAR(j.at("threshold").get<double>(), 15.657, 1e-3);
}

TEST(Execute, InverseExponent) {
  const Outcome o =
      invoke({"inverse", "--example", "1", "--alpha", "1", "--gamma", "1", "--eps", "1e-3"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_NEAR(j.at("exponent").get<double>(), 0.8, 1e-15);
  EXPECT_TRUE(j.at("value").is_null());
  EXPECT_TRUE(j.contains("flag"));
  const Outcome two = invoke({"inverse", "--example", "2", "--alpha", "1", "--gamma", "1",
                              "--eps", "4.5399929762484854e-05"});
  EXPECT_NEAR(json::parse(two.out).at("value").get<double>(), 0.01, 1e-15);
}

TEST(Execute, RatesSlope) {
  const Outcome o = invoke({"rates", "--family", "asymptotic", "--alpha", "1", "--p0", "1",
                            "--eps-grid", "1e-2,1e-3,1e-4"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_NEAR(json::parse(o.out).at("slope").get<double>(), 4.0 / 3.0, 0.05 * 4.0 / 3.0);
}

TEST(Execute, ComputationErrorExitsOne) {
  const Outcome o = invoke({"weights", "--family", "pinsker", "--beta", "1", "--radius",
                            "100", "--eps", "0.01", "--n", "5"});
  EXPECT_EQ(o.code, kExitComputation);
  EXPECT_NE(o.err.find("increase n"), std::string::npos);
}

TEST(Execute, ValidateReport) {
  const Outcome o = invoke({"validate", "--ball", "power:alpha=1,p0=1", "--sigma",
                            "power:c=1,p=-3", "--n", "10"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_TRUE(j.at("a1").at("pass").get<bool>());
  EXPECT_FALSE(j.at("a2").at("pass").get<bool>());
  EXPECT_EQ(j.at("a2").at("first_violation").get<int>(), 2);
}

TEST(Execute, RepeatRunsAreByteIdentical) {
  const std::vector<std::string> args = {"risk-mc", "--family", "minimax", "--ball",
                                         "power:alpha=1,p0=1", "--eps", "0.1", "--n",
                                         "64", "--reps", "3000", "--seed", "5"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> other = args;
  other.back() = "6";
  EXPECT_NE(invoke(other).out, a.out);
}

TEST(Execute, HelpExitsZero) {
  const Outcome o = invoke({"weights", "--help"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_NE(o.out.find("--family"), std::string::npos);
}

TEST(Execute, WritesToOutPath) {
  const auto dir = std::filesystem::temp_directory_path() / "seqlab_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "w.csv";
  const Outcome o = invoke({"weights", "--family", "minimax", "--ball",
                            "power:alpha=1,p0=1", "--eps", "1", "--n", "2", "--output",
                            "csv", "--out", path.string()});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "j,lambda");
  std::filesystem::remove_all(dir);
}

TEST(Grammar, Forms) {
  EXPECT_EQ(parse_noise("power:c=2,p=1")(3), 6.0);
  EXPECT_EQ(parse_noise("const:0.5")(10), 0.5);
  EXPECT_EQ(parse_ball("power:alpha=1,p0=2").p0(), 2.0);
  EXPECT_NEAR(parse_spectrum("power:C=2,gamma=1")(4), 0.5, 1e-15);
  EXPECT_EQ(parse_eps_grid("1e-1,1e-2"), (std::vector<double>{0.1, 0.01}));
  EXPECT_THROW(parse_noise("gauss:1"), UsageError);
  EXPECT_THROW(parse_eps_grid("0.1,0.1"), UsageError);
  EXPECT_THROW(parse_number("", "--x"), UsageError);
  EXPECT_THROW(parse_count("2.5", "--n"), UsageError);
}

}  // namespace
}  // namespace seqlab::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqlab::cli {

enum class OutputFormat { json, csv };

struct Command {
  std::string verb;
  // Every flag of the verb that was given or has a default, keyed without the
  // leading dashes.
  std::map<std::string, std::string> params;
  OutputFormat output = OutputFormat::json;
  std::optional<std::string> out_path;
  std::uint64_t seed = 0;
};

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Strict parse of argv (without the program name). Throws UsageError naming the
// offending flag.
Command parse_command(const std::vector<std::string>& args);

// One-line JSON of the resolved parameter set.
std::string describe(const Command& cmd);

// Runs a parsed command, writing the primary output to `out` (or to
// cmd.out_path). Returns an exit code; errors are reported on `err`.
int execute_command(const Command& cmd, std::ostream& out, std::ostream& err);

// parse + echo of the resolved parameters on `err` + execute.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace seqlab::cli

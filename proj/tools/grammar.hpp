#pragma once

// Text grammars for the command line:
//   --sigma    const:<v> | power:c=<v>,p=<v> | table:@<path>
//   --ball     power:alpha=<v>,p0=<v> | table:@<path>,p0=<v>
//   --spectrum power:C=<v>,gamma=<v> | exp:C=<v>,kappa=<v>,B=<v>,gamma=<v>
//   --eps-grid comma-separated, strictly decreasing
// Tables are CSV files with one value per line; blank lines and lines starting
// with '#' are skipped.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/geometry.hpp"
#include "seqlab/model.hpp"

namespace seqlab::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text, std::string_view what);
std::size_t parse_count(std::string_view text, std::string_view what);
std::vector<double> parse_number_list(std::string_view text,
                                      std::string_view what);
std::vector<double> read_table(const std::string& path);

NoiseProfile parse_noise(std::string_view spec);
Ball parse_ball(std::string_view spec);
OperatorSpectrum parse_spectrum(std::string_view spec);
std::vector<double> parse_eps_grid(std::string_view spec);

}  // namespace seqlab::cli

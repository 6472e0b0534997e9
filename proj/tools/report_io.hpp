#pragma once

// JSON (one object per line) and CSV (17 significant digits) renderings.

#include <string>
#include <vector>

#include <json.hpp>

#include "seqlab/seqlab.hpp"

namespace seqlab::cli {

std::string format_double(double v);

nlohmann::json risk_json(const RiskReport& r);
std::string risk_csv(const RiskReport& r);

nlohmann::json weights_json(const DiagonalWeights& w);
std::string weights_csv(const DiagonalWeights& w);

nlohmann::json rate_json(const RateFit& fit, double expected_exponent);
// epsilon,risk,normalized with normalized = risk / eps^expected_exponent.
std::string rate_csv(const RateFit& fit, double expected_exponent);

nlohmann::json maxiset_json(const std::vector<MaxisetPoint>& pts);
std::string maxiset_csv(const std::vector<MaxisetPoint>& pts);

nlohmann::json asymptote_json(const PinskerAsymptote& a);
nlohmann::json inverse_json(const InverseAsymptote& a);
nlohmann::json tail_json(const TailCheck& c);
nlohmann::json assumptions_json(const AssumptionReport& r);

}  // namespace seqlab::cli

#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "stieltjes/improper.hpp"
#include "stieltjes/results.hpp"

namespace stieltjes::cli {

nlohmann::json to_json(const ExtendedReal& v);
nlohmann::json to_json(const ConvergenceTrace& t);
nlohmann::json to_json(const WitnessReport& w);
nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const ComparisonReport& c);

/// CSV with header "n,cells,mesh,sum", shortest round-trip decimals and
/// '\n' line endings.
void write_trace_csv(const ConvergenceTrace& t, std::ostream& out);

/// Plain-text rendering of a result document produced by the commands.
std::string render_text(const nlohmann::json& doc);

}  // namespace stieltjes::cli

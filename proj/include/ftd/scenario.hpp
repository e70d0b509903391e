/*
   Copyright 2026 The ftd-pricer Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ftd/engine.hpp"
#include "ftd/numerics.hpp"
#include "ftd/pricing.hpp"

#include <nlohmann/json_fwd.hpp>

namespace ftd {

/// Raised on malformed or invalid scenario input; the message names the
/// offending field.
class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class EstimatorChoice { Paper, Standard, Both };

std::string to_string(EstimatorChoice choice);
EstimatorChoice estimator_choice_from_string(const std::string& s);

/// A fully validated pricing scenario: basket, correlation, discounting and
/// run configuration, plus the knobs needed to echo the input back out.
struct Scenario {
    BasketSpec basket;
    CorrelationMatrix correlation = CorrelationMatrix::identity(1);
    DiscountCurve curve;
    SimulationConfig config;
    EstimatorChoice estimator = EstimatorChoice::Both;
    double payment_step = 0.0;
    bool uniform_correlation = false;
    double uniform_rho = 0.0;
};

/// Parses and validates a JSON scenario document. Field errors are reported
/// as ScenarioError naming the field, e.g. "names[2].recovery: ...".
Scenario parse_scenario(const std::string& text);

/// parse_scenario on the contents of a file.
Scenario load_scenario(const std::filesystem::path& path);

/// Scenario echo in the exact schema parse_scenario accepts, so a report's
/// embedded scenario can be re-run verbatim.
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Full machine-readable report: scenario echo, both estimators, leg means,
/// run metadata and an optional convergence table.
nlohmann::json report_to_json(const Scenario& scenario, const RunResult& result,
                              std::span<const ConvergenceRow> convergence = {});

/// Per-path table with header
/// path,T_1,...,T_n,first_time,first_index,premium_pv,protection_pv;
/// numbers carry full precision so the dump re-aggregates bit-exactly.
void write_paths_csv(std::ostream& os, std::span<const PathOutcome> outcomes);

/// Reads a dump produced by write_paths_csv.
std::vector<PathOutcome> read_paths_csv(std::istream& is);

}  // namespace ftd

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

#include "ftd/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ftd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ScenarioError(field + ": " + what);
}

const json& require_field(const json& j, const char* field) {
    const auto it = j.find(field);
    if (it == j.end()) fail(field, "required field is missing");
    return *it;
}

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
}

std::uint64_t require_count(const json& j, const std::string& field) {
    if (!j.is_number_unsigned()) fail(field, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::vector<CreditName> parse_names(const json& j) {
    if (!j.is_array()) fail("names", "expected an array of {id, hazard_rate, recovery}");
    if (j.empty()) fail("names", "at least one name is required");
    std::vector<CreditName> names;
    names.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string prefix = "names[" + std::to_string(i) + "]";
        const json& entry = j[i];
        if (!entry.is_object()) fail(prefix, "expected an object");
        CreditName name;
        const auto id = entry.find("id");
        name.id = (id != entry.end() && id->is_string()) ? id->get<std::string>()
                                                         : "name" + std::to_string(i + 1);
        name.hazard_rate = require_number(require_field(entry, "hazard_rate"),
                                          prefix + ".hazard_rate");
        if (!(name.hazard_rate > 0.0)) fail(prefix + ".hazard_rate", "must be > 0");
        name.recovery = require_number(require_field(entry, "recovery"), prefix + ".recovery");
        if (!(name.recovery >= 0.0 && name.recovery < 1.0))
            fail(prefix + ".recovery", "must lie in [0, 1)");
        names.push_back(std::move(name));
    }
    return names;
}

CorrelationMatrix parse_correlation(const json& j, std::size_t n, bool* uniform, double* rho) {
    *uniform = false;
    *rho = 0.0;
    if (j.is_object()) {
        const json& u = require_field(j, "uniform");
        const double r = require_number(u, "correlation.uniform");
        if (!(r >= -1.0 && r <= 1.0)) fail("correlation.uniform", "must lie in [-1, 1]");
        *uniform = true;
        *rho = r;
        return CorrelationMatrix::uniform(n, r);
    }
    if (j.is_array()) {
        if (j.size() != n)
            fail("correlation", "matrix must be " + std::to_string(n) + "x" + std::to_string(n) +
                                    " to match names");
        std::vector<std::vector<double>> rows;
        rows.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string prefix = "correlation[" + std::to_string(i) + "]";
            if (!j[i].is_array() || j[i].size() != n) fail(prefix, "expected a row of length " +
                                                                       std::to_string(n));
            std::vector<double> row;
            row.reserve(n);
            for (std::size_t k = 0; k < n; ++k)
                row.push_back(require_number(j[i][k], prefix + "[" + std::to_string(k) + "]"));
            rows.push_back(std::move(row));
        }
        try {
            return CorrelationMatrix::from_rows(rows);
        } catch (const std::invalid_argument& e) {
            fail("correlation", e.what());
        }
    }
    fail("correlation", "expected {\"uniform\": rho} or a full matrix");
}

}  // namespace

std::string to_string(EstimatorChoice choice) {
    switch (choice) {
        case EstimatorChoice::Paper: return "paper";
        case EstimatorChoice::Standard: return "standard";
        case EstimatorChoice::Both: return "both";
    }
    return "both";
}

EstimatorChoice estimator_choice_from_string(const std::string& s) {
    if (s == "paper") return EstimatorChoice::Paper;
    if (s == "standard") return EstimatorChoice::Standard;
    if (s == "both") return EstimatorChoice::Both;
    throw ScenarioError("estimator: expected \"paper\", \"standard\" or \"both\", got \"" + s +
                        "\"");
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario: top level must be an object");

    Scenario s;
    s.basket.names = parse_names(require_field(doc, "names"));
    const std::size_t n = s.basket.names.size();

    s.correlation = parse_correlation(require_field(doc, "correlation"), n,
                                      &s.uniform_correlation, &s.uniform_rho);

    s.curve.rate = require_number(require_field(doc, "rate"), "rate");

    s.basket.maturity = require_number(require_field(doc, "maturity"), "maturity");
    if (!(s.basket.maturity > 0.0)) fail("maturity", "must be > 0");

    s.payment_step = require_number(require_field(doc, "payment_step"), "payment_step");
    if (!(s.payment_step > 0.0)) fail("payment_step", "must be > 0");
    if (s.payment_step > s.basket.maturity)
        fail("payment_step", "exceeds maturity, schedule would be empty");
    s.basket.schedule = default_schedule(s.basket.maturity, s.payment_step);

    s.config.n_paths = require_count(require_field(doc, "paths"), "paths");
    if (s.config.n_paths == 0) fail("paths", "must be >= 1");
    s.config.master_seed = require_count(require_field(doc, "seed"), "seed");

    const json& est = require_field(doc, "estimator");
    if (!est.is_string()) fail("estimator", "expected a string");
    s.estimator = estimator_choice_from_string(est.get<std::string>());

    if (const auto it = doc.find("workers"); it != doc.end()) {
        const std::uint64_t w = require_count(*it, "workers");
        if (w == 0) fail("workers", "must be >= 1");
        s.config.workers = static_cast<unsigned>(w);
    }
    if (const auto it = doc.find("batch_count"); it != doc.end()) {
        const std::uint64_t b = require_count(*it, "batch_count");
        if (b == 0) fail("batch_count", "must be >= 1");
        s.config.batch_count = b;
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario file: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

json scenario_to_json(const Scenario& scenario) {
    json names = json::array();
    for (const CreditName& name : scenario.basket.names)
        names.push_back(
            {{"id", name.id}, {"hazard_rate", name.hazard_rate}, {"recovery", name.recovery}});

    json correlation;
    if (scenario.uniform_correlation) {
        correlation = json{{"uniform", scenario.uniform_rho}};
    } else {
        correlation = json::array();
        const std::size_t n = scenario.correlation.size();
        for (std::size_t i = 0; i < n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < n; ++j) row.push_back(scenario.correlation(i, j));
            correlation.push_back(std::move(row));
        }
    }

    return json{{"names", std::move(names)},
                {"correlation", std::move(correlation)},
                {"rate", scenario.curve.rate},
                {"maturity", scenario.basket.maturity},
                {"payment_step", scenario.payment_step},
                {"paths", scenario.config.n_paths},
                {"seed", scenario.config.master_seed},
                {"estimator", to_string(scenario.estimator)},
                {"workers", scenario.config.workers},
                {"batch_count", scenario.config.batch_count}};
}

json report_to_json(const Scenario& scenario, const RunResult& result,
                    std::span<const ConvergenceRow> convergence) {
    const PricingReport& r = result.report;
    json report{{"spread_paper", r.spread_paper},
                {"spread_standard", r.spread_standard},
                {"se_paper", r.se_paper},
                {"se_standard", r.se_standard},
                {"mean_premium_pv", r.mean_premium_pv},
                {"mean_protection_pv", r.mean_protection_pv},
                {"n_paths", r.n_paths},
                {"seed", r.seed},
                {"batch_count", r.batch_count},
                {"estimator", to_string(scenario.estimator)},
                {"conventions", r.conventions}};
    json out{{"scenario", scenario_to_json(scenario)},
             {"report", std::move(report)},
             {"run", json{{"wall_time_s", result.wall_time_s},
                          {"paths_per_second", result.paths_per_second}}}};
    if (!convergence.empty()) {
        json rows = json::array();
        for (const ConvergenceRow& row : convergence)
            rows.push_back({{"paths", row.n_paths},
                            {"spread_paper", row.spread_paper},
                            {"se_paper", row.se_paper},
                            {"spread_standard", row.spread_standard},
                            {"se_standard", row.se_standard}});
        out["convergence"] = std::move(rows);
    }
    return out;
}

namespace {

void append_full_precision(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    line += buf;
}

}  // namespace

void write_paths_csv(std::ostream& os, std::span<const PathOutcome> outcomes) {
    const std::size_t n = outcomes.empty() ? 0 : outcomes.front().times.size();
    std::string header = "path";
    for (std::size_t j = 1; j <= n; ++j) header += ",T_" + std::to_string(j);
    header += ",first_time,first_index,premium_pv,protection_pv";
    os << header << '\n';

    std::string line;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const PathOutcome& o = outcomes[i];
        line.clear();
        line += std::to_string(i);
        for (const double t : o.times) {
            line += ',';
            append_full_precision(line, t);
        }
        line += ',';
        append_full_precision(line, o.first_time);
        line += ',';
        line += std::to_string(o.first_index);
        line += ',';
        append_full_precision(line, o.premium_pv);
        line += ',';
        append_full_precision(line, o.protection_pv);
        os << line << '\n';
    }
}

std::vector<PathOutcome> read_paths_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("paths csv: missing header");
    std::size_t columns = 1;
    for (const char c : line)
        if (c == ',') ++columns;
    if (columns < 5) throw std::runtime_error("paths csv: malformed header");
    const std::size_t n = columns - 5;

    std::vector<PathOutcome> outcomes;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            cells.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (cells.size() != columns) throw std::runtime_error("paths csv: malformed row");
        const auto as_double = [](const std::string& cell) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw std::runtime_error("paths csv: bad number \"" + cell + "\"");
            return v;
        };
        const auto as_index = [](const std::string& cell) {
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw std::runtime_error("paths csv: bad index \"" + cell + "\"");
            return v;
        };
        PathOutcome o;
        o.times.reserve(n);
        for (std::size_t j = 0; j < n; ++j) o.times.push_back(as_double(cells[1 + j]));
        o.first_time = as_double(cells[1 + n]);
        o.first_index = as_index(cells[2 + n]);
        o.premium_pv = as_double(cells[3 + n]);
        o.protection_pv = as_double(cells[4 + n]);
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

}  // namespace ftd

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

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftd/engine.hpp"
#include "ftd/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void print_summary(const ftd::Scenario& scenario, const ftd::RunResult& result,
                   const std::vector<ftd::ConvergenceRow>& convergence) {
    const ftd::PricingReport& r = result.report;
    std::printf("names: %zu   maturity: %g y   payment step: %g y   rate: %g\n",
                scenario.basket.names.size(), scenario.basket.maturity, scenario.payment_step,
                scenario.curve.rate);
    if (scenario.uniform_correlation)
        std::printf("correlation: uniform rho = %g\n", scenario.uniform_rho);
    else
        std::printf("correlation: full %zux%zu matrix\n", scenario.correlation.size(),
                    scenario.correlation.size());
    std::printf("paths: %zu   seed: %llu   workers: %u\n", r.n_paths,
                static_cast<unsigned long long>(r.seed), scenario.config.workers);

    const bool show_paper = scenario.estimator != ftd::EstimatorChoice::Standard;
    const bool show_standard = scenario.estimator != ftd::EstimatorChoice::Paper;
    if (show_paper)
        std::printf("spread (paper, mean of per-path ratios): %.6f   (SE %.6f)\n",
                    r.spread_paper, r.se_paper);
    if (show_standard)
        std::printf("spread (standard, ratio of leg means):   %.6f   (SE %.6f, %zu batches)\n",
                    r.spread_standard, r.se_standard, r.batch_count);
    std::printf("premium leg mean PV (per unit spread):   %.6f\n", r.mean_premium_pv);
    std::printf("protection leg mean PV:                  %.6f\n", r.mean_protection_pv);

    if (!convergence.empty()) {
        std::printf("convergence:\n");
        std::printf("  %10s  %12s  %10s  %12s  %10s\n", "paths", "paper", "SE", "standard", "SE");
        for (const ftd::ConvergenceRow& row : convergence)
            std::printf("  %10zu  %12.6f  %10.6f  %12.6f  %10.6f\n", row.n_paths,
                        row.spread_paper, row.se_paper, row.spread_standard, row.se_standard);
    }
    std::printf("runtime: %.3f s   (%.2fM paths/s)\n", result.wall_time_s,
                result.paths_per_second / 1e6);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte-Carlo pricer for first-to-default basket swaps under a Gaussian copula"};
    app.get_formatter()->column_width(34);

    std::string config_path;
    std::string output_path;
    std::string dump_path;
    std::string estimator;
    std::vector<std::size_t> checkpoints;
    std::uint64_t paths = 0;
    bool paths_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned workers = 0;

    app.add_option("--config", config_path, "scenario file (JSON)")->required();
    app.add_option("--paths", paths, "override the scenario's path count")
        ->each([&](const std::string&) { paths_set = true; });
    app.add_option("--seed", seed, "override the scenario's master seed")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--estimator", estimator, "paper | standard | both");
    app.add_option("--workers", workers, "worker threads (results do not depend on this)");
    app.add_option("--output", output_path, "write a JSON report");
    app.add_option("--paths-dump", dump_path, "write the per-path table (CSV)");
    app.add_option("--checkpoints", checkpoints, "convergence checkpoints, e.g. 100,1000,10000")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    ftd::Scenario scenario;
    try {
        scenario = ftd::load_scenario(config_path);
        if (paths_set) {
            if (paths == 0) throw ftd::ScenarioError("--paths: must be >= 1");
            scenario.config.n_paths = paths;
        }
        if (seed_set) scenario.config.master_seed = seed;
        if (workers > 0) scenario.config.workers = workers;
        if (!estimator.empty())
            scenario.estimator = ftd::estimator_choice_from_string(estimator);
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    ftd::RunResult result;
    std::vector<ftd::ConvergenceRow> convergence;
    try {
        result = ftd::run_simulation(scenario.basket, scenario.correlation, scenario.curve,
                                     scenario.config);
        if (!checkpoints.empty())
            convergence = ftd::convergence_report(result.outcomes, checkpoints,
                                                  scenario.config.batch_count);
    } catch (const std::logic_error& e) {
        // bad inputs, including a correlation matrix that fails to factorize
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }

    print_summary(scenario, result, convergence);

    try {
        if (!output_path.empty()) {
            std::ofstream out(output_path);
            if (!out) throw std::runtime_error("cannot open " + output_path);
            out << ftd::report_to_json(scenario, result, convergence).dump(2) << '\n';
            if (!out) throw std::runtime_error("failed writing " + output_path);
        }
        if (!dump_path.empty()) {
            std::ofstream out(dump_path);
            if (!out) throw std::runtime_error("cannot open " + dump_path);
            ftd::write_paths_csv(out, result.outcomes);
            if (!out) throw std::runtime_error("failed writing " + dump_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

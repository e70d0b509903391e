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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ftd/numerics.hpp"
#include "ftd/pricing.hpp"

namespace ftd {

struct SimulationConfig {
    std::size_t n_paths = 0;        // >= 1
    std::uint64_t master_seed = 0;  // any value
    unsigned workers = 1;           // >= 1
    std::size_t batch_count = 100;  // batches for the ratio-of-means SE
};

struct RunResult {
    PricingReport report;
    double wall_time_s = 0.0;
    double paths_per_second = 0.0;
    std::vector<PathOutcome> outcomes;  // one entry per path, in path order
};

/// Fills out with independent standard normals from the substream of the
/// given path. A pure function of (master_seed, path_index, position):
/// counter-based, so any path's stream can be generated without touching
/// the others. Workers never share generator state, and the result of a
/// run is bit-identical for a fixed (master_seed, n_paths) regardless of
/// how paths are split across workers.
void substream_normals(std::uint64_t master_seed, std::uint64_t path_index,
                       std::span<double> out);
std::vector<double> substream_normals(std::uint64_t master_seed, std::uint64_t path_index,
                                      std::size_t n);

/// Runs the Monte-Carlo pricing: per path draw independent normals from the
/// path substream, correlate through the Cholesky factor, map to default
/// times and value both legs; then aggregate both spread estimators over
/// the outcomes in path order.
/// Throws on invalid configuration; NotPsdError propagates from the
/// factorization.
RunResult run_simulation(const BasketSpec& basket, const CorrelationMatrix& sigma,
                         const DiscountCurve& curve, const SimulationConfig& config);

/// One line of the convergence table: estimates over the first n_paths
/// paths, exactly as a fresh run with that path count would report them.
struct ConvergenceRow {
    std::size_t n_paths = 0;
    double spread_paper = 0.0;
    double se_paper = 0.0;
    double spread_standard = 0.0;
    double se_standard = 0.0;
};

/// Evaluates both estimators on each prefix of the outcome list given by
/// checkpoints (ascending, each in [1, outcomes.size()]).
std::vector<ConvergenceRow> convergence_report(std::span<const PathOutcome> outcomes,
                                               std::span<const std::size_t> checkpoints,
                                               std::size_t batch_count = 100);

}  // namespace ftd

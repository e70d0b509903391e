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

#include "ftd/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ftd/copula.hpp"

namespace ftd {

namespace {

// splitmix64: the per-path stream is a window of the sequence
// mix(seed + gamma*counter) with counter = path_index * 2^32 + position.
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC909ull;

inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform strictly inside (0,1): the 53-bit mantissa offset by 1/2 ulp
// keeps inverse-CDF inputs away from both endpoints.
inline double to_open_unit(std::uint64_t x) noexcept {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

void validate(const BasketSpec& basket, const CorrelationMatrix& sigma,
              const SimulationConfig& config) {
    if (basket.names.empty()) throw std::invalid_argument("run_simulation: basket has no names");
    if (!(basket.maturity > 0.0))
        throw std::invalid_argument("run_simulation: maturity must be > 0");
    for (std::size_t j = 0; j < basket.names.size(); ++j) {
        const CreditName& name = basket.names[j];
        if (!(name.hazard_rate > 0.0))
            throw std::invalid_argument("run_simulation: names[" + std::to_string(j) +
                                        "] hazard_rate must be > 0");
        if (!(name.recovery >= 0.0 && name.recovery < 1.0))
            throw std::invalid_argument("run_simulation: names[" + std::to_string(j) +
                                        "] recovery must lie in [0, 1)");
    }
    if (!basket.schedule.empty() && basket.schedule.times().back() > basket.maturity)
        throw std::invalid_argument("run_simulation: payment dates extend past maturity");
    if (sigma.size() != basket.names.size())
        throw std::invalid_argument("run_simulation: correlation size does not match basket");
    if (config.n_paths == 0) throw std::invalid_argument("run_simulation: n_paths must be >= 1");
    if (config.workers == 0) throw std::invalid_argument("run_simulation: workers must be >= 1");
    if (config.n_paths > (1ull << 32))
        throw std::invalid_argument("run_simulation: more than 2^32 paths is unsupported");
}

}  // namespace

void substream_normals(std::uint64_t master_seed, std::uint64_t path_index,
                       std::span<double> out) {
    const std::uint64_t base = mix64(master_seed ^ kSeedSalt);
    const std::uint64_t window = path_index << 32;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::uint64_t counter = window + static_cast<std::uint64_t>(j) + 1;
        out[j] = std_normal_inv(to_open_unit(mix64(base + kGamma * counter)));
    }
}

std::vector<double> substream_normals(std::uint64_t master_seed, std::uint64_t path_index,
                                      std::size_t n) {
    std::vector<double> out(n);
    substream_normals(master_seed, path_index, out);
    return out;
}

RunResult run_simulation(const BasketSpec& basket, const CorrelationMatrix& sigma,
                         const DiscountCurve& curve, const SimulationConfig& config) {
    validate(basket, sigma, config);
    const CholeskyFactor l = cholesky(sigma);
    const std::size_t n = basket.names.size();
    const std::size_t n_paths = config.n_paths;

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<PathOutcome> outcomes(n_paths);
    const auto run_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> z(n);
        std::vector<double> y(n);
        for (std::size_t i = lo; i < hi; ++i) {
            substream_normals(config.master_seed, i, z);
            sample_latent(l, z, y);
            DefaultTimeVector times = latent_to_default_times(y, basket.names);
            outcomes[i] = value_path(std::move(times), basket, curve);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max<unsigned>(config.workers, 1u), n_paths);
    if (workers <= 1) {
        run_range(0, n_paths);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * n_paths / workers;
            const std::size_t hi = (w + 1) * n_paths / workers;
            pool.emplace_back([&, lo, hi, w] {
                try {
                    run_range(lo, hi);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Aggregation is a sequential fold in path order, so the report does not
    // depend on how the paths were partitioned above.
    PricingReport report;
    const EstimatorResult paper = spread_estimator_paper(outcomes);
    const EstimatorResult standard = spread_estimator_standard(outcomes, config.batch_count);
    report.spread_paper = paper.spread;
    report.se_paper = paper.std_error;
    report.spread_standard = standard.spread;
    report.se_standard = standard.std_error;
    double sum_vl = 0.0;
    double sum_vr = 0.0;
    for (const PathOutcome& o : outcomes) {
        sum_vl += o.premium_pv;
        sum_vr += o.protection_pv;
    }
    report.mean_premium_pv = sum_vl / static_cast<double>(n_paths);
    report.mean_protection_pv = sum_vr / static_cast<double>(n_paths);
    report.n_paths = n_paths;
    report.seed = config.master_seed;
    report.batch_count = config.batch_count;
    report.conventions = pricing_conventions();

    const auto t1 = std::chrono::steady_clock::now();
    RunResult result;
    result.report = std::move(report);
    result.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    result.paths_per_second =
        result.wall_time_s > 0.0 ? static_cast<double>(n_paths) / result.wall_time_s : 0.0;
    result.outcomes = std::move(outcomes);
    return result;
}

std::vector<ConvergenceRow> convergence_report(std::span<const PathOutcome> outcomes,
                                               std::span<const std::size_t> checkpoints,
                                               std::size_t batch_count) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(checkpoints.size());
    std::size_t prev = 0;
    for (const std::size_t k : checkpoints) {
        if (k <= prev)
            throw std::invalid_argument("convergence_report: checkpoints must be ascending");
        if (k > outcomes.size())
            throw std::invalid_argument("convergence_report: checkpoint " + std::to_string(k) +
                                        " exceeds the number of paths");
        prev = k;
        const std::span<const PathOutcome> prefix = outcomes.subspan(0, k);
        const EstimatorResult paper = spread_estimator_paper(prefix);
        const EstimatorResult standard = spread_estimator_standard(prefix, batch_count);
        rows.push_back(
            ConvergenceRow{k, paper.spread, paper.std_error, standard.spread, standard.std_error});
    }
    return rows;
}

}  // namespace ftd

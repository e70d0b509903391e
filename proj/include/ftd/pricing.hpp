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
#include <string>
#include <vector>

#include "ftd/copula.hpp"
#include "ftd/survival.hpp"

namespace ftd {

/// Flat continuously compounded short rate; B_t = exp(-r t).
struct DiscountCurve {
    double rate = 0.0;

    double discount(double t) const;
};

/// Strictly increasing premium payment dates, all in (0, maturity].
class PaymentSchedule {
public:
    PaymentSchedule() = default;

    /// Validates ordering and positivity.
    explicit PaymentSchedule(std::vector<double> times);

    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t count() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

private:
    std::vector<double> times_;
};

/// Regular schedule step, 2*step, ... up to and including the maturity when
/// it divides evenly. Throws std::domain_error for non-positive inputs.
PaymentSchedule default_schedule(double maturity, double step);

/// The n names of the basket plus contract terms. Face value is 1 per name.
struct BasketSpec {
    std::vector<CreditName> names;
    double maturity = 0.0;  // years
    PaymentSchedule schedule;
};

/// One simulated path: per-name default times, the first default, and the
/// present values of both legs (premium leg per unit spread).
struct PathOutcome {
    DefaultTimeVector times;
    double first_time = 0.0;
    std::size_t first_index = 0;
    double premium_pv = 0.0;     // >= 0, per unit spread
    double protection_pv = 0.0;  // in [0, 1]
};

/// Spread point estimate with its standard error.
struct EstimatorResult {
    double spread = 0.0;
    double std_error = 0.0;
};

/// PV of the unit-spread premium stream on one path: sum of exp(-r t_k)
/// over payment dates strictly before the first default. A default on a
/// payment date cancels that payment.
double premium_leg_pv(double first_time, const PaymentSchedule& schedule,
                      const DiscountCurve& curve) noexcept;

/// PV of the protection payment on one path: (1 - R_j) discounted to the
/// first default time when it falls strictly before maturity, else 0.
double protection_leg_pv(double first_time, std::size_t first_index, const BasketSpec& basket,
                         const DiscountCurve& curve);

/// First default (ties resolve to the lowest name index) plus both leg PVs.
PathOutcome value_path(DefaultTimeVector times, const BasketSpec& basket,
                       const DiscountCurve& curve);

/// Mean-of-ratios estimator: average over paths of VR/VL, counting paths
/// with no premium payment (VL = 0) as ratio 0. This replicates the
/// reference simulation and is biased low against the ratio-of-means
/// estimator; both are always reported. SE is the sample standard deviation
/// of the per-path ratios over sqrt(N).
EstimatorResult spread_estimator_paper(std::span<const PathOutcome> outcomes);

/// Ratio-of-means estimator: sum(VR) / sum(VL), the spread that equates the
/// two legs in expectation. SE by batch means: the paths are split into
/// batch_count equal batches in path order and the SE is the standard
/// deviation of the per-batch ratios over sqrt(batches).
/// Throws std::runtime_error when the total premium PV is zero.
EstimatorResult spread_estimator_standard(std::span<const PathOutcome> outcomes,
                                          std::size_t batch_count = 100);

/// Closed-form fair spread for a homogeneous basket with independent names,
/// where the first default is exponential with rate lambda = n*h:
///   (1-R) * lambda/(lambda+r) * (1 - exp(-(lambda+r)M)) / sum_k exp(-(lambda+r)t_k)
double analytic_independent_spread(std::size_t n, double hazard, double recovery, double rate,
                                   const PaymentSchedule& schedule, double maturity);

/// Aggregated simulation results. Both estimators are always present.
struct PricingReport {
    double spread_paper = 0.0;
    double spread_standard = 0.0;
    double se_paper = 0.0;
    double se_standard = 0.0;
    double mean_premium_pv = 0.0;
    double mean_protection_pv = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    std::size_t batch_count = 0;
    std::string conventions;
};

/// The cash-flow conventions baked into the valuation, echoed in reports.
std::string pricing_conventions();

}  // namespace ftd

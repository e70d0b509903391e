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

#include "ftd/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ftd {

double DiscountCurve::discount(double t) const { return std::exp(-rate * t); }

PaymentSchedule::PaymentSchedule(std::vector<double> times) : times_(std::move(times)) {
    double prev = 0.0;
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (!(times_[k] > prev))
            throw std::invalid_argument("PaymentSchedule: dates must be strictly increasing and "
                                        "positive (index " + std::to_string(k) + ")");
        prev = times_[k];
    }
}

PaymentSchedule default_schedule(double maturity, double step) {
    if (!(maturity > 0.0))
        throw std::domain_error("default_schedule: maturity must be > 0, got " +
                                std::to_string(maturity));
    if (!(step > 0.0))
        throw std::domain_error("default_schedule: step must be > 0, got " + std::to_string(step));

    // k*step, computed by multiplication so grids like 0.5, 1.0, ... stay
    // exact; the epsilon keeps maturity itself in when step divides it.
    const auto count = static_cast<std::size_t>(maturity / step + 1e-9);
    std::vector<double> times;
    times.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) times.push_back(static_cast<double>(k) * step);
    return PaymentSchedule(std::move(times));
}

double premium_leg_pv(double first_time, const PaymentSchedule& schedule,
                      const DiscountCurve& curve) noexcept {
    double pv = 0.0;
    for (const double t : schedule.times()) {
        if (!(t < first_time)) break;
        pv += curve.discount(t);
    }
    return pv;
}

double protection_leg_pv(double first_time, std::size_t first_index, const BasketSpec& basket,
                         const DiscountCurve& curve) {
    if (first_index >= basket.names.size())
        throw std::invalid_argument("protection_leg_pv: name index out of range");
    if (!(first_time < basket.maturity)) return 0.0;
    return (1.0 - basket.names[first_index].recovery) * curve.discount(first_time);
}

PathOutcome value_path(DefaultTimeVector times, const BasketSpec& basket,
                       const DiscountCurve& curve) {
    if (times.size() != basket.names.size() || times.empty())
        throw std::invalid_argument("value_path: one default time per name required");

    std::size_t first = 0;
    for (std::size_t j = 1; j < times.size(); ++j)
        if (times[j] < times[first]) first = j;  // ties keep the lowest index

    PathOutcome out;
    out.first_time = times[first];
    out.first_index = first;
    out.premium_pv = premium_leg_pv(out.first_time, basket.schedule, curve);
    out.protection_pv = protection_leg_pv(out.first_time, first, basket, curve);
    out.times = std::move(times);
    return out;
}

EstimatorResult spread_estimator_paper(std::span<const PathOutcome> outcomes) {
    if (outcomes.empty())
        throw std::invalid_argument("spread_estimator_paper: no path outcomes");

    // Welford over the per-path ratios, in path order.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    for (const PathOutcome& o : outcomes) {
        const double s = o.premium_pv > 0.0 ? o.protection_pv / o.premium_pv : 0.0;
        ++count;
        const double d = s - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (s - mean);
    }
    const double n = static_cast<double>(count);
    const double se = count > 1 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return EstimatorResult{mean, se};
}

EstimatorResult spread_estimator_standard(std::span<const PathOutcome> outcomes,
                                          std::size_t batch_count) {
    if (outcomes.empty())
        throw std::invalid_argument("spread_estimator_standard: no path outcomes");
    if (batch_count == 0)
        throw std::invalid_argument("spread_estimator_standard: batch_count must be >= 1");

    double sum_vl = 0.0;
    double sum_vr = 0.0;
    for (const PathOutcome& o : outcomes) {
        sum_vl += o.premium_pv;
        sum_vr += o.protection_pv;
    }
    if (sum_vl == 0.0)
        throw std::runtime_error(
            "spread_estimator_standard: total premium PV is zero, no payment date was ever "
            "reached");
    const double spread = sum_vr / sum_vl;

    const std::size_t n = outcomes.size();
    const std::size_t batches = std::min(batch_count, n);
    double se = 0.0;
    if (batches > 1) {
        double mean = 0.0;
        double m2 = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            const std::size_t lo = b * n / batches;
            const std::size_t hi = (b + 1) * n / batches;
            double vl = 0.0;
            double vr = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                vl += outcomes[i].premium_pv;
                vr += outcomes[i].protection_pv;
            }
            const double ratio = vl > 0.0 ? vr / vl : 0.0;
            const double d = ratio - mean;
            mean += d / static_cast<double>(b + 1);
            m2 += d * (ratio - mean);
        }
        const double bn = static_cast<double>(batches);
        se = std::sqrt(m2 / (bn - 1.0) / bn);
    }
    return EstimatorResult{spread, se};
}

double analytic_independent_spread(std::size_t n, double hazard, double recovery, double rate,
                                   const PaymentSchedule& schedule, double maturity) {
    if (n == 0) throw std::domain_error("analytic_independent_spread: n must be >= 1");
    if (!(hazard > 0.0))
        throw std::domain_error("analytic_independent_spread: hazard must be > 0");
    const double lambda = static_cast<double>(n) * hazard;
    const double a = lambda + rate;
    if (!(a > 0.0))
        throw std::domain_error("analytic_independent_spread: lambda + rate must be > 0");

    const double protection = (1.0 - recovery) * lambda / a * (-std::expm1(-a * maturity));
    double premium = 0.0;
    for (const double t : schedule.times()) premium += std::exp(-a * t);
    if (premium == 0.0)
        throw std::domain_error("analytic_independent_spread: empty payment schedule");
    return protection / premium;
}

std::string pricing_conventions() {
    return "premium paid at t_k only when t_k < first default (strict); protection pays "
           "(1-R) discounted to the first default time when it is strictly before maturity; "
           "no accrued premium; mean-of-ratios counts zero-premium paths as ratio 0; "
           "ratio-of-means SE by batch means over equal path-order batches";
}

}  // namespace ftd

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

#include "ftd/copula.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ftd {

namespace {

// Above this the direct form 1 - Phi(y) starts losing digits.
constexpr double kTailSwitch = 7.0;

// Probability floor keeping mapped default times positive and finite even
// for latents far outside the sampler's reachable range.
constexpr double kProbFloor = std::numeric_limits<double>::min();

}  // namespace

void sample_latent(const CholeskyFactor& l, std::span<const double> z, std::span<double> out) {
    const std::size_t n = l.size();
    if (z.size() != n || out.size() != n)
        throw std::invalid_argument("sample_latent: dimension mismatch (factor " +
                                    std::to_string(n) + ", z " + std::to_string(z.size()) + ")");
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += l(i, j) * z[j];
        out[i] = acc;
    }
}

LatentVector sample_latent(const CholeskyFactor& l, std::span<const double> z) {
    LatentVector out(l.size());
    sample_latent(l, z, out);
    return out;
}

double latent_to_default_time(double y, double hazard) {
    if (y > kTailSwitch) {
        const double surv = std::max(std_normal_cdf(-y), kProbFloor);
        return -std::log(surv) / hazard;
    }
    const double u = std::max(std_normal_cdf(y), kProbFloor);
    return invert_default_time(u, hazard);
}

void latent_to_default_times(std::span<const double> y, std::span<const CreditName> names,
                             std::span<double> out) {
    if (y.size() != names.size() || out.size() != names.size())
        throw std::invalid_argument("latent_to_default_times: dimension mismatch");
    for (std::size_t j = 0; j < names.size(); ++j)
        out[j] = latent_to_default_time(y[j], names[j].hazard_rate);
}

DefaultTimeVector latent_to_default_times(std::span<const double> y,
                                          std::span<const CreditName> names) {
    DefaultTimeVector out(names.size());
    latent_to_default_times(y, names, out);
    return out;
}

double gaussian_copula_2d(double u, double v, double rho) {
    return bivariate_normal_cdf(std_normal_inv(u), std_normal_inv(v), rho);
}

}  // namespace ftd

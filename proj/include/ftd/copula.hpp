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

#include <span>
#include <vector>

#include "ftd/numerics.hpp"
#include "ftd/survival.hpp"

namespace ftd {

/// Correlated standard normal draws, one per basket name.
using LatentVector = std::vector<double>;

/// Simulated default times in years, one per basket name, all > 0.
using DefaultTimeVector = std::vector<double>;

/// Correlates independent standard normals: out = L * z. If z ~ N(0, I)
/// the result is N(0, Sigma) for Sigma = L * L^T.
/// Throws std::invalid_argument on dimension mismatch.
void sample_latent(const CholeskyFactor& l, std::span<const double> z, std::span<double> out);
LatentVector sample_latent(const CholeskyFactor& l, std::span<const double> z);

/// Maps one latent normal to a default time: -ln(1 - Phi(y))/h. Above
/// y ~ 7 the survival probability is computed as Phi(-y) to avoid
/// cancellation; either way the result is strictly positive and finite.
double latent_to_default_time(double y, double hazard);

void latent_to_default_times(std::span<const double> y, std::span<const CreditName> names,
                             std::span<double> out);
DefaultTimeVector latent_to_default_times(std::span<const double> y,
                                          std::span<const CreditName> names);

/// Bivariate Gaussian copula C(u, v; rho) = Phi2(Phi^-1(u), Phi^-1(v), rho).
/// Requires u, v in (0,1) and |rho| < 1; domain errors propagate from the
/// underlying distribution functions.
double gaussian_copula_2d(double u, double v, double rho);

}  // namespace ftd

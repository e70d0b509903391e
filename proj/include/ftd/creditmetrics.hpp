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
#include <span>
#include <vector>

#include "ftd/numerics.hpp"

namespace ftd {

/// Latent-variable model: X_i = sum_j omega_{i,j} theta_j + sigma_i eps_i
/// with theta ~ N_p(0, factor_cov) and eps_i iid N(0,1).
struct FactorModel {
    std::size_t names = 0;                 // n
    std::size_t factors = 0;               // p
    std::vector<double> loadings;          // n x p, row-major
    std::vector<double> factor_cov;        // p x p, row-major, symmetric PSD
    std::vector<double> idio_vol;          // n, each >= 0

    double loading(std::size_t i, std::size_t j) const { return loadings[i * factors + j]; }
};

/// Checks dimensions, idiosyncratic volatilities and that factor_cov is
/// symmetric PSD. Throws std::invalid_argument / NotPsdError.
void validate_factor_model(const FactorModel& model);

/// One-period default probability and the matching latent threshold,
/// z = Phi^-1(q): default happens when the standardized latent falls
/// below z.
struct DefaultThreshold {
    double prob = 0.0;  // q, in (0,1)
    double z = 0.0;     // Phi^-1(q)
};

DefaultThreshold threshold_from_prob(double q);

/// Joint one-period default probability of two names through the latent
/// thresholds: P(Z_a < z_a, Z_b < z_b) with corr(Z_a, Z_b) = rho.
///
/// Deliberately evaluated by direct quadrature of the correlation-parameter
/// integral (tetrachoric expansion of Phi2) rather than through
/// bivariate_normal_cdf, so that the copula route in
/// verify_copula_equivalence stays an independent cross-check.
double joint_default_prob(double qa, double qb, double rho);

/// Correlation matrix implied by the factor structure:
/// corr(i,k) = omega_i' Omega omega_k / sqrt(v_i v_k),
/// v_i = omega_i' Omega omega_i + sigma_i^2.
/// Throws std::domain_error when a name has zero total variance.
CorrelationMatrix implied_asset_correlation(const FactorModel& model);

/// Joint default probability computed both ways: through the latent
/// thresholds and through the Gaussian copula applied to the marginal
/// probabilities. The two numbers agree up to quadrature error; the gap is
/// the numerical demonstration that the two formulations coincide.
struct CopulaEquivalenceReport {
    double via_thresholds = 0.0;
    double via_copula = 0.0;
    double gap = 0.0;
};

CopulaEquivalenceReport verify_copula_equivalence(double qa, double qb, double rho);

/// Draws one standardized latent vector X_i / sqrt(v_i) from the factor
/// model given independent standard normals for the factors and the
/// idiosyncratic terms. Statistical-test utility, not a pricing path.
std::vector<double> sample_standardized_latents(const FactorModel& model,
                                                std::span<const double> z_factors,
                                                std::span<const double> z_idio);

}  // namespace ftd

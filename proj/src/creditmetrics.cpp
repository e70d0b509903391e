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

#include "ftd/creditmetrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ftd/copula.hpp"

namespace ftd {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;

// 64-point Gauss-Legendre rule on [-1,1], generated once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre64 {
    double x[64];
    double w[64];

    GaussLegendre64() {
        constexpr std::size_t m = 64;
        for (std::size_t i = 0; i < m / 2; ++i) {
            double z = std::cos(3.14159265358979323846 * (i + 0.75) / (m + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = m * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[m - 1 - i] = z;
            w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

// Phi2(x, y; rho) = Phi(x)Phi(y)
//   + (1/2pi) * Int_0^{asin(rho)} exp(-(x^2 + y^2 - 2xy sin t)/(2 cos^2 t)) dt
// The sin substitution keeps the integrand smooth all the way to |rho| -> 1
// for equal arguments and renders a 64-point rule far more accurate than the
// 1e-10 the equivalence checks ask for.
double bivariate_cdf_by_correlation_integral(double x, double y, double rho) {
    double p = std_normal_cdf(x) * std_normal_cdf(y);
    if (rho == 0.0) return p;

    static const GaussLegendre64 rule;
    const double upper = std::asin(rho);
    const double half = 0.5 * upper;
    double sum = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        const double t = half * (rule.x[i] + 1.0);
        const double s = std::sin(t);
        const double c2 = 1.0 - s * s;
        sum += rule.w[i] * std::exp(-(x * x + y * y - 2.0 * x * y * s) / (2.0 * c2));
    }
    return p + half * sum / kTwoPi;
}

}  // namespace

void validate_factor_model(const FactorModel& model) {
    const std::size_t n = model.names;
    const std::size_t p = model.factors;
    if (n == 0) throw std::invalid_argument("FactorModel: needs at least one name");
    if (model.loadings.size() != n * p)
        throw std::invalid_argument("FactorModel: loadings must be names x factors");
    if (model.factor_cov.size() != p * p)
        throw std::invalid_argument("FactorModel: factor_cov must be factors x factors");
    if (model.idio_vol.size() != n)
        throw std::invalid_argument("FactorModel: idio_vol must have one entry per name");
    for (std::size_t i = 0; i < n; ++i)
        if (!(model.idio_vol[i] >= 0.0) || !std::isfinite(model.idio_vol[i]))
            throw std::invalid_argument("FactorModel: idio_vol[" + std::to_string(i) +
                                        "] must be finite and >= 0");
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (std::abs(model.factor_cov[i * p + j] - model.factor_cov[j * p + i]) > 1e-12)
                throw std::invalid_argument("FactorModel: factor_cov is not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    if (p > 0) {
        std::vector<double> chol = model.factor_cov;
        std::size_t bad = 0;
        double bad_value = 0.0;
        if (!detail::cholesky_in_place(p, chol, &bad, &bad_value))
            throw NotPsdError(bad, bad_value);
    }
}

DefaultThreshold threshold_from_prob(double q) {
    return DefaultThreshold{q, std_normal_inv(q)};
}

double joint_default_prob(double qa, double qb, double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("joint_default_prob: |rho| must be < 1, got " +
                                std::to_string(rho));
    const DefaultThreshold a = threshold_from_prob(qa);
    const DefaultThreshold b = threshold_from_prob(qb);
    return bivariate_cdf_by_correlation_integral(a.z, b.z, rho);
}

namespace {

// omega_i' Omega omega_k
double factor_covariance(const FactorModel& m, std::size_t i, std::size_t k) {
    const std::size_t p = m.factors;
    double acc = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < p; ++b) row += m.factor_cov[a * p + b] * m.loading(k, b);
        acc += m.loading(i, a) * row;
    }
    return acc;
}

}  // namespace

CorrelationMatrix implied_asset_correlation(const FactorModel& model) {
    validate_factor_model(model);
    const std::size_t n = model.names;

    std::vector<double> total_var(n);
    for (std::size_t i = 0; i < n; ++i) {
        total_var[i] = factor_covariance(model, i, i) + model.idio_vol[i] * model.idio_vol[i];
        if (!(total_var[i] > 0.0))
            throw std::domain_error("implied_asset_correlation: name " + std::to_string(i) +
                                    " has zero total variance");
    }

    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = 1.0;
        for (std::size_t k = i + 1; k < n; ++k) {
            const double c =
                factor_covariance(model, i, k) / std::sqrt(total_var[i] * total_var[k]);
            a[i * n + k] = c;
            a[k * n + i] = c;
        }
    }
    return CorrelationMatrix::unchecked(n, std::move(a));
}

CopulaEquivalenceReport verify_copula_equivalence(double qa, double qb, double rho) {
    CopulaEquivalenceReport report;
    report.via_thresholds = joint_default_prob(qa, qb, rho);
    report.via_copula = gaussian_copula_2d(qa, qb, rho);
    report.gap = std::abs(report.via_thresholds - report.via_copula);
    return report;
}

std::vector<double> sample_standardized_latents(const FactorModel& model,
                                                std::span<const double> z_factors,
                                                std::span<const double> z_idio) {
    validate_factor_model(model);
    const std::size_t n = model.names;
    const std::size_t p = model.factors;
    if (z_factors.size() != p || z_idio.size() != n)
        throw std::invalid_argument("sample_standardized_latents: dimension mismatch");

    std::vector<double> chol = model.factor_cov;
    if (p > 0) {
        std::size_t bad = 0;
        double bad_value = 0.0;
        if (!detail::cholesky_in_place(p, chol, &bad, &bad_value))
            throw NotPsdError(bad, bad_value);
    }
    std::vector<double> theta(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += chol[i * p + j] * z_factors[j];
        theta[i] = acc;
    }

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = model.idio_vol[i] * z_idio[i];
        for (std::size_t j = 0; j < p; ++j) acc += model.loading(i, j) * theta[j];
        const double v = factor_covariance(model, i, i) + model.idio_vol[i] * model.idio_vol[i];
        if (!(v > 0.0))
            throw std::domain_error("sample_standardized_latents: name " + std::to_string(i) +
                                    " has zero total variance");
        x[i] = acc / std::sqrt(v);
    }
    return x;
}

}  // namespace ftd

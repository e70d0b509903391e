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

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ftd/creditmetrics.hpp"
#include "ftd/numerics.hpp"

using namespace ftd;

namespace {

// single common factor with loading sqrt(w) and idio variance 1-w for all
// names: pairwise asset correlation w
FactorModel one_factor(std::size_t n, double w) {
    FactorModel m;
    m.names = n;
    m.factors = 1;
    m.loadings.assign(n, std::sqrt(w));
    m.factor_cov = {1.0};
    m.idio_vol.assign(n, std::sqrt(1.0 - w));
    return m;
}

}  // namespace

TEST_CASE("threshold_from_prob") {
    CHECK(threshold_from_prob(0.5).z == 0.0);
    CHECK(threshold_from_prob(0.0227501319481792).z == doctest::Approx(-2.0).epsilon(1e-10));
    // one-year default probability of a h = 0.2 name
    const double q = -std::expm1(-0.2);
    CHECK(q == doctest::Approx(0.18126924692201818).epsilon(1e-15));
    CHECK(threshold_from_prob(q).z == doctest::Approx(-0.91053867738655133).epsilon(1e-10));
    CHECK(threshold_from_prob(q).prob == q);
    CHECK_THROWS_AS(threshold_from_prob(0.0), std::domain_error);
    CHECK_THROWS_AS(threshold_from_prob(1.0), std::domain_error);
}

TEST_CASE("joint_default_prob reference values") {
    CHECK(joint_default_prob(0.5, 0.5, 0.0) == 0.25);
    CHECK(joint_default_prob(0.5, 0.5, 0.1) ==
          doctest::Approx(0.26594214021462996).epsilon(1e-12));
    const double q = -std::expm1(-0.2);
    CHECK(joint_default_prob(q, q, 0.1) ==
          doctest::Approx(0.040094299178100944).epsilon(1e-12));
    CHECK_THROWS_AS(joint_default_prob(0.5, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(joint_default_prob(0.0, 0.5, 0.5), std::domain_error);
}

TEST_CASE("joint_default_prob near the comonotonic boundary") {
    // at rho = 0.999 the joint probability sits ~5e-3 below q itself
    // (frozen by high-precision quadrature); it converges to q as rho -> 1
    const double q = 0.2;
    const double p999 = joint_default_prob(q, q, 0.999);
    CHECK(p999 == doctest::Approx(0.19500501047936391).epsilon(1e-10));
    CHECK(std::abs(p999 - q) < 0.01);
    const double p9999 = joint_default_prob(q, q, 0.9999);
    CHECK(std::abs(p9999 - q) < std::abs(p999 - q));
}

TEST_CASE("copula equivalence on the full grid to 1e-10") {
    const double qs[] = {0.01, 0.05, 0.18127, 0.5, 0.9};
    const double rhos[] = {-0.5, 0.0, 0.1, 0.5, 0.9};
    for (const double qa : qs)
        for (const double qb : qs)
            for (const double rho : rhos) {
                const CopulaEquivalenceReport rep = verify_copula_equivalence(qa, qb, rho);
                CAPTURE(qa);
                CAPTURE(qb);
                CAPTURE(rho);
                CHECK(rep.gap <= 1e-10);
                CHECK(rep.via_thresholds == joint_default_prob(qa, qb, rho));
                CHECK(rep.gap == std::abs(rep.via_thresholds - rep.via_copula));
            }
}

TEST_CASE("copula equivalence pins the exact-zero and stressed cases") {
    const CopulaEquivalenceReport zero = verify_copula_equivalence(0.5, 0.5, 0.0);
    CHECK(zero.via_thresholds == 0.25);
    CHECK(zero.via_copula == 0.25);
    CHECK(zero.gap == 0.0);

    const CopulaEquivalenceReport stressed = verify_copula_equivalence(0.01, 0.99, -0.5);
    CHECK(stressed.gap <= 1e-10);
    CHECK(stressed.via_copula == doctest::Approx(0.0087060755817353448).epsilon(1e-10));

    const double q = -std::expm1(-0.2);
    CHECK(verify_copula_equivalence(q, q, 0.1).gap <= 1e-10);
}

TEST_CASE("implied_asset_correlation for the one-factor book") {
    const CorrelationMatrix sigma = implied_asset_correlation(one_factor(5, 0.1));
    CHECK(sigma.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (i == j)
                CHECK(sigma(i, j) == 1.0);
            else
                CHECK(sigma(i, j) == doctest::Approx(0.1).epsilon(1e-14));
        }
    // output must factorize
    CHECK_NOTHROW(cholesky(sigma));
}

TEST_CASE("implied_asset_correlation pure idiosyncratic book is independent") {
    FactorModel m = one_factor(4, 0.0);
    const CorrelationMatrix sigma = implied_asset_correlation(m);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(sigma(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("implied_asset_correlation under loading rescale") {
    // scale one name's loading by c keeping its total variance at 1: its
    // correlations scale by c, everyone else's stay put
    FactorModel base = one_factor(3, 0.25);
    FactorModel scaled = base;
    const double c = 1.5;
    scaled.loadings[0] *= c;
    const double factor_var = scaled.loadings[0] * scaled.loadings[0];
    scaled.idio_vol[0] = std::sqrt(1.0 - factor_var);

    const CorrelationMatrix a = implied_asset_correlation(base);
    const CorrelationMatrix b = implied_asset_correlation(scaled);
    CHECK(b(0, 1) == doctest::Approx(c * a(0, 1)).epsilon(1e-13));
    CHECK(b(0, 2) == doctest::Approx(c * a(0, 2)).epsilon(1e-13));
    CHECK(b(1, 2) == doctest::Approx(a(1, 2)).epsilon(1e-13));
}

TEST_CASE("factor model validation") {
    FactorModel m = one_factor(3, 0.1);
    m.loadings.pop_back();
    CHECK_THROWS_AS(validate_factor_model(m), std::invalid_argument);

    FactorModel asym = one_factor(2, 0.1);
    asym.factors = 2;
    asym.loadings = {0.1, 0.2, 0.3, 0.4};
    asym.factor_cov = {1.0, 0.5, 0.2, 1.0};
    CHECK_THROWS_AS(validate_factor_model(asym), std::invalid_argument);

    FactorModel indef = asym;
    indef.factor_cov = {1.0, 2.0, 2.0, 1.0};
    CHECK_THROWS_AS(validate_factor_model(indef), NotPsdError);

    FactorModel dead = one_factor(2, 0.0);
    dead.loadings = {0.0, 0.0};
    dead.idio_vol = {0.0, 1.0};
    CHECK_THROWS_AS(implied_asset_correlation(dead), std::domain_error);
}

TEST_CASE("sample_standardized_latents reproduces the implied correlation by hand") {
    // with one factor and loadings sqrt(w): X = sqrt(w) z_f + sqrt(1-w) z_i
    const FactorModel m = one_factor(2, 0.36);
    const std::vector<double> zf{1.0};
    const std::vector<double> zi{0.5, -2.0};
    const std::vector<double> x = sample_standardized_latents(m, zf, zi);
    CHECK(x[0] == doctest::Approx(0.6 * 1.0 + 0.8 * 0.5).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(0.6 * 1.0 + 0.8 * -2.0).epsilon(1e-14));
    CHECK_THROWS_AS(sample_standardized_latents(m, zi, zi), std::invalid_argument);
}

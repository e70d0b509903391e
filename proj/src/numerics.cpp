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

#include "ftd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace ftd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kPi = 3.14159265358979323846;

// Pivot handling per the factorization contract: clamp tiny pivots, reject
// clearly negative ones.
constexpr double kPivotTol = 1e-12;
constexpr double kZeroColumnTol = 1e-10;

std::string format_entry(const char* what, std::size_t i, std::size_t j, double v) {
    std::ostringstream os;
    os << "CorrelationMatrix: " << what << " at (" << i << "," << j << "): " << v;
    return os.str();
}

}  // namespace

NotPsdError::NotPsdError(std::size_t pivot, double pivot_value)
    : std::domain_error("matrix is not positive semi-definite: pivot " +
                        std::to_string(pivot) + " = " + std::to_string(pivot_value)),
      pivot_(pivot),
      pivot_value_(pivot_value) {}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n) {
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
    return CorrelationMatrix(n, std::move(a));
}

CorrelationMatrix CorrelationMatrix::uniform(std::size_t n, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("CorrelationMatrix::uniform: rho must lie in [-1, 1], got " +
                                    std::to_string(rho));
    std::vector<double> a(n * n, rho);
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
    return CorrelationMatrix(n, std::move(a));
}

CorrelationMatrix CorrelationMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("CorrelationMatrix: empty matrix");
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw std::invalid_argument("CorrelationMatrix: row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = rows[i][j];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a[i * n + i] - 1.0) > 1e-12)
            throw std::invalid_argument(format_entry("diagonal entry must be 1", i, i, a[i * n + i]));
        a[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = a[i * n + j];
            const double y = a[j * n + i];
            if (std::abs(x - y) > 1e-12)
                throw std::invalid_argument(format_entry("matrix is not symmetric", i, j, x - y));
            if (!(x >= -1.0 - 1e-12 && x <= 1.0 + 1e-12))
                throw std::invalid_argument(format_entry("off-diagonal outside [-1, 1]", i, j, x));
            const double v = std::clamp(0.5 * (x + y), -1.0, 1.0);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    return CorrelationMatrix(n, std::move(a));
}

CorrelationMatrix CorrelationMatrix::unchecked(std::size_t n, std::vector<double> row_major) {
    if (row_major.size() != n * n)
        throw std::invalid_argument("CorrelationMatrix::unchecked: size mismatch");
    return CorrelationMatrix(n, std::move(row_major));
}

double std_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_inv(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("std_normal_inv: u must lie strictly inside (0,1), got " +
                                std::to_string(u));

    // Acklam's piecewise rational approximation (~1.15e-9 relative error).
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - p_low) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the erfc-based CDF, skipped only where
    // exp(x^2/2) would overflow (u within ~1e-300 of the boundary).
    if (x * x < 1400.0) {
        const double e = std_normal_cdf(x) - u;
        const double t = e * kSqrt2Pi * std::exp(0.5 * x * x);
        x -= t / (1.0 + 0.5 * x * t);
    }
    return x;
}

namespace {

// Gauss-Legendre abscissas/weights on [-1,1] (positive half), as used by
// Genz (2004) and West (2005) for the bivariate normal integral.
constexpr double kGl6X[3] = {0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
constexpr double kGl6W[3] = {0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

constexpr double kGl12X[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                              0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double kGl12W[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                              0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

constexpr double kGl20X[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                               0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                               0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                               0.9931285991850949};
constexpr double kGl20W[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                               0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                               0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                               0.0176140071391521};

template <typename F>
double gauss_legendre(const F& f, double abs_rho) {
    const double* xs;
    const double* ws;
    std::size_t m;
    if (abs_rho < 0.3) {
        xs = kGl6X;
        ws = kGl6W;
        m = 3;
    } else if (abs_rho < 0.75) {
        xs = kGl12X;
        ws = kGl12W;
        m = 6;
    } else {
        xs = kGl20X;
        ws = kGl20W;
        m = 10;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += ws[i] * (f(-xs[i]) + f(xs[i]));
    return sum;
}

}  // namespace

double bivariate_normal_cdf(double x, double y, double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("bivariate_normal_cdf: |rho| must be < 1, got " +
                                std::to_string(rho));
    if (x > y) std::swap(x, y);  // canonical order, keeps symmetry bit-exact

    // Genz (2004), "Numerical computation of rectangular bivariate and
    // trivariate normal and t probabilities", section 2.4 hybrid scheme.
    double h = -x;
    double k = -y;
    double hk = h * k;
    double bvn = 0.0;

    if (std::abs(rho) < 0.925) {
        if (rho != 0.0) {
            const double hs = 0.5 * (h * h + k * k);
            const double asr = std::asin(rho);
            bvn = gauss_legendre(
                [&](double t) {
                    const double sn = std::sin(asr * 0.5 * (1.0 - t));
                    return std::exp((sn * hk - hs) / (1.0 - sn * sn));
                },
                std::abs(rho));
            bvn *= asr * (0.25 / kPi);
        }
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k);
        return bvn;
    }

    if (rho < 0.0) {
        k = -k;
        hk = -hk;
    }
    const double as = (1.0 - rho) * (1.0 + rho);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    double asr = -0.5 * (bs / as + hk);
    if (asr > -100.0)
        bvn = a * std::exp(asr) *
              (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (-hk < 100.0) {
        const double b = std::sqrt(bs);
        bvn -= std::exp(-0.5 * hk) * kSqrt2Pi * std_normal_cdf(-b / a) * b *
               (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a *= 0.5;
    bvn += gauss_legendre(
        [&](double t) {
            const double xs = a * (1.0 - t) * a * (1.0 - t);
            const double rs = std::sqrt(1.0 - xs);
            const double e = -0.5 * (bs / xs + hk);
            if (e <= -100.0) return 0.0;
            return a * std::exp(e) *
                   (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                    (1.0 + c * xs * (1.0 + d * xs)));
        },
        std::abs(rho));
    bvn /= -2.0 * kPi;

    if (rho > 0.0) {
        bvn += std_normal_cdf(-std::max(h, k));
    } else {
        bvn = -bvn;
        if (k > h) {
            // difference of tails, evaluated on the side where the CDF is
            // computed most accurately
            if (h >= 0.0)
                bvn += std_normal_cdf(-h) - std_normal_cdf(-k);
            else
                bvn += std_normal_cdf(k) - std_normal_cdf(h);
        }
    }
    return bvn;
}

namespace detail {

bool cholesky_in_place(std::size_t n, std::vector<double>& a,
                       std::size_t* bad_pivot, double* bad_value) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (d < -kPivotTol) {
            if (bad_pivot) *bad_pivot = j;
            if (bad_value) *bad_value = d;
            return false;
        }
        const double ljj = d <= kPivotTol ? 0.0 : std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            if (ljj > 0.0) {
                a[i * n + j] = s / ljj;
            } else {
                // a zero pivot of a PSD matrix forces the rest of the column
                // to zero; anything else means the matrix is indefinite
                if (std::abs(s) > kZeroColumnTol) {
                    if (bad_pivot) *bad_pivot = j;
                    if (bad_value) *bad_value = d;
                    return false;
                }
                a[i * n + j] = 0.0;
            }
        }
        for (std::size_t i = 0; i < j; ++i) a[i * n + j] = 0.0;
    }
    return true;
}

}  // namespace detail

CholeskyFactor cholesky(const CorrelationMatrix& sigma) {
    const std::size_t n = sigma.size();
    std::vector<double> l = sigma.data();
    std::size_t bad_pivot = 0;
    double bad_value = 0.0;
    if (!detail::cholesky_in_place(n, l, &bad_pivot, &bad_value))
        throw NotPsdError(bad_pivot, bad_value);
    return CholeskyFactor(n, std::move(l));
}

}  // namespace ftd

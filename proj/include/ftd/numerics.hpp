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
#include <stdexcept>
#include <string>
#include <vector>

namespace ftd {

/// Thrown by cholesky() when a diagonal pivot is negative beyond tolerance,
/// i.e. the input matrix is not positive semi-definite.
class NotPsdError : public std::domain_error {
public:
    NotPsdError(std::size_t pivot, double pivot_value);

    std::size_t pivot() const noexcept { return pivot_; }
    double pivot_value() const noexcept { return pivot_value_; }

private:
    std::size_t pivot_;
    double pivot_value_;
};

/// Symmetric matrix with unit diagonal and off-diagonal entries in [-1, 1].
/// Positive semi-definiteness is not checked here; it is established the
/// moment cholesky() succeeds.
class CorrelationMatrix {
public:
    static CorrelationMatrix identity(std::size_t n);

    /// All off-diagonals equal to rho, unit diagonal.
    static CorrelationMatrix uniform(std::size_t n, double rho);

    /// Validates shape, symmetry (to 1e-12), unit diagonal (to 1e-12) and
    /// off-diagonal bounds, then stores an exactly symmetrized copy.
    /// Throws std::invalid_argument with the offending entry in the message.
    static CorrelationMatrix from_rows(const std::vector<std::vector<double>>& rows);

    /// No validation at all. For tests and callers that build entries
    /// programmatically and want cholesky() to be the judge.
    static CorrelationMatrix unchecked(std::size_t n, std::vector<double> row_major);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    const std::vector<double>& data() const noexcept { return a_; }

private:
    CorrelationMatrix(std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {}

    std::size_t n_ = 0;
    std::vector<double> a_;  // row-major, n_ x n_
};

/// Lower-triangular factor L of a correlation matrix, L * L^T = Sigma.
/// Diagonal entries are >= 0 (near-zero pivots are clamped to 0).
class CholeskyFactor {
public:
    CholeskyFactor(std::size_t n, std::vector<double> lower_row_major)
        : n_(n), l_(std::move(lower_row_major)) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return l_[i * n_ + j]; }
    const std::vector<double>& data() const noexcept { return l_; }

private:
    std::size_t n_ = 0;
    std::vector<double> l_;  // row-major, strictly upper part is zero
};

/// Standard normal CDF, Phi(x) = erfc(-x/sqrt(2))/2.
/// Absolute error is a few ulps; no underflow to 0 before |x| ~ 38.
double std_normal_cdf(double x) noexcept;

/// Inverse standard normal CDF on the open interval (0,1).
/// Acklam's rational approximation polished with one Halley step, giving
/// near machine precision over the whole domain.
/// Throws std::domain_error for u outside (0,1) (including NaN).
double std_normal_inv(double u);

/// Bivariate standard normal CDF P(X <= x, Y <= y) with correlation rho,
/// |rho| < 1. Hybrid algorithm of Genz (2004), accurate to ~5e-16.
/// Exactly Phi(x)*Phi(y) when rho == 0; exactly symmetric in (x, y).
/// Throws std::domain_error when |rho| >= 1.
double bivariate_normal_cdf(double x, double y, double rho);

/// Lower Cholesky factorization of a correlation matrix. Pivots in
/// [-1e-12, 1e-12] are clamped to zero; pivots below -1e-12 raise
/// NotPsdError carrying the failing index.
CholeskyFactor cholesky(const CorrelationMatrix& sigma);

namespace detail {

/// In-place lower Cholesky on a row-major symmetric matrix. Returns true on
/// success; on failure writes the failing pivot index/value and returns
/// false. Shared by cholesky() and the factor-model validation.
bool cholesky_in_place(std::size_t n, std::vector<double>& a,
                       std::size_t* bad_pivot, double* bad_value);

}  // namespace detail

}  // namespace ftd

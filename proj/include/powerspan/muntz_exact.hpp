#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace powerspan::muntz::exact {

using BigRat = boost::multiprecision::cpp_rational;

/**
 * Element of the Q-vector space spanned by {1, e, e^2}: a + b e + c e^2 with
 * rational a, b, c. Closed under everything the exact Gram oracle needs:
 * rational linear solves keep degree <= 1 and the single inner product
 * c . m lands in degree <= 2. Products that would exceed degree 2 throw.
 */
struct ExtScalar {
    BigRat c0, c1, c2;

    ExtScalar() = default;
    ExtScalar(long long v) : c0(v) {}  // NOLINT(google-explicit-constructor)
    explicit ExtScalar(BigRat a, BigRat b = 0, BigRat c = 0)
        : c0(std::move(a)), c1(std::move(b)), c2(std::move(c)) {}

    double to_double() const;

    friend ExtScalar operator+(const ExtScalar& x, const ExtScalar& y) {
        return ExtScalar(x.c0 + y.c0, x.c1 + y.c1, x.c2 + y.c2);
    }
    friend ExtScalar operator-(const ExtScalar& x, const ExtScalar& y) {
        return ExtScalar(x.c0 - y.c0, x.c1 - y.c1, x.c2 - y.c2);
    }
    friend ExtScalar operator*(const BigRat& r, const ExtScalar& x) {
        return ExtScalar(r * x.c0, r * x.c1, r * x.c2);
    }
    friend ExtScalar operator*(const ExtScalar& x, const ExtScalar& y);  // degree-checked
};

struct OracleProjection {
    std::vector<std::pair<long long, double>> coefficients;
    double error_l2 = 0.0;
};

/**
 * Exact-rational ground truth for L2 projections onto {x^lambda} on [0,1]
 * or [-1,1]: exact Gram matrix (1/(i+j+1), resp. the odd/even moments of
 * [-1,1]), exact moment vector, rational Gaussian elimination, error from
 * the projection identity ||f||^2 - c.m. Slow by design; the fast path in
 * best_approx_L2 is tested against it.
 */
std::vector<ExtScalar> solve_gram(const std::vector<long long>& exponents, bool unit_interval,
                                  const std::vector<ExtScalar>& moments);

OracleProjection project_exact(const std::vector<long long>& exponents, bool unit_interval,
                               const std::vector<ExtScalar>& moments, const ExtScalar& f_norm_sq);

/// Moments of e^x on [0,1]: m_0 = e - 1, m_lambda = e - lambda m_{lambda-1}.
std::vector<ExtScalar> exp_moments(const std::vector<long long>& exponents);
/// ||e^x||^2 on [0,1] = (e^2 - 1)/2.
ExtScalar exp_norm_sq();
/// The whole oracle for f = e^x on [0,1].
OracleProjection project_exp(const std::vector<long long>& exponents);

/// Moments and norm of a rational-coefficient polynomial sum p_j x^j.
std::vector<ExtScalar> poly_moments(const std::vector<BigRat>& poly,
                                    const std::vector<long long>& exponents, bool unit_interval);
ExtScalar poly_norm_sq(const std::vector<BigRat>& poly, bool unit_interval);
OracleProjection project_poly(const std::vector<BigRat>& poly,
                              const std::vector<long long>& exponents, bool unit_interval);

}  // namespace powerspan::muntz::exact

#include "powerspan/muntz_exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

#include "powerspan/errors.hpp"

namespace powerspan::muntz::exact {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// exact integral of x^n over [0,1] or [-1,1]
BigRat monomial_integral(long long n, bool unit_interval) {
    if (unit_interval) return BigRat(1, n + 1);
    if (n % 2 == 1) return BigRat(0);
    return BigRat(2, n + 1);
}

const Float50& euler_e() {
    static const Float50 e("2.71828182845904523536028747135266249775724709369996");
    return e;
}

}  // namespace

double ExtScalar::to_double() const {
    // 50-digit evaluation: projection errors like ||f||^2 - c.m cancel to
    // ~1e-22 for well-approximated targets, far below long double.
    const Float50 e = euler_e();
    const Float50 v = Float50(c0) + Float50(c1) * e + Float50(c2) * e * e;
    return static_cast<double>(v);
}

ExtScalar operator*(const ExtScalar& x, const ExtScalar& y) {
    // (x0 + x1 e + x2 e^2)(y0 + y1 e + y2 e^2) must stay in degree <= 2
    const BigRat d3 = x.c1 * y.c2 + x.c2 * y.c1;
    const BigRat d4 = x.c2 * y.c2;
    if (d3 != 0 || d4 != 0)
        throw std::logic_error("ExtScalar: product leaves the {1,e,e^2} span");
    return ExtScalar(x.c0 * y.c0, x.c0 * y.c1 + x.c1 * y.c0,
                     x.c0 * y.c2 + x.c1 * y.c1 + x.c2 * y.c0);
}

std::vector<ExtScalar> solve_gram(const std::vector<long long>& exponents, bool unit_interval,
                                  const std::vector<ExtScalar>& moments) {
    const std::size_t m = exponents.size();
    if (moments.size() != m) throw PreconditionError("solve_gram: moment count mismatch");

    std::vector<std::vector<BigRat>> G(m, std::vector<BigRat>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            G[i][j] = monomial_integral(exponents[i] + exponents[j], unit_interval);
    std::vector<ExtScalar> rhs = moments;

    // rational Gaussian elimination with partial pivoting
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        BigRat best = abs(G[perm[col]][col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const BigRat cand = abs(G[perm[r]][col]);
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best == 0) throw std::runtime_error("solve_gram: singular Gram matrix");
        std::swap(perm[col], perm[piv]);
        const std::size_t pr = perm[col];
        for (std::size_t r = col + 1; r < m; ++r) {
            const std::size_t rr = perm[r];
            if (G[rr][col] == 0) continue;
            const BigRat factor = G[rr][col] / G[pr][col];
            for (std::size_t c = col; c < m; ++c) G[rr][c] -= factor * G[pr][c];
            rhs[rr] = rhs[rr] - factor * rhs[pr];
        }
    }
    std::vector<ExtScalar> x(m);
    for (std::size_t ii = m; ii-- > 0;) {
        const std::size_t r = perm[ii];
        ExtScalar acc = rhs[r];
        for (std::size_t c = ii + 1; c < m; ++c) acc = acc - G[r][c] * x[c];
        x[ii] = BigRat(1) / G[r][ii] * acc;
    }
    return x;
}

OracleProjection project_exact(const std::vector<long long>& exponents, bool unit_interval,
                               const std::vector<ExtScalar>& moments, const ExtScalar& f_norm_sq) {
    const auto coeffs = solve_gram(exponents, unit_interval, moments);
    ExtScalar err2 = f_norm_sq;
    for (std::size_t j = 0; j < coeffs.size(); ++j) err2 = err2 - coeffs[j] * moments[j];

    OracleProjection out;
    out.coefficients.reserve(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        out.coefficients.emplace_back(exponents[j], coeffs[j].to_double());
    const double e2 = err2.to_double();
    out.error_l2 = e2 > 0.0 ? std::sqrt(e2) : 0.0;
    return out;
}

std::vector<ExtScalar> exp_moments(const std::vector<long long>& exponents) {
    long long cap = 0;
    for (long long e : exponents) cap = std::max(cap, e);
    std::vector<ExtScalar> all(static_cast<std::size_t>(cap) + 1);
    all[0] = ExtScalar(BigRat(-1), BigRat(1));  // e - 1
    for (long long n = 1; n <= cap; ++n)
        all[static_cast<std::size_t>(n)] =
            ExtScalar(BigRat(0), BigRat(1)) - BigRat(n) * all[static_cast<std::size_t>(n - 1)];
    std::vector<ExtScalar> out;
    out.reserve(exponents.size());
    for (long long e : exponents) out.push_back(all[static_cast<std::size_t>(e)]);
    return out;
}

ExtScalar exp_norm_sq() { return ExtScalar(BigRat(-1, 2), BigRat(0), BigRat(1, 2)); }

OracleProjection project_exp(const std::vector<long long>& exponents) {
    return project_exact(exponents, true, exp_moments(exponents), exp_norm_sq());
}

std::vector<ExtScalar> poly_moments(const std::vector<BigRat>& poly,
                                    const std::vector<long long>& exponents, bool unit_interval) {
    std::vector<ExtScalar> out;
    out.reserve(exponents.size());
    for (long long e : exponents) {
        BigRat acc = 0;
        for (std::size_t j = 0; j < poly.size(); ++j)
            acc += poly[j] * monomial_integral(e + static_cast<long long>(j), unit_interval);
        out.push_back(ExtScalar(acc));
    }
    return out;
}

ExtScalar poly_norm_sq(const std::vector<BigRat>& poly, bool unit_interval) {
    BigRat acc = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        for (std::size_t j = 0; j < poly.size(); ++j)
            acc += poly[i] * poly[j] *
                   monomial_integral(static_cast<long long>(i + j), unit_interval);
    return ExtScalar(acc);
}

OracleProjection project_poly(const std::vector<BigRat>& poly,
                              const std::vector<long long>& exponents, bool unit_interval) {
    return project_exact(exponents, unit_interval, poly_moments(poly, exponents, unit_interval),
                         poly_norm_sq(poly, unit_interval));
}

}  // namespace powerspan::muntz::exact

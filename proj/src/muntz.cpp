#include "powerspan/muntz.hpp"

#include <algorithm>
#include <cmath>

#include "powerspan/errors.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::muntz {

namespace {

using funcrep::ipow;

// weighted real dot product, fixed left-to-right order
double wdot(const std::vector<double>& w, const std::vector<double>& u,
            const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double term = w[i] * u[i] * v[i];
        const double y = term - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

Complex wdot_cplx(const std::vector<double>& w, const std::vector<double>& u,
                  const std::vector<Complex>& v) {
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Complex term = w[i] * u[i] * v[i];
        double y = term.real() - cr;
        double t = sr + y;
        cr = (t - sr) - y;
        sr = t;
        y = term.imag() - ci;
        t = si + y;
        ci = (t - si) - y;
        si = t;
    }
    return {sr, si};
}

// Jacobi eigenvalue iteration for a small symmetric matrix; returns
// lambda_max / lambda_min with lambda_min clamped at 0.
std::pair<double, double> sym_eig_extremes(std::vector<std::vector<double>> A) {
    const std::size_t n = A.size();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
        if (off < 1e-280) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (A[p][q] == 0.0) continue;
                const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * akq;
                    A[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * aqk;
                    A[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = A[0][0], hi = A[0][0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, A[i][i]);
        hi = std::max(hi, A[i][i]);
    }
    return {std::max(lo, 0.0), hi};
}

struct GramSchmidt {
    // q[j] holds the orthonormal vectors (node samples); R is upper
    // triangular with basis = Q R in the weighted inner product.
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> R;
};

GramSchmidt orthonormalize(const std::vector<double>& w,
                           const std::vector<std::vector<double>>& basis,
                           const std::vector<long long>& exponents) {
    const std::size_t m = basis.size();
    GramSchmidt gs;
    gs.q.resize(m);
    gs.R.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> v = basis[j];
        const double orig = std::sqrt(std::max(0.0, wdot(w, v, v)));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const double c = wdot(w, gs.q[i], v);
                gs.R[i][j] += c;
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * gs.q[i][k];
            }
        }
        const double nrm = std::sqrt(std::max(0.0, wdot(w, v, v)));
        if (nrm < 1e-10 * orig)
            throw DegenerateSystemError(
                "best_approx_L2: exponent " + std::to_string(exponents[j]) +
                    " adds no new direction at working precision",
                exponents[j]);
        gs.R[j][j] = nrm;
        for (double& x : v) x /= nrm;
        gs.q[j] = std::move(v);
    }
    return gs;
}

}  // namespace

MuntzSystem MuntzSystem::make(std::vector<long long> exponents, double a, double b) {
    if (!(a < b)) throw PreconditionError("MuntzSystem: need a < b");
    if (exponents.empty()) throw PreconditionError("MuntzSystem: need at least one exponent");
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
    if (exponents.front() < 0) throw PreconditionError("MuntzSystem: negative exponent");
    MuntzSystem s;
    s.exponents = std::move(exponents);
    s.a = a;
    s.b = b;
    return s;
}

ApproxResult best_approx_L2(const IntervalFunction& f, const MuntzSystem& system,
                            const QuadratureRule& rule) {
    if (system.exponents.back() > kDefaultLambdaMax)
        throw PreconditionError("best_approx_L2: exponent above lambda_max=40");
    const double span = std::max(1.0, f.length());
    if (std::abs(rule.a() - f.a) > 1e-12 * span || std::abs(rule.b() - f.b) > 1e-12 * span)
        throw PreconditionError("best_approx_L2: rule does not tile the function domain");

    const auto& nodes = rule.nodes();
    const auto& w = rule.weights();
    const std::size_t nn = nodes.size();
    const std::size_t m = system.exponents.size();

    std::vector<std::vector<double>> basis(m, std::vector<double>(nn));
    par::for_each_index(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t j) {
        const long long lam = system.exponents[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < nn; ++i)
            basis[static_cast<std::size_t>(j)][i] = ipow(nodes[i], lam);
    });
    std::vector<Complex> fv(nn);
    par::for_each_index(static_cast<std::ptrdiff_t>(nn),
                        [&](std::ptrdiff_t i) { fv[static_cast<std::size_t>(i)] = f.eval(nodes[static_cast<std::size_t>(i)]); });

    const GramSchmidt gs = orthonormalize(w, basis, system.exponents);

    std::vector<Complex> beta(m);
    for (std::size_t j = 0; j < m; ++j) beta[j] = wdot_cplx(w, gs.q[j], fv);

    std::vector<Complex> approx(nn, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < nn; ++i) approx[i] += beta[j] * gs.q[j][i];

    ApproxResult res;
    {
        double err = 0.0, c = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            const double term = w[i] * std::norm(fv[i] - approx[i]);
            const double y = term - c;
            const double t = err + y;
            c = (t - err) - y;
            err = t;
        }
        res.error_l2 = std::sqrt(std::max(0.0, err));
    }

    // residual orthogonality against the raw monomials
    {
        double worst = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            Complex r{0.0, 0.0};
            for (std::size_t i = 0; i < nn; ++i) r += w[i] * (fv[i] - approx[i]) * basis[j][i];
            worst = std::max(worst, std::abs(r));
        }
        res.residual_orthogonality = worst;
    }

    // back-substitute R c = beta for the monomial coefficients
    std::vector<Complex> coeff(m);
    for (std::size_t jj = m; jj-- > 0;) {
        Complex acc = beta[jj];
        for (std::size_t k = jj + 1; k < m; ++k) acc -= gs.R[jj][k] * coeff[k];
        coeff[jj] = acc / gs.R[jj][jj];
    }
    res.coefficients.reserve(m);
    for (std::size_t j = 0; j < m; ++j) res.coefficients.emplace_back(system.exponents[j], coeff[j]);

    // raw Gram condition estimate (diagnostic only)
    {
        std::vector<std::vector<double>> G(m, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) G[i][j] = G[j][i] = wdot(w, basis[i], basis[j]);
        const auto [lo, hi] = sym_eig_extremes(G);
        res.gram_condition_estimate = lo > 0.0 ? hi / lo : 1e300;
        res.gram_condition_warning = res.gram_condition_estimate > kGramConditionWarning;
    }

    // evaluator + sup-grid error via the monomial form (documented as
    // trustworthy only while the condition estimate is moderate)
    {
        std::vector<long long> exps = system.exponents;
        std::vector<Complex> cs = coeff;
        res.approximant = [exps, cs](double x) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < exps.size(); ++j) acc += cs[j] * ipow(x, exps[j]);
            return acc;
        };
        const int grid = 1025;
        std::vector<double> dev(grid);
        par::for_each_index(grid, [&](std::ptrdiff_t i) {
            const double x = f.a + f.length() * static_cast<double>(i) / (grid - 1);
            dev[static_cast<std::size_t>(i)] = std::abs(f.eval(x) - res.approximant(x));
        });
        double worst = 0.0;
        for (double d : dev) worst = std::max(worst, d);
        res.error_sup_grid = worst;
    }
    return res;
}

std::vector<std::pair<long long, Complex>> annihilation_residuals(const IntervalFunction& f,
                                                                  const MuntzSystem& system,
                                                                  const QuadratureRule& rule) {
    const auto moments = funcrep::power_moments(f, rule, {}, system.exponents);
    std::vector<std::pair<long long, Complex>> out;
    out.reserve(moments.size());
    for (std::size_t j = 0; j < moments.size(); ++j)
        out.emplace_back(system.exponents[j], moments[j]);
    return out;
}

ErrorCurve error_curve(const IntervalFunction& f, const indexsets::LambdaFamily& family,
                       std::size_t stages) {
    if (stages < 1) throw PreconditionError("error_curve: stages must be >= 1");
    ErrorCurve curve;
    curve.verdict = indexsets::classify_ms(family, f.a, f.b);
    const auto members = family.first_n(stages);
    curve.exponents_used.assign(members.begin(), members.end());
    if (curve.exponents_used.empty()) throw PreconditionError("error_curve: empty family");

    const QuadratureRule rule = QuadratureRule::for_function(f, 16);
    const auto& nodes = rule.nodes();
    const auto& w = rule.weights();
    const std::size_t nn = nodes.size();
    const std::size_t m = curve.exponents_used.size();

    std::vector<std::vector<double>> basis(m, std::vector<double>(nn));
    par::for_each_index(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t j) {
        for (std::size_t i = 0; i < nn; ++i)
            basis[static_cast<std::size_t>(j)][i] =
                ipow(nodes[i], curve.exponents_used[static_cast<std::size_t>(j)]);
    });
    std::vector<Complex> fv(nn);
    par::for_each_index(static_cast<std::ptrdiff_t>(nn),
                        [&](std::ptrdiff_t i) { fv[static_cast<std::size_t>(i)] = f.eval(nodes[static_cast<std::size_t>(i)]); });

    const GramSchmidt gs = orthonormalize(w, basis, curve.exponents_used);

    // nested projections: peel one orthonormal direction at a time off the
    // explicit residual (resolves errors far below the Parseval cancellation
    // floor of ||f||^2 - sum |beta|^2)
    std::vector<Complex> residual = fv;
    for (std::size_t j = 0; j < m; ++j) {
        const Complex b = wdot_cplx(w, gs.q[j], residual);
        for (std::size_t i = 0; i < nn; ++i) residual[i] -= b * gs.q[j][i];
        double err2 = 0.0, c = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            const double term = w[i] * std::norm(residual[i]);
            const double y = term - c;
            const double t = err2 + y;
            c = (t - err2) - y;
            err2 = t;
        }
        curve.stages.emplace_back(j + 1, std::sqrt(std::max(0.0, err2)));
    }
    return curve;
}

IntervalFunction pushforward(const IntervalFunction& f, const psipower::SmoothMap& psi) {
    const psipower::Injectivity inj = psipower::detect_injectivity(psi);
    if (!inj.injective)
        throw PreconditionError("pushforward: psi folds at x0=" +
                                std::to_string(inj.fold_point.value_or(0.0)));

    const double pa = psi.psi(psi.a());
    const double pb = psi.psi(psi.b());
    const double lo = std::min(pa, pb);
    const double hi = std::max(pa, pb);

    const psipower::SmoothMap map = psi;
    const double xa = psi.a(), xb = psi.b();
    const bool increasing = inj.direction > 0;
    auto invert = [map, xa, xb, increasing](double t) {
        double lo_x = xa, hi_x = xb;
        double flo = map.psi(lo_x) - t;
        if (!increasing) {
            // work with the increasing function -psi
            flo = -flo;
        }
        if (flo == 0.0) return lo_x;
        if ((increasing ? map.psi(hi_x) - t : t - map.psi(hi_x)) == 0.0) return hi_x;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo_x + hi_x);
            if (mid == lo_x || mid == hi_x) break;
            const double fm = increasing ? map.psi(mid) - t : t - map.psi(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo_x = mid;
                flo = fm;
            } else {
                hi_x = mid;
            }
        }
        return 0.5 * (lo_x + hi_x);
    };

    IntervalFunction out;
    out.a = lo;
    out.b = hi;
    auto feval = f.eval;
    // |psi'|: the Jacobian that makes the moment identity hold for both
    // orientations once J carries its usual (increasing) parametrization
    out.eval = [map, invert, feval](double t) -> Complex {
        const double x = invert(t);
        return feval(x) / std::abs(map.dpsi(x));
    };

    // endpoints where psi' vanishes produce integrable inverse-sqrt blowup
    const double dscale = std::max(std::abs(psi.dpsi(psi.a())), std::abs(psi.dpsi(psi.b())));
    out.smoothness = f.smoothness;
    if (std::abs(psi.dpsi(psi.a())) < 1e-9 * std::max(1.0, dscale)) {
        out.singularities.push_back(pa);
        out.smoothness = funcrep::Smoothness::IntegrableSingularity;
    }
    if (std::abs(psi.dpsi(psi.b())) < 1e-9 * std::max(1.0, dscale)) {
        out.singularities.push_back(pb);
        out.smoothness = funcrep::Smoothness::IntegrableSingularity;
    }
    for (double s : f.singularities) out.singularities.push_back(psi.psi(s));
    for (double s : f.breakpoints) out.breakpoints.push_back(psi.psi(s));
    std::sort(out.singularities.begin(), out.singularities.end());
    std::sort(out.breakpoints.begin(), out.breakpoints.end());
    return out;
}

}  // namespace powerspan::muntz

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "powerspan/errors.hpp"
#include "powerspan/muntz.hpp"
#include "powerspan/muntz_exact.hpp"

using namespace powerspan;
using funcrep::Complex;
using funcrep::IntervalFunction;
using funcrep::QuadratureRule;
using muntz::MuntzSystem;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

IntervalFunction exp_fn() {
    return funcrep::make_interval_function(0, 1, [](double x) { return Complex(std::exp(x), 0); });
}

// weighted projection error by a small test-side Gram-Schmidt, used as the
// second route in the pushforward equivalence check
double weighted_projection_error(const std::vector<double>& nodes, const std::vector<double>& w,
                                 const std::vector<std::vector<double>>& basis,
                                 const std::vector<double>& f) {
    std::vector<std::vector<double>> q;
    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * v[i];
        return s;
    };
    for (auto v : basis) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qi : q) {
                const double c = dot(qi, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * qi[i];
            }
        const double n = std::sqrt(dot(v, v));
        for (double& x : v) x /= n;
        q.push_back(v);
    }
    double err2 = dot(f, f);
    for (const auto& qi : q) {
        const double b = dot(qi, f);
        err2 -= b * b;
    }
    return std::sqrt(std::max(0.0, err2));
}

}  // namespace

TEST_CASE("constant projection of x on [0,1]") {
    auto f = funcrep::make_interval_function(0, 1, [](double x) { return Complex(x, 0); });
    const auto r = muntz::best_approx_L2(f, MuntzSystem::make({0}, 0, 1),
                                         QuadratureRule::for_function(f));
    CHECK(r.coefficients[0].second.real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r.error_l2 == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-13));
}

TEST_CASE("polynomials inside the span are reproduced") {
    auto f = funcrep::make_interval_function(0, 1, [](double x) { return Complex(x * x, 0); });
    const auto r = muntz::best_approx_L2(f, MuntzSystem::make({0, 1, 2}, 0, 1),
                                         QuadratureRule::for_function(f));
    CHECK(r.error_l2 <= 1e-12);
    CHECK(std::abs(r.coefficients[0].second) < 1e-12);
    CHECK(std::abs(r.coefficients[1].second) < 1e-11);
    CHECK(r.coefficients[2].second.real() == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("e^x against the exact-rational oracle") {
    const auto r = muntz::best_approx_L2(exp_fn(), MuntzSystem::make({0, 1}, 0, 1),
                                         QuadratureRule::for_function(exp_fn()));
    const auto oracle = muntz::exact::project_exp({0, 1});
    // closed forms 4e-10 and 18-6e
    CHECK(oracle.coefficients[0].second ==
          doctest::Approx(4 * std::exp(1.0) - 10).epsilon(1e-12));
    CHECK(oracle.coefficients[1].second ==
          doctest::Approx(18 - 6 * std::exp(1.0)).epsilon(1e-12));
    CHECK(r.coefficients[0].second.real() ==
          doctest::Approx(oracle.coefficients[0].second).epsilon(1e-9));
    CHECK(r.coefficients[1].second.real() ==
          doctest::Approx(oracle.coefficients[1].second).epsilon(1e-9));
    CHECK(r.error_l2 == doctest::Approx(oracle.error_l2).epsilon(1e-8));
    CHECK(r.error_l2 == doctest::Approx(0.0628).epsilon(1e-2));
}

TEST_CASE("projection identity: error^2 = ||f||^2 - ||approx||^2 up to tolerance") {
    auto f = exp_fn();
    const auto rule = QuadratureRule::for_function(f);
    const auto r = muntz::best_approx_L2(f, MuntzSystem::make({0, 1, 3}, 0, 1), rule);
    const double norm_f = funcrep::norm(f, funcrep::NormKind::L2, rule);
    auto approx = funcrep::make_interval_function(0, 1, r.approximant);
    const double norm_p = funcrep::norm(approx, funcrep::NormKind::L2, rule);
    CHECK(std::abs(r.error_l2 * r.error_l2 - (norm_f * norm_f - norm_p * norm_p)) < 1e-10);
}

TEST_CASE("oracle equivalence on a degree-12 polynomial target, exponents up to 8") {
    // moderate-error target keeps the comparison above the binary64
    // cancellation floor
    std::vector<muntz::exact::BigRat> poly;
    for (int j = 0; j <= 12; ++j)
        poly.emplace_back((j % 3 == 0 ? 1 : -2) * (j + 1), 3 + (j % 5));
    auto f = funcrep::make_interval_function(0, 1, [poly](double x) {
        double acc = 0;
        for (std::size_t j = poly.size(); j-- > 0;)
            acc = acc * x + static_cast<double>(poly[j]);
        return Complex(acc, 0);
    });
    const std::vector<long long> exps{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const auto impl =
        muntz::best_approx_L2(f, MuntzSystem::make(exps, 0, 1), QuadratureRule::for_function(f));
    const auto oracle = muntz::exact::project_poly(poly, exps, true);
    CHECK(impl.error_l2 == doctest::Approx(oracle.error_l2).epsilon(1e-8));
    for (std::size_t j = 0; j < exps.size(); ++j)
        CHECK(std::abs(impl.coefficients[j].second.real() - oracle.coefficients[j].second) <
              1e-6 * std::max(1.0, std::abs(oracle.coefficients[j].second)));
}

TEST_CASE("residual orthogonality") {
    auto f = exp_fn();
    const auto rule = QuadratureRule::for_function(f);
    const auto r = muntz::best_approx_L2(f, MuntzSystem::make({0, 1, 2, 5, 9}, 0, 1), rule);
    const double scale = funcrep::norm(f, funcrep::NormKind::L2, rule);
    CHECK(r.residual_orthogonality < 1e-10 * scale);
}

TEST_CASE("degenerate systems name the offending exponent") {
    // on a sliver near 1 the monomials are numerically collinear
    auto f = funcrep::make_interval_function(1.0 - 1e-9, 1.0,
                                             [](double x) { return Complex(x, 0); });
    try {
        muntz::best_approx_L2(f, MuntzSystem::make({0, 1, 2}, 1.0 - 1e-9, 1.0),
                              QuadratureRule::for_function(f));
        FAIL("expected DegenerateSystemError");
    } catch (const DegenerateSystemError& e) {
        CHECK(e.offending_exponent >= 1);
    }
}

TEST_CASE("annihilation residual examples") {
    IntervalFunction sgn = funcrep::make_interval_function(
        -1, 1, [](double x) { return Complex(x >= 0 ? 1.0 : -1.0, 0); });
    sgn.smoothness = funcrep::Smoothness::PiecewiseContinuous;
    sgn.breakpoints = {0.0};
    const auto res = muntz::annihilation_residuals(sgn, MuntzSystem::make({0, 2, 4}, -1, 1),
                                                   QuadratureRule::for_function(sgn));
    for (const auto& [l, v] : res) CHECK(std::abs(v) < 1e-13);

    auto one = funcrep::make_interval_function(0, 1, [](double) { return Complex(1, 0); });
    const auto m3 = muntz::annihilation_residuals(one, MuntzSystem::make({3}, 0, 1),
                                                  QuadratureRule::for_function(one));
    CHECK(m3[0].second.real() == doctest::Approx(0.25).epsilon(1e-14));

    auto lin = funcrep::make_interval_function(0, 1, [](double t) { return Complex(t - 0.5, 0); });
    const auto m0 = muntz::annihilation_residuals(lin, MuntzSystem::make({0}, 0, 1),
                                                  QuadratureRule::for_function(lin));
    CHECK(std::abs(m0[0].second) < 1e-15);
}

TEST_CASE("error curve: strictly decreasing for e^x, oracle-pinned last stage") {
    const auto curve = muntz::error_curve(exp_fn(), indexsets::LambdaFamily::arithmetic(0, 1), 3);
    REQUIRE(curve.stages.size() == 3);
    CHECK(curve.stages[0].second > curve.stages[1].second);
    CHECK(curve.stages[1].second > curve.stages[2].second);
    const auto oracle = muntz::exact::project_exp({0, 1, 2});
    CHECK(curve.stages[2].second == doctest::Approx(oracle.error_l2).epsilon(1e-7));
    CHECK(curve.verdict.is_ms);
}

TEST_CASE("error curve is flat for an odd target against even exponents") {
    auto f = funcrep::make_interval_function(
        -1, 1, [](double x) { return Complex(x * x * x, 0); });
    const auto curve = muntz::error_curve(f, indexsets::LambdaFamily::arithmetic(0, 2), 4);
    const auto rule = QuadratureRule::for_function(f, 16);
    const double norm_f = funcrep::norm(f, funcrep::NormKind::L2, rule);
    for (const auto& [k, e] : curve.stages) CHECK(e == doctest::Approx(norm_f).epsilon(1e-10));
}

TEST_CASE("projection monotonicity over nested exponent sets") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> amp(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
        auto f = funcrep::make_interval_function(0, 1, [=](double x) {
            return Complex(a1 * std::exp(x) + a2 * std::sin(kTwoPi * x) + a3 * x * x, 0);
        });
        const auto curve = muntz::error_curve(f, indexsets::LambdaFamily::arithmetic(0, 1), 8);
        for (std::size_t k = 1; k < curve.stages.size(); ++k)
            CHECK(curve.stages[k].second <= curve.stages[k - 1].second + 1e-12);
    }
}

TEST_CASE("pushforward identity and scaling examples") {
    psipower::SmoothMap ident(0, 1, [](double x) { return x; }, [](double) { return 1.0; },
                              [](double) { return 0.0; }, "id");
    auto f = funcrep::make_interval_function(
        0, 1, [](double x) { return Complex(std::sin(kTwoPi * x) + 2, 0); });
    const auto pf = muntz::pushforward(f, ident);
    for (double t : {0.1, 0.5, 0.9})
        CHECK(std::abs(pf.eval(t) - f.eval(t)) < 1e-12);

    psipower::SmoothMap twice(0, 1, [](double x) { return 2 * x; }, [](double) { return 2.0; },
                              [](double) { return 0.0; }, "2x");
    auto one = funcrep::make_interval_function(0, 1, [](double) { return Complex(1, 0); });
    const auto pf2 = muntz::pushforward(one, twice);
    CHECK(pf2.a == doctest::Approx(0.0));
    CHECK(pf2.b == doctest::Approx(2.0));
    CHECK(pf2.eval(1.3).real() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("x^3 violates the standing hypothesis at construction") {
    CHECK_THROWS_AS(psipower::SmoothMap(0, 1, [](double x) { return x * x * x; },
                                        [](double x) { return 3 * x * x; },
                                        [](double x) { return 6 * x; }, "cube"),
                    PreconditionError);
}

TEST_CASE("pushforward rejects folds, carrying the critical point") {
    psipower::SmoothMap sq(-1, 1, [](double x) { return x * x; }, [](double x) { return 2 * x; },
                           [](double) { return 2.0; }, "square");
    auto f = funcrep::make_interval_function(-1, 1, [](double) { return Complex(1, 0); });
    CHECK_THROWS_AS(muntz::pushforward(f, sq), PreconditionError);
}

TEST_CASE("moment transport through the pushforward") {
    const double PI = std::numbers::pi;
    psipower::SmoothMap cp(
        0, 1, [PI](double t) { return std::cos(PI * t); },
        [PI](double t) { return -PI * std::sin(PI * t); },
        [PI](double t) { return -PI * PI * std::cos(PI * t); }, "cospi");
    auto f = funcrep::make_interval_function(
        0, 1, [](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); });
    const auto pf = muntz::pushforward(f, cp);
    std::vector<long long> lambdas;
    for (long long l = 0; l <= 20; ++l) lambdas.push_back(l);
    const auto lhs = funcrep::power_moments(
        f, QuadratureRule::for_function(f, 16), [&cp](double t) { return cp.psi(t); }, lambdas);
    const auto rhs = funcrep::power_moments(pf, QuadratureRule::for_function(pf, 16), {}, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        CHECK(std::abs(lhs[i] - rhs[i]) < 1e-10);
}

TEST_CASE("pushforward route and composed-basis route agree on the projection error") {
    const double PI = std::numbers::pi;
    psipower::SmoothMap cp(
        0, 1, [PI](double t) { return std::cos(PI * t); },
        [PI](double t) { return -PI * std::sin(PI * t); },
        [PI](double t) { return -PI * PI * std::cos(PI * t); }, "cospi");
    auto f = funcrep::make_interval_function(
        0, 1, [](double t) { return Complex(t * t + std::sin(kTwoPi * t), 0); });
    const std::vector<long long> exps{0, 1, 2, 3, 4};

    // route A: x-space, basis psi(x)^lambda against the plain x-measure
    const auto rule_x = QuadratureRule::uniform(0, 1, 64);
    std::vector<std::vector<double>> basis_x;
    std::vector<double> fx(rule_x.nodes().size());
    for (long long l : exps) {
        std::vector<double> col(rule_x.nodes().size());
        for (std::size_t i = 0; i < col.size(); ++i)
            col[i] = funcrep::ipow(cp.psi(rule_x.nodes()[i]), l);
        basis_x.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < fx.size(); ++i) fx[i] = f.eval(rule_x.nodes()[i]).real();
    const double err_x =
        weighted_projection_error(rule_x.nodes(), rule_x.weights(), basis_x, fx);

    // route B: the same quantity after t = psi(x): monomials on J against the
    // transported weight 1/|psi'|
    const auto pf = muntz::pushforward(f, cp);
    const auto rule_t = QuadratureRule::for_function(pf, 48);
    std::vector<std::vector<double>> basis_t;
    std::vector<double> ft(rule_t.nodes().size());
    std::vector<double> wt(rule_t.nodes().size());
    auto invert = [&](double t) {
        double lo = 0, hi = 1;  // psi decreasing on [0,1]
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (cp.psi(mid) > t ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    for (long long l : exps) {
        std::vector<double> col(rule_t.nodes().size());
        for (std::size_t i = 0; i < col.size(); ++i)
            col[i] = funcrep::ipow(rule_t.nodes()[i], l);
        basis_t.push_back(std::move(col));
    }
    for (std::size_t i = 0; i < ft.size(); ++i) {
        const double x = invert(rule_t.nodes()[i]);
        ft[i] = f.eval(x).real();
        wt[i] = rule_t.weights()[i] / std::abs(cp.dpsi(x));
    }
    const double err_t = weighted_projection_error(rule_t.nodes(), wt, basis_t, ft);
    CHECK(err_x == doctest::Approx(err_t).epsilon(1e-9));
}

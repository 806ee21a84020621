#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "powerspan/errors.hpp"
#include "powerspan/funcrep.hpp"

using namespace powerspan;
using funcrep::Complex;
using funcrep::IntervalFunction;
using funcrep::NormKind;
using funcrep::QuadratureRule;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("basic integrals") {
    auto f1 = funcrep::make_interval_function(0, 1, [](double t) { return Complex(t, 0); });
    CHECK(funcrep::integrate(f1, QuadratureRule::for_function(f1)).value.real() ==
          doctest::Approx(0.5).epsilon(1e-15));

    auto f2 = funcrep::make_interval_function(-1, 1, [](double u) { return Complex(u * u, 0); });
    CHECK(funcrep::integrate(f2, QuadratureRule::for_function(f2)).value.real() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    auto f3 = funcrep::make_interval_function(
        0, 1, [](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); });
    CHECK(funcrep::integrate(f3, QuadratureRule::for_function(f3)).value.real() ==
          doctest::Approx(oracles::bessel_i0_of_1()).epsilon(1e-13));
}

TEST_CASE("rule/domain mismatch is rejected") {
    auto f = funcrep::make_interval_function(0, 1, [](double t) { return Complex(t, 0); });
    CHECK_THROWS_AS(funcrep::integrate(f, QuadratureRule::uniform(0, 2, 4)), PreconditionError);
}

TEST_CASE("rule invariants: positive weights summing to the length, polynomial exactness") {
    auto f = funcrep::make_interval_function(0.3, 2.7, [](double x) { return Complex(x, 0); });
    const auto rule = QuadratureRule::for_function(f);
    double wsum = 0.0;
    for (double w : rule.weights()) {
        CHECK(w > 0.0);
        wsum += w;
    }
    CHECK(std::abs(wsum - f.length()) < 1e-14 * f.length());

    // Gauss order 16 integrates degree <= 31 on plain panels
    for (int deg : {7, 17, 31}) {
        auto p = funcrep::make_interval_function(
            0.3, 2.7, [deg](double x) { return Complex(funcrep::ipow(x, deg), 0); });
        const double exact = (funcrep::ipow(2.7, deg + 1) - funcrep::ipow(0.3, deg + 1)) / (deg + 1);
        const double got = funcrep::integrate(p, rule).value.real();
        CHECK(std::abs(got - exact) < 1e-13 * std::abs(exact));
    }
}

TEST_CASE("integrate error estimate bounds the actual error on smooth integrands") {
    struct Case {
        std::function<Complex(double)> f;
        double exact;
    };
    const std::vector<Case> cases = {
        {[](double t) { return Complex(std::sin(kTwoPi * t), 0); }, 0.0},
        {[](double t) { return Complex(std::exp(t), 0); }, std::exp(1.0) - 1.0},
        {[](double t) { return Complex(t * t * t, 0); }, 0.25},
        {[](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); },
         oracles::bessel_i0_of_1()},
    };
    for (const auto& c : cases) {
        auto f = funcrep::make_interval_function(0, 1, c.f);
        const auto r = funcrep::integrate(f, QuadratureRule::for_function(f));
        CHECK(std::abs(r.value.real() - c.exact) <= r.error_estimate + 1e-13);
    }
}

TEST_CASE("integrable endpoint singularities integrate to full accuracy") {
    IntervalFunction g = funcrep::make_interval_function(
        -1, 1, [](double u) { return Complex(1.0 / (kPi * std::sqrt(1 - u * u)), 0); });
    g.smoothness = funcrep::Smoothness::IntegrableSingularity;
    g.singularities = {-1.0, 1.0};
    const auto r = funcrep::integrate(g, QuadratureRule::for_function(g));
    CHECK(std::abs(r.value.real() - 1.0) < 1e-12);
}

TEST_CASE("norms") {
    auto fm = funcrep::make_interval_function(0, 1, [](double t) { return Complex(t - 0.5, 0); });
    CHECK(funcrep::norm(fm, NormKind::L2, QuadratureRule::for_function(fm)) ==
          doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-13));

    auto fc = funcrep::make_interval_function(
        0, 1, [](double t) { return Complex(std::cos(kTwoPi * t), 0); });
    CHECK(funcrep::norm(fc, NormKind::Sup, QuadratureRule::for_function(fc), 1001) ==
          doctest::Approx(1.0).epsilon(1e-15));

    auto fs = funcrep::make_interval_function(
        0, 1, [](double t) { return Complex(std::sin(kTwoPi * t), 0); });
    CHECK(funcrep::norm(fs, NormKind::L1, QuadratureRule::for_function(fs)) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-13));

    CHECK_THROWS_AS(funcrep::norm(fs, NormKind::Sup, QuadratureRule::for_function(fs), 32),
                    PreconditionError);
}

TEST_CASE("fourier coefficients of trigonometric polynomials are exact") {
    const auto pc = funcrep::fourier_coeffs(
        [](double t) { return Complex(std::cos(kTwoPi * t), 0); }, 4, 64);
    CHECK(std::abs(pc.coeff(1) - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(pc.coeff(-1) - Complex(0.5, 0)) < 1e-14);
    for (int k : {-4, -3, -2, 0, 2, 3, 4}) CHECK(std::abs(pc.coeff(k)) < 1e-14);
    CHECK(pc.evaluator_tolerance() < 1e-13);
    CHECK(pc.real_valued());

    const auto ps = funcrep::fourier_coeffs(
        [](double t) { return Complex(std::sin(2 * kTwoPi * t), 0); }, 4, 64);
    CHECK(std::abs(ps.coeff(2) - Complex(0, -0.5)) < 1e-14);
    CHECK(std::abs(ps.coeff(-2) - Complex(0, 0.5)) < 1e-14);

    const auto pone = funcrep::fourier_coeffs([](double) { return Complex(1, 0); }, 2, 16);
    CHECK(std::abs(pone.coeff(0) - Complex(1, 0)) < 1e-15);
    for (int k : {-2, -1, 1, 2}) CHECK(std::abs(pone.coeff(k)) < 1e-15);
}

TEST_CASE("aliasing guard") {
    CHECK_THROWS_AS(funcrep::fourier_coeffs([](double) { return Complex(1, 0); }, 4, 16),
                    PreconditionError);
}

TEST_CASE("round trip: sampling a trig polynomial recovers its coefficients") {
    const auto poly = funcrep::PeriodicFunction::from_coeff_list(
        {{0, {0.3, 0.0}}, {1, {0.2, -0.5}}, {-1, {0.2, 0.5}}, {3, {-0.1, 0.05}}, {-3, {-0.1, -0.05}}});
    const auto back =
        funcrep::fourier_coeffs([&](double t) { return poly.band_value(t); }, 3, 4 * 3 + 4);
    for (int k = -3; k <= 3; ++k) CHECK(std::abs(back.coeff(k) - poly.coeff(k)) < 1e-13);
}

TEST_CASE("Plancherel on the band matches the quadrature L2 norm") {
    const auto poly = funcrep::PeriodicFunction::from_coeff_list(
        {{1, {0.5, 0.1}}, {-1, {0.5, -0.1}}, {2, {0, -0.25}}, {-2, {0, 0.25}}, {0, {0.7, 0}}});
    auto f = funcrep::make_interval_function(
        0, 1, [&](double t) { return poly.band_value(t); });
    const double l2 = funcrep::norm(f, NormKind::L2, QuadratureRule::for_function(f, 16));
    CHECK(std::abs(poly.l2_norm() * poly.l2_norm() - l2 * l2) < 1e-12);
}

TEST_CASE("Fejer sums") {
    const auto cosf = funcrep::PeriodicFunction::from_coeff_list({{1, {0.5, 0}}, {-1, {0.5, 0}}});
    const auto f1 = funcrep::fejer_sum(cosf, 1);
    CHECK(f1.coeff(1).real() == doctest::Approx(0.25).epsilon(1e-15));
    const auto f8 = funcrep::fejer_sum(cosf, 8);
    CHECK(f8.coeff(1).real() == doctest::Approx(0.5 * 8.0 / 9.0).epsilon(1e-15));
    const auto c = funcrep::PeriodicFunction::from_coeff_list({{0, {0.77, 0}}});
    CHECK(funcrep::fejer_sum(c, 5).coeff(0).real() == doctest::Approx(0.77).epsilon(1e-15));
}

TEST_CASE("Fejer sums preserve positivity on the grid") {
    // 1 + cos is nonnegative
    const auto f = funcrep::PeriodicFunction::from_coeff_list(
        {{0, {1.0, 0}}, {1, {0.5, 0}}, {-1, {0.5, 0}}});
    for (int N : {1, 4, 16}) {
        const auto fej = funcrep::fejer_sum(f, N);
        for (int i = 0; i < 256; ++i) {
            CHECK(fej.band_value(i / 256.0).real() >= -1e-12);
        }
    }
}

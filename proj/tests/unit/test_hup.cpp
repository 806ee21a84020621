#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "powerspan/errors.hpp"
#include "powerspan/hup.hpp"

using namespace powerspan;
using funcrep::Complex;
using funcrep::PeriodicFunction;
using hup::CircleMeasure;
using realnum::SymbolicReal;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

CircleMeasure unit_measure() {
    return CircleMeasure{PeriodicFunction::from_coeff_list({{0, {1, 0}}})};
}

CircleMeasure exp_sin_measure() {
    return CircleMeasure{funcrep::fourier_coeffs(
        [](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); }, 24, 128)};
}

}  // namespace

TEST_CASE("mu_hat at the origin is the total mass") {
    CHECK(std::abs(hup::mu_hat(unit_measure(), 0, 0) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("mu_hat of the uniform density is the Bessel kernel along lines") {
    // against the independent power-series oracle
    for (double eta : {0.25, 0.5, 1.0}) {
        const double expected = oracles::bessel_j0(kTwoPi * eta);
        const Complex got = hup::mu_hat(unit_measure(), eta, 0.0);
        CHECK(std::abs(got - Complex(expected, 0)) < 1e-11);
    }
}

TEST_CASE("an odd density vanishes along its symmetry line") {
    CircleMeasure mu{PeriodicFunction::from_coeff_list({{1, {0, -0.5}}, {-1, {0, 0.5}}})};
    const auto lr = hup::line_restriction(mu, SymbolicReal::rational(0, 1), hup::standard_r_grid());
    CHECK(lr.max_modulus < 1e-13);
    // and the uniform density at r = 0 is 1
    const auto lr2 =
        hup::line_restriction(unit_measure(), SymbolicReal::rational(2, 7), {0.0});
    CHECK(std::abs(lr2.values[0] - Complex(1, 0)) < 1e-14);
}

TEST_CASE("rotation covariance of mu_hat") {
    const auto f = exp_sin_measure();
    const double theta = 0.23;
    // density shifted by theta
    std::vector<std::pair<int, Complex>> entries;
    for (const auto& [k, c] : f.density.table()) {
        const double ang = -kTwoPi * k * theta;
        entries.emplace_back(k, c * Complex(std::cos(ang), std::sin(ang)));
    }
    CircleMeasure shifted{PeriodicFunction::from_coeff_list(entries)};
    const double eta = 0.8, xi = 0.45;
    // rotate the evaluation point by -2 pi theta
    const double c = std::cos(kTwoPi * theta), s = std::sin(kTwoPi * theta);
    const Complex lhs = hup::mu_hat(shifted, eta, xi);
    const Complex rhs = hup::mu_hat(f, c * eta + s * xi, -s * eta + c * xi);
    CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("moment-derivative consistency on the smooth family") {
    const auto theta = SymbolicReal::rational(1, 7);
    for (const auto& mu : {exp_sin_measure(),
                           CircleMeasure{PeriodicFunction::from_coeff_list(
                               {{0, {0.4, 0}}, {1, {0.3, -0.1}}, {-1, {0.3, 0.1}},
                                {3, {-0.15, 0}}, {-3, {-0.15, 0}}})}}) {
        const auto rows = hup::moment_derivative_check(mu, theta, 4);
        REQUIRE(rows.size() == 5);
        for (const auto& row : rows) CHECK(row.discrepancy < 1e-4);
    }
}

TEST_CASE("moment-derivative worked examples") {
    const auto theta = SymbolicReal::rational(1, 5);
    // lambda = 0: both sides are the integral of f
    const auto rows0 = hup::moment_derivative_check(exp_sin_measure(), theta, 0);
    CHECK(std::abs(rows0[0].finite_difference - rows0[0].moment_side) < 1e-12);
    CHECK(rows0[0].moment_side.real() == doctest::Approx(oracles::bessel_i0_of_1()).epsilon(1e-10));

    // lambda = 1 for f = cos 2 pi (t - theta): the moment side is (2 i pi)/2
    std::vector<std::pair<int, Complex>> entries{
        {1, 0.5 * realnum::circle_exp(theta, -1)}, {-1, 0.5 * realnum::circle_exp(theta, 1)}};
    CircleMeasure mu{PeriodicFunction::from_coeff_list(entries)};
    const auto rows1 = hup::moment_derivative_check(mu, theta, 1);
    CHECK(std::abs(rows1[1].moment_side - Complex(0, std::numbers::pi)) < 1e-12);
    CHECK(std::abs(rows1[1].finite_difference - rows1[1].moment_side) < 1e-6);

    CHECK_THROWS_AS(hup::moment_derivative_check(mu, theta, 7), PreconditionError);
}

TEST_CASE("hup verdicts") {
    const auto not_pair = hup::hup_verdict(SymbolicReal::rational(0, 1),
                                           SymbolicReal::rational(1, 3));
    CHECK(not_pair.verdict == hup::HupVerdictKind::NotHup);
    REQUIRE(not_pair.witness.has_value());
    CHECK(not_pair.witness_max_line_modulus < 1e-8);
    CHECK(not_pair.witness->witness.l2_norm() > 0.5);

    const auto pair = hup::hup_verdict(SymbolicReal::rational(0, 1),
                                       SymbolicReal::surd(0, 1, 2, 2));
    CHECK(pair.verdict == hup::HupVerdictKind::Hup);
    CHECK(pair.min_determinant > 0.0);
    CHECK_FALSE(pair.witness.has_value());

    CHECK_THROWS_AS(hup::hup_verdict(SymbolicReal::rational(1, 3), SymbolicReal::rational(1, 3)),
                    PreconditionError);

    const auto indet =
        hup::hup_verdict(SymbolicReal::from_double(0.123), SymbolicReal::rational(0, 1));
    CHECK(indet.verdict == hup::HupVerdictKind::Indeterminate);
}

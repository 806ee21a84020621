#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "powerspan/cosinesys.hpp"
#include "powerspan/errors.hpp"

using namespace powerspan;
using cosinesys::DifferenceClass;
using cosinesys::ShiftPair;
using funcrep::Complex;
using funcrep::PeriodicFunction;
using realnum::SymbolicReal;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const SymbolicReal kZero = SymbolicReal::rational(0, 1);
const SymbolicReal kHalfSqrt2 = SymbolicReal::surd(0, 1, 2, 2);

PeriodicFunction cos_at(int k) {
    return PeriodicFunction::from_coeff_list({{k, {0.5, 0}}, {-k, {0.5, 0}}});
}

PeriodicFunction sin_at(int k) {
    return PeriodicFunction::from_coeff_list({{k, {0.0, -0.5}}, {-k, {0.0, 0.5}}});
}

PeriodicFunction random_zero_mean_trig(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<std::pair<int, Complex>> entries;
    for (int k = 1; k <= degree; ++k) {
        double re, im;
        do {
            re = unit(rng);
            im = unit(rng);
        } while (re * re + im * im > 1.0);
        entries.emplace_back(k, Complex(re, im));
        do {
            re = unit(rng);
            im = unit(rng);
        } while (re * re + im * im > 1.0);
        entries.emplace_back(-k, Complex(re, im));
    }
    return PeriodicFunction::from_coeff_list(entries);
}

}  // namespace

TEST_CASE("shift pairs classify their difference") {
    CHECK(ShiftPair::make(kZero, kHalfSqrt2).difference_class == DifferenceClass::IrrationalExact);
    const auto rat = ShiftPair::make(SymbolicReal::rational(1, 3), kZero);
    CHECK(rat.difference_class == DifferenceClass::Rational);
    CHECK(rat.difference->den == 3);
    CHECK(ShiftPair::make(SymbolicReal::from_double(0.3), kZero).difference_class ==
          DifferenceClass::FloatUnknown);
    CHECK_THROWS_AS(ShiftPair::make(SymbolicReal::rational(3, 2), kZero), PreconditionError);
}

TEST_CASE("pushforward to [-1,1]: arcsine density and vanishing odd part") {
    const auto one = PeriodicFunction::from_coeff_list({{0, {1, 0}}});
    const auto g = cosinesys::pushforward_circle(one, kZero);
    CHECK(g.eval(0.0).real() == doctest::Approx(1.0 / kPi).epsilon(1e-13));
    const auto I = funcrep::integrate(g, funcrep::QuadratureRule::for_function(g, 16));
    CHECK(I.value.real() == doctest::Approx(1.0).epsilon(1e-11));

    const auto godd = cosinesys::pushforward_circle(sin_at(1), kZero);
    for (double u : {-0.9, -0.3, 0.2, 0.7}) CHECK(std::abs(godd.eval(u)) < 1e-13);

    // f = cos 2 pi (t - theta): first moment of g is int cos^2 = 1/2
    const auto theta = SymbolicReal::rational(2, 7);
    std::vector<std::pair<int, Complex>> entries{
        {1, 0.5 * realnum::circle_exp(theta, -1)}, {-1, 0.5 * realnum::circle_exp(theta, 1)}};
    const auto g2 =
        cosinesys::pushforward_circle(PeriodicFunction::from_coeff_list(entries), theta);
    const auto m = funcrep::power_moments(g2, funcrep::QuadratureRule::for_function(g2, 16), {},
                                          {1});
    CHECK(m[0].real() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("one-shift residuals: worked examples") {
    const auto all = indexsets::LambdaFamily::arithmetic(0, 1);
    const auto r1 = cosinesys::one_shift_residuals(sin_at(1), kZero, all, 20);
    for (const auto& [l, v] : r1.residuals) CHECK(std::abs(v) < 1e-12);
    CHECK(r1.symmetry_defect < 1e-12);

    const auto r2 = cosinesys::one_shift_residuals(cos_at(1), kZero,
                                                   indexsets::LambdaFamily::explicit_set({1}), 1);
    CHECK(r2.residuals[0].second.real() == doctest::Approx(0.5).epsilon(1e-13));

    // sin 4 pi t is odd about 1/4
    const auto r3 = cosinesys::one_shift_residuals(sin_at(2), SymbolicReal::rational(1, 4), all, 20);
    for (const auto& [l, v] : r3.residuals) CHECK(std::abs(v) < 1e-12);
    CHECK(r3.symmetry_defect < 1e-12);
}

TEST_CASE("decomposition leaves already-even inputs alone") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    const auto d = cosinesys::parity_decompose_trig(cos_at(1), shifts);
    CHECK(d.p2.l2_norm() < 1e-14);
    CHECK(std::abs(d.p1.coeff(1) - Complex(0.5, 0)) < 1e-14);
    CHECK(d.reconstruction_defect < 1e-14);

    // a polynomial even about theta2 goes entirely to p2
    std::vector<std::pair<int, Complex>> entries{
        {1, 0.5 * realnum::circle_exp(kHalfSqrt2, -1)}, {-1, 0.5 * realnum::circle_exp(kHalfSqrt2, 1)}};
    const auto d2 = cosinesys::parity_decompose_trig(PeriodicFunction::from_coeff_list(entries),
                                                     shifts);
    CHECK(d2.p1.l2_norm() < 1e-13);
    CHECK(d2.p2.l2_norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("decomposition agrees with the exact 2x2 oracle coefficientwise") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    const auto p = PeriodicFunction::from_coeff_list({{1, {0.0, -0.5}},
                                                      {-1, {0.0, 0.5}},
                                                      {2, {0.5, 0.0}},
                                                      {-2, {0.5, 0.0}}});  // sin 2pi t + cos 4pi t
    const auto d = cosinesys::parity_decompose_trig(p, shifts);
    for (int k = 1; k <= 2; ++k) {
        const auto row = oracles::parity_solve_oracle(
            kZero, kHalfSqrt2, k,
            std::complex<long double>(p.coeff(k).real(), p.coeff(k).imag()),
            std::complex<long double>(p.coeff(-k).real(), p.coeff(-k).imag()));
        CHECK(std::abs(d.p1.coeff(k) - Complex(static_cast<double>(row.c1.real()),
                                               static_cast<double>(row.c1.imag()))) < 1e-14);
        CHECK(std::abs(d.p2.coeff(k) - Complex(static_cast<double>(row.c2.real()),
                                               static_cast<double>(row.c2.imag()))) < 1e-14);
    }
    CHECK(d.reconstruction_defect < 1e-13);
    CHECK(d.symmetry_defect_1 < 1e-13);
    CHECK(d.symmetry_defect_2 < 1e-13);
}

TEST_CASE("100 random zero-mean polynomials decompose with tiny defects and re-decompose stably") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_zero_mean_trig(rng, 32);
        const auto d = cosinesys::parity_decompose_trig(p, shifts);
        const double scale = p.l2_norm();
        CHECK(d.reconstruction_defect < 1e-10 * scale);
        CHECK(d.symmetry_defect_1 < 1e-10 * scale);
        CHECK(d.symmetry_defect_2 < 1e-10 * scale);
        if (trial % 10 == 0) {
            // uniqueness: decomposing p1 + p2 returns the same pair
            std::vector<std::pair<int, Complex>> sum_entries;
            for (int k = -32; k <= 32; ++k)
                sum_entries.emplace_back(k, d.p1.coeff(k) + d.p2.coeff(k));
            const auto again = cosinesys::parity_decompose_trig(
                PeriodicFunction::from_coeff_list(sum_entries), shifts);
            for (int k = -32; k <= 32; ++k) {
                CHECK(std::abs(again.p1.coeff(k) - d.p1.coeff(k)) < 1e-10);
                CHECK(std::abs(again.p2.coeff(k) - d.p2.coeff(k)) < 1e-10);
            }
        }
    }
}

TEST_CASE("nonzero mean is assigned to p1, p2 stays zero-mean") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    const auto p = PeriodicFunction::from_coeff_list({{0, {0.7, 0}}, {1, {0.2, 0}}, {-1, {0.2, 0}}});
    const auto d = cosinesys::parity_decompose_trig(p, shifts);
    CHECK(d.p1.coeff(0).real() == doctest::Approx(0.7));
    CHECK(std::abs(d.p2.coeff(0)) == 0.0);
}

TEST_CASE("resonance and rational-capped modes") {
    const auto rational = ShiftPair::make(SymbolicReal::rational(1, 3), kZero);
    try {
        cosinesys::parity_decompose_trig(cos_at(1), rational);
        FAIL("expected ResonanceError");
    } catch (const ResonanceError& e) {
        CHECK(e.resonant_k == 3);
    }
    // degree < n works in rational-capped mode for odd n
    const auto p = PeriodicFunction::from_coeff_list(
        {{1, {0.0, -0.5}}, {-1, {0.0, 0.5}}, {2, {0.5, 0.0}}, {-2, {0.5, 0.0}}});
    const auto d = cosinesys::parity_decompose_trig(p, rational,
                                                    cosinesys::DecomposeMode::RationalCapped);
    CHECK(d.reconstruction_defect < 1e-13);
    // degree at the cap is refused
    const auto wide = PeriodicFunction::from_coeff_list({{3, {1.0, 0}}, {-3, {1.0, 0}}});
    CHECK_THROWS_AS(cosinesys::parity_decompose_trig(wide, rational,
                                                     cosinesys::DecomposeMode::RationalCapped),
                    PreconditionError);
}

TEST_CASE("float shifts run behind the minimum-denominator guard with a caveat") {
    const auto shifts = ShiftPair::make(SymbolicReal::from_double(0.31), kZero);
    const auto d = cosinesys::parity_decompose_trig(cos_at(1), shifts);
    CHECK(d.float_caveat);
}

TEST_CASE("sobolev split coincides with the trig split on bandlimited inputs") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    std::mt19937_64 rng(7);
    const auto p = random_zero_mean_trig(rng, 8);
    const auto trig = cosinesys::parity_decompose_trig(p, shifts);
    const auto sob = cosinesys::sobolev_decompose(p, shifts, 2.0, 0, 2.0);
    for (int k = -8; k <= 8; ++k) {
        CHECK(std::abs(sob.f1.coeff(k) - trig.p1.coeff(k)) < 1e-14);
        CHECK(std::abs(sob.f2.coeff(k) - trig.p2.coeff(k)) < 1e-14);
    }
    // the denominators respect the 4 dist(2 k theta, Z) lower bound
    for (const auto& row : sob.diagnostics.rows)
        CHECK(row.denominator >= row.four_dist_bound - 1e-14);
}

TEST_CASE("sobolev split of a decaying symmetric series with a golden shift") {
    const auto golden_frac = SymbolicReal::surd(-1, 1, 5, 2);  // (sqrt 5 - 1)/2 in [0,1)
    const auto shifts = ShiftPair::make(golden_frac, kZero);
    std::vector<std::pair<int, Complex>> entries;
    for (int k = 1; k <= 64; ++k) {
        const double c = std::pow(1.0 + k, -4.0);
        entries.emplace_back(k, Complex(c, 0));
        entries.emplace_back(-k, Complex(c, 0));
    }
    const auto f = PeriodicFunction::from_coeff_list(entries);
    const auto sob = cosinesys::sobolev_decompose(f, shifts, 3.6, 1, 2.0);
    CHECK(sob.diagnostics.condition_l1);  // s = 3.6 > a + 1/2 + j = 3.5
    // reconstruction on the band
    for (int k = -64; k <= 64; ++k)
        CHECK(std::abs(sob.f1.coeff(k) + sob.f2.coeff(k) - f.coeff(k)) < 1e-12);
    // direct summation oracle for the weighted l1 diagnostic
    double expect = 0.0;
    for (const auto& row : sob.diagnostics.rows)
        expect += row.k * row.coeff_mag / row.denominator;
    CHECK(sob.diagnostics.l1_weighted == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("even-band inputs split into even-band parts") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    const auto f = PeriodicFunction::from_coeff_list(
        {{2, {0.3, 0.1}}, {-2, {0.3, -0.1}}, {4, {-0.2, 0}}, {-4, {-0.2, 0}}});
    const auto sob = cosinesys::sobolev_decompose(f, shifts, 2.0, 0, 2.0);
    for (int k : {-3, -1, 1, 3}) {
        CHECK(std::abs(sob.f1.coeff(k)) < 1e-15);
        CHECK(std::abs(sob.f2.coeff(k)) < 1e-15);
    }
}

TEST_CASE("rational counterexamples certify at both shifts") {
    const auto half = ShiftPair::make(SymbolicReal::rational(1, 2), kZero);
    const auto ce2 = cosinesys::rational_counterexample(half, nullptr);
    CHECK(ce2.period_n == 2);
    CHECK(ce2.max_residual_theta1 < 1e-12);
    CHECK(ce2.max_residual_theta2 < 1e-12);

    const auto third = ShiftPair::make(SymbolicReal::rational(1, 3), kZero);
    const auto ce3 = cosinesys::rational_counterexample(third, nullptr);
    CHECK(ce3.max_residual_theta1 < 1e-12);
    CHECK(ce3.witness.l2_norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const auto irr = ShiftPair::make(kZero, kHalfSqrt2);
    CHECK_THROWS_AS(cosinesys::rational_counterexample(irr, nullptr), PreconditionError);

    // a non-odd seed is refused
    const auto bad = cos_at(3);
    CHECK_THROWS_AS(cosinesys::rational_counterexample(third, &bad), PreconditionError);
    // a seed off the n-grid is refused
    const auto off = sin_at(2);
    CHECK_THROWS_AS(cosinesys::rational_counterexample(third, &off), PreconditionError);
}

TEST_CASE("pipeline reproduces exactly representable targets") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    std::vector<std::pair<int, Complex>> entries{{1, {0.5, 0}}, {-1, {0.5, 0}}};
    entries.emplace_back(1, 0.5 * realnum::circle_exp(kHalfSqrt2, -1));
    entries.emplace_back(-1, 0.5 * realnum::circle_exp(kHalfSqrt2, 1));
    const auto target = PeriodicFunction::from_coeff_list(entries);
    const auto res = cosinesys::constructive_density_approx(
        target, shifts, indexsets::LambdaFamily::arithmetic(0, 1),
        indexsets::LambdaFamily::arithmetic(0, 1), 4, 3, true);
    CHECK(res.combined_l2 < 1e-9);
    CHECK(res.combined_sup < 1e-9);
    CHECK(res.theory_convergent);
}

TEST_CASE("pipeline of the zero target is zero at every stage") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    const auto zero = PeriodicFunction::from_coeff_list({{0, {0, 0}}});
    const auto res = cosinesys::constructive_density_approx(
        zero, shifts, indexsets::LambdaFamily::arithmetic(0, 1),
        indexsets::LambdaFamily::arithmetic(0, 1), 8, 4, true);
    for (const auto& row : res.rows) {
        CHECK(row.l2 < 1e-14);
        CHECK(row.sup < 1e-14);
    }
}

TEST_CASE("pipeline on a generic target: regression level and the triangle bound") {
    const auto shifts = ShiftPair::make(kZero, kHalfSqrt2);
    auto raw = funcrep::fourier_coeffs(
        [](double t) { return Complex(std::exp(std::sin(kTwoPi * t)), 0); }, 48, 256);
    // subtract the mean
    std::vector<std::pair<int, Complex>> entries;
    for (const auto& [k, c] : raw.table()) entries.emplace_back(k, k == 0 ? Complex(0, 0) : c);
    const auto target = PeriodicFunction::from_coeff_list(entries);
    const auto res = cosinesys::constructive_density_approx(
        target, shifts, indexsets::LambdaFamily::arithmetic(0, 1),
        indexsets::LambdaFamily::arithmetic(0, 1), 32, 12, true);
    CHECK(res.combined_l2 < 0.05);
    CHECK(res.combined_l1 <= res.bound_l1 + 1e-12);
    CHECK(res.combined_l2 <= res.bound_l2 + 1e-12);
    CHECK(res.combined_sup <= res.bound_sup + 1e-12);
}

TEST_CASE("two-shift annihilation defects") {
    const auto third = ShiftPair::make(SymbolicReal::rational(1, 3), kZero);
    const auto ce = cosinesys::rational_counterexample(third, nullptr);
    const auto ad = cosinesys::two_shift_fourier_annihilation(ce.witness, third);
    CHECK(ad.defect1 < 1e-14);
    CHECK(ad.defect2 < 1e-14);
    CHECK(ce.witness.l2_norm() > 0.5);  // nonzero function annihilating both lines
    CHECK_FALSE(ad.uniqueness_certified);

    const auto irr = ShiftPair::make(kZero, kHalfSqrt2);
    const auto zero = PeriodicFunction::from_coeff_list({{0, {0, 0}}});
    CHECK(cosinesys::two_shift_fourier_annihilation(zero, irr).defect1 == 0.0);

    const auto adc = cosinesys::two_shift_fourier_annihilation(cos_at(1), irr);
    CHECK(adc.defect1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(adc.uniqueness_certified);
    CHECK(adc.min_determinant > 0.0);
}

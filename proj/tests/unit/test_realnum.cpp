#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "powerspan/errors.hpp"
#include "powerspan/realnum.hpp"

using namespace powerspan;
using realnum::Rational;
using realnum::SymbolicReal;

namespace {
const SymbolicReal kSqrt2 = SymbolicReal::surd(0, 1, 2, 1);
const SymbolicReal kHalfSqrt2 = SymbolicReal::surd(0, 1, 2, 2);
const SymbolicReal kGolden = SymbolicReal::surd(1, 1, 5, 2);
}  // namespace

TEST_CASE("continued fraction of 7/3 is the exact Euclidean expansion") {
    const auto cf = realnum::continued_fraction(SymbolicReal::rational(7, 3), 5);
    CHECK(cf.partial_quotients == std::vector<std::int64_t>{2, 3});
    CHECK(cf.complete);
    CHECK(cf.exact_input);
}

TEST_CASE("continued fraction of sqrt(2) is [1;2,2,...] with period (2)") {
    const auto cf = realnum::continued_fraction(kSqrt2, 5);
    CHECK(cf.partial_quotients == std::vector<std::int64_t>{1, 2, 2, 2, 2});
    REQUIRE(cf.period.has_value());
    CHECK(cf.period->quotients == std::vector<std::int64_t>{2});
}

TEST_CASE("continued fraction of the golden ratio is [1;1,1,...] with period (1)") {
    const auto cf = realnum::continued_fraction(kGolden, 5);
    CHECK(cf.partial_quotients == std::vector<std::int64_t>{1, 1, 1, 1, 1});
    REQUIRE(cf.period.has_value());
    CHECK(cf.period->quotients == std::vector<std::int64_t>{1});
}

TEST_CASE("depth zero is rejected") {
    CHECK_THROWS_AS(realnum::continued_fraction(kSqrt2, 0), PreconditionError);
}

TEST_CASE("perfect-square radicands normalize to rationals at construction") {
    const auto x = SymbolicReal::surd(1, 3, 9, 2);  // (1 + 3 sqrt(9))/2 = 5
    CHECK(x.is_rational());
    CHECK(x.rational_value() == Rational{5, 1});
    // square factors are pulled out: sqrt(8) = 2 sqrt(2)
    const auto y = SymbolicReal::surd(0, 1, 8, 2);
    CHECK(y.surd_d() == 2);
    CHECK(y.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("float continued fractions carry the truncation flag") {
    const auto cf = realnum::continued_fraction(SymbolicReal::from_double(std::sqrt(2.0)), 8);
    CHECK_FALSE(cf.exact_input);
    CHECK(cf.partial_quotients[0] == 1);
    CHECK(cf.partial_quotients[1] == 2);
}

TEST_CASE("convergent recurrence p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}") {
    for (const auto& theta : {kSqrt2, kGolden, SymbolicReal::surd(3, 2, 7, 5)}) {
        const auto conv = realnum::convergents(realnum::continued_fraction(theta, 12));
        for (std::size_t k = 1; k < conv.size(); ++k) {
            const long long det = conv[k].num * conv[k - 1].den - conv[k - 1].num * conv[k].den;
            CHECK(det == ((k % 2 == 1) ? 1 : -1));
        }
    }
}

TEST_CASE("convergents approximate to the classical quality bound") {
    const auto cf = realnum::continued_fraction(kSqrt2, 14);
    const auto conv = realnum::convergents(cf);
    const long double s2 = sqrtl(2.0L);
    for (std::size_t k = 0; k + 1 < conv.size(); ++k) {
        const long double err = fabsl(s2 - static_cast<long double>(conv[k].num) / conv[k].den);
        const long double bound =
            1.0L / (static_cast<long double>(conv[k].den) * conv[k + 1].den);
        CHECK(err < bound);
    }
}

TEST_CASE("rational_difference detects exact rational differences") {
    const auto d1 = realnum::rational_difference(SymbolicReal::rational(1, 2),
                                                 SymbolicReal::rational(0, 1));
    REQUIRE(d1.value.has_value());
    CHECK(*d1.value == Rational{1, 2});
    CHECK(d1.exact_inputs);

    const auto d2 = realnum::rational_difference(kHalfSqrt2, SymbolicReal::rational(0, 1));
    CHECK_FALSE(d2.value.has_value());

    // surd cancellation: (1/3 + sqrt 2) - sqrt 2 = 1/3
    const auto d3 =
        realnum::rational_difference(SymbolicReal::surd(1, 3, 2, 3), kSqrt2);
    REQUIRE(d3.value.has_value());
    CHECK(*d3.value == Rational{1, 3});

    // independent surds
    const auto d4 = realnum::rational_difference(kSqrt2, SymbolicReal::surd(0, 1, 3, 1));
    CHECK_FALSE(d4.value.has_value());
}

TEST_CASE("rational_difference is antisymmetric up to sign") {
    const auto a = SymbolicReal::rational(3, 7);
    const auto b = SymbolicReal::rational(1, 3);
    const auto ab = realnum::rational_difference(a, b);
    const auto ba = realnum::rational_difference(b, a);
    REQUIRE(ab.value.has_value());
    REQUIRE(ba.value.has_value());
    CHECK(ab.value->num == -ba.value->num);
    CHECK(ab.value->den == ba.value->den);
}

TEST_CASE("float differences are flagged inexact and computed from stored dyadic values") {
    const auto d = realnum::rational_difference(SymbolicReal::from_double(0.75),
                                                SymbolicReal::from_double(0.25));
    REQUIRE(d.value.has_value());
    CHECK(*d.value == Rational{1, 2});
    CHECK_FALSE(d.exact_inputs);
}

TEST_CASE("witness scans match the brute-force oracle") {
    // derived examples recomputed with the independent all-m scan
    const auto brute1 = oracles::brute_witnesses(kSqrt2, 2.0, 1.0, 1000);
    const auto scan1 = realnum::approximability_witnesses(kSqrt2, 2.0, 1.0, 1000);
    CHECK(scan1.exact_arithmetic);
    CHECK(scan1.pairs == brute1);

    const auto scan2 = realnum::approximability_witnesses(kSqrt2, 1.0, 1.0, 30);
    CHECK(scan2.pairs == oracles::brute_witnesses(kSqrt2, 1.0, 1.0, 30));
    // the spec's named witness
    CHECK(std::find(scan2.pairs.begin(), scan2.pairs.end(), realnum::WitnessPair{7, 5}) !=
          scan2.pairs.end());

    const auto scan3 = realnum::approximability_witnesses(kGolden, 3.0, 1.0, 1000);
    CHECK(scan3.pairs == oracles::brute_witnesses(kGolden, 3.0, 1.0, 1000));
    // badly approximable: nothing beyond the trivial n = 1 window
    for (const auto& p : scan3.pairs) CHECK(p.n == 1);
}

TEST_CASE("every convergent with k >= 1 appears among the Dirichlet-quality witnesses") {
    for (const auto& theta : {kSqrt2, kGolden, kHalfSqrt2}) {
        const auto conv = realnum::convergents(realnum::continued_fraction(theta, 10));
        const auto scan = realnum::approximability_witnesses(theta, 1.0, 1.0, 200);
        for (std::size_t k = 1; k < conv.size(); ++k) {
            if (conv[k].den > 200) break;
            // convergents past the zeroth use the nearest integer
            CHECK(theta.scaled(conv[k].den).nearest_integer() == conv[k].num);
            CHECK(std::find(scan.pairs.begin(), scan.pairs.end(),
                            realnum::WitnessPair{conv[k].num, conv[k].den}) != scan.pairs.end());
        }
    }
}

TEST_CASE("rational theta is rejected by the witness scan") {
    CHECK_THROWS_AS(realnum::approximability_witnesses(SymbolicReal::rational(2, 3), 1.0, 1.0, 10),
                    PreconditionError);
}

TEST_CASE("min_half_integer_distance matches the exact closed forms") {
    const auto r = realnum::min_half_integer_distance(kHalfSqrt2, 12);
    CHECK(r.k_min == 12);
    // dist(12 sqrt 2, Z) = 17 - 12 sqrt 2
    const double exact = static_cast<double>(17.0L - 12.0L * sqrtl(2.0L));
    CHECK(std::abs(r.value - exact) < 1e-15);

    const auto r2 = realnum::min_half_integer_distance(SymbolicReal::rational(1, 4), 2);
    CHECK(r2.k_min == 2);
    CHECK(r2.value == 0.0);

    const auto r3 = realnum::min_half_integer_distance(kHalfSqrt2, 1);
    CHECK(r3.value == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("min_half_integer_distance is nonincreasing in K") {
    double prev = 1e300;
    for (int K = 1; K <= 40; ++K) {
        const auto r = realnum::min_half_integer_distance(kHalfSqrt2, K);
        CHECK(r.value <= prev + 1e-18);
        prev = r.value;
    }
}

TEST_CASE("symbolic text forms parse exactly") {
    CHECK(SymbolicReal::parse("7/3").rational_value() == Rational{7, 3});
    CHECK(SymbolicReal::parse("-2").rational_value() == Rational{-2, 1});
    CHECK(SymbolicReal::parse("sqrt(2)") == kSqrt2);
    CHECK(SymbolicReal::parse("sqrt(2)/2") == kHalfSqrt2);
    CHECK(SymbolicReal::parse("(1+1*sqrt(5))/2") == kGolden);
    CHECK(SymbolicReal::parse("(1-2*sqrt(3))/5") == SymbolicReal::surd(1, -2, 3, 5));
    CHECK(SymbolicReal::parse("0.25").kind() == SymbolicReal::Kind::FloatLiteral);
    CHECK(SymbolicReal::parse("0.25").value() == 0.25);
    CHECK_THROWS_AS(SymbolicReal::parse("sqrt(two)"), PreconditionError);
    CHECK_THROWS_AS(SymbolicReal::parse(""), PreconditionError);
    CHECK_THROWS_AS(SymbolicReal::parse("1/0"), PreconditionError);
}

TEST_CASE("str() round-trips through parse") {
    for (const auto& x : {SymbolicReal::rational(-7, 3), kSqrt2, kGolden, kHalfSqrt2,
                          SymbolicReal::surd(1, -2, 3, 5), SymbolicReal::from_double(0.1)}) {
        CHECK(SymbolicReal::parse(x.str()) == x);
    }
}

TEST_CASE("circle_exp reduces arguments exactly") {
    const auto i_val = realnum::circle_exp(SymbolicReal::rational(1, 4), 1);
    CHECK(std::abs(i_val - std::complex<double>(0, 1)) < 1e-15);
    // large multiple of an exact surd: compare against long double reduction
    const auto big = realnum::circle_exp(kHalfSqrt2, 12345);
    const long double frac = kHalfSqrt2.scaled(12345).fractional_value();
    const long double ang = 6.283185307179586476925286766559L * frac;
    CHECK(std::abs(big - std::complex<double>(static_cast<double>(cosl(ang)),
                                              static_cast<double>(sinl(ang)))) < 1e-14);
}

TEST_CASE("exact symbolic subtraction") {
    // golden ratio minus one half is exactly sqrt(5)/2
    const auto d = kGolden.minus(SymbolicReal::rational(1, 2));
    REQUIRE(d.has_value());
    CHECK(*d == SymbolicReal::surd(0, 1, 5, 2));
    CHECK_FALSE(kSqrt2.minus(SymbolicReal::surd(0, 1, 3, 1)).has_value());
}

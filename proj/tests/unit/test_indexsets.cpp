#include <doctest.h>

#include <random>

#include "powerspan/errors.hpp"
#include "powerspan/indexsets.hpp"

using namespace powerspan;
using indexsets::Divergence;
using indexsets::LambdaFamily;
using indexsets::MSReason;

namespace {

// seeded family zoo for the randomized properties
LambdaFamily random_family(std::mt19937_64& rng, int depth = 0) {
    std::uniform_int_distribution<int> pick(0, depth < 2 ? 4 : 3);
    switch (pick(rng)) {
        case 0: {
            std::uniform_int_distribution<std::int64_t> v(0, 40);
            std::vector<std::int64_t> vals;
            for (int i = 0; i < 6; ++i) vals.push_back(v(rng));
            return LambdaFamily::explicit_set(std::move(vals));
        }
        case 1: {
            std::uniform_int_distribution<std::int64_t> f(0, 5), s(1, 4);
            return LambdaFamily::arithmetic(f(rng), s(rng));
        }
        case 2: {
            std::uniform_int_distribution<std::int64_t> f(1, 5), r(2, 4);
            return LambdaFamily::geometric(f(rng), r(rng));
        }
        case 3: {
            std::uniform_int_distribution<std::int64_t> e(2, 4);
            return LambdaFamily::power_of_index(e(rng));
        }
        default: {
            std::vector<LambdaFamily> members;
            std::uniform_int_distribution<int> n(2, 3);
            const int count = n(rng);
            for (int i = 0; i < count; ++i) members.push_back(random_family(rng, depth + 1));
            return LambdaFamily::union_of(std::move(members));
        }
    }
}

}  // namespace

TEST_CASE("split_even_odd on the worked examples") {
    const auto s = indexsets::split_even_odd(LambdaFamily::explicit_set({0, 1, 2, 3, 4}));
    CHECK(s.even.first_n(10) == std::vector<std::int64_t>{2, 4});
    CHECK(s.odd.first_n(10) == std::vector<std::int64_t>{0, 1, 3});
    CHECK(s.zero_adjoined);

    const auto s2 = indexsets::split_even_odd(LambdaFamily::arithmetic(0, 2));
    CHECK(s2.even.first_n(4) == std::vector<std::int64_t>{2, 4, 6, 8});
    CHECK(s2.odd.first_n(4) == std::vector<std::int64_t>{0});

    const auto s3 = indexsets::split_even_odd(LambdaFamily::geometric(1, 2));
    CHECK(s3.even.first_n(3) == std::vector<std::int64_t>{2, 4, 8});
    CHECK(s3.odd.first_n(3) == std::vector<std::int64_t>{1});
    CHECK_FALSE(s3.zero_adjoined);  // 0 is not a member
}

TEST_CASE("the always-adjoin policy is available and reported") {
    const auto s = indexsets::split_even_odd(LambdaFamily::arithmetic(2, 2),
                                             indexsets::ZeroPolicy::AlwaysAdjoin);
    CHECK(s.zero_adjoined);
    CHECK(s.odd.contains(0));
    CHECK(s.policy_used == indexsets::ZeroPolicy::AlwaysAdjoin);
}

TEST_CASE("symbolic divergence verdicts") {
    CHECK(indexsets::reciprocal_sum_diverges(LambdaFamily::arithmetic(1, 1)) ==
          Divergence::Diverges);
    CHECK(indexsets::reciprocal_sum_diverges(LambdaFamily::power_of_index(2)) ==
          Divergence::Converges);
    CHECK(indexsets::reciprocal_sum_diverges(LambdaFamily::geometric(1, 2)) ==
          Divergence::Converges);
    CHECK(indexsets::reciprocal_sum_diverges(LambdaFamily::union_of(
              {LambdaFamily::geometric(1, 2), LambdaFamily::arithmetic(5, 7)})) ==
          Divergence::Diverges);
    CHECK(indexsets::reciprocal_sum_diverges(LambdaFamily::explicit_set({1, 2, 3})) ==
          Divergence::Converges);
}

TEST_CASE("classification on the worked examples") {
    const auto v1 = indexsets::classify_ms(LambdaFamily::arithmetic(0, 1), 0, 1);
    CHECK(v1.is_ms);
    CHECK(v1.reason == MSReason::HarmonicDivergent);

    const auto zeroevens = LambdaFamily::union_of(
        {LambdaFamily::explicit_set({0}), LambdaFamily::arithmetic(2, 2)});
    const auto v2 = indexsets::classify_ms(zeroevens, -1, 1);
    CHECK_FALSE(v2.is_ms);
    CHECK(v2.reason == MSReason::OddPartFails);

    const auto v3 = indexsets::classify_ms(LambdaFamily::power_of_index(2), 1, 2);
    CHECK_FALSE(v3.is_ms);
    CHECK(v3.reason == MSReason::ReciprocalSumConvergent);
    CHECK(v3.interval_case == indexsets::IntervalCase::AwayFromZero);
}

TEST_CASE("touches-zero verdicts agree on [0,1] and [-1,0]") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 30; ++i) {
        const auto fam = random_family(rng);
        const auto a = indexsets::classify_ms(fam, 0, 1);
        const auto b = indexsets::classify_ms(fam, -1, 0);
        CHECK(a.is_ms == b.is_ms);
        CHECK(a.reason == b.reason);
    }
}

TEST_CASE("straddles-zero equals the conjunction of the parity conditions (50 random families)") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        const auto fam = random_family(rng);
        const auto verdict = indexsets::classify_ms(fam, -1, 1);
        const auto split = indexsets::split_even_odd(fam);
        const bool expected = fam.contains_zero() &&
                              indexsets::reciprocal_sum_diverges(split.even) ==
                                  Divergence::Diverges &&
                              indexsets::reciprocal_sum_diverges(split.odd) == Divergence::Diverges;
        CHECK(verdict.is_ms == expected);
    }
}

TEST_CASE("split followed by union reconstructs membership") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 30; ++i) {
        const auto fam = random_family(rng);
        const auto split = indexsets::split_even_odd(fam);
        const auto merged = LambdaFamily::union_of({split.even, split.odd});
        for (std::int64_t lambda = 0; lambda <= 200; ++lambda)
            CHECK(merged.contains(lambda) == fam.contains(lambda));
    }
}

TEST_CASE("enumeration and membership agree") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto fam = random_family(rng);
        for (std::int64_t v : fam.members_up_to(300)) CHECK(fam.contains(v));
        const auto first = fam.first_n(10);
        for (std::size_t j = 1; j < first.size(); ++j) CHECK(first[j - 1] < first[j]);
        for (std::int64_t v : first) CHECK(fam.contains(v));
    }
}

TEST_CASE("config syntax parses and round-trips") {
    const auto u = LambdaFamily::parse("union:[explicit:[0];arith:2,2]");
    CHECK(u.contains_zero());
    CHECK(u.contains(4));
    CHECK_FALSE(u.contains(3));
    CHECK(LambdaFamily::parse(u.str()).contains(6));
    CHECK(LambdaFamily::parse("powers:2").first_n(4) == std::vector<std::int64_t>{1, 4, 9, 16});
    CHECK(LambdaFamily::parse("geom:1,2").contains(64));
    CHECK_THROWS_AS(LambdaFamily::parse("frogs:1,2"), PreconditionError);
    CHECK_THROWS_AS(LambdaFamily::parse("arith:-1,1"), PreconditionError);
}

TEST_CASE("interval endpoint snapping") {
    // a computed range endpoint a hair above zero still classifies as touching
    const auto v = indexsets::classify_ms(LambdaFamily::arithmetic(0, 1), 1e-16, 1.0);
    CHECK(v.interval_case == indexsets::IntervalCase::TouchesZero);
    CHECK(v.is_ms);
}

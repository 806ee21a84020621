#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace powerspan::indexsets {

enum class Divergence { Diverges, Converges };

/**
 * Symbolic description of an index set Lambda of nonnegative integers.
 * Membership, bounded enumeration, and the divergence of sum 1/lambda are
 * all decidable per variant; divergence in particular is decided
 * symbolically, never by truncated summation.
 *
 * Config syntax: `explicit:[0,1,2]`, `arith:first,step`, `geom:first,ratio`,
 * `powers:e`, `union:[fam;fam;...]`.
 */
class LambdaFamily {
public:
    enum class Kind { Explicit, Arithmetic, Geometric, PowerOfIndex, Union, ParityFiltered };
    enum class Parity { Even, Odd };

    LambdaFamily() = default;  // the empty explicit set

    static LambdaFamily explicit_set(std::vector<std::int64_t> values);
    static LambdaFamily arithmetic(std::int64_t first, std::int64_t step);
    static LambdaFamily geometric(std::int64_t first, std::int64_t ratio);
    static LambdaFamily power_of_index(std::int64_t exponent);
    static LambdaFamily union_of(std::vector<LambdaFamily> members);
    static LambdaFamily parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool contains(std::int64_t lambda) const;
    bool contains_zero() const { return contains(0); }
    bool is_finite() const;

    /// First n members in increasing order (fewer if the family is finite).
    std::vector<std::int64_t> first_n(std::size_t n) const;
    /// All members <= cap, increasing.
    std::vector<std::int64_t> members_up_to(std::int64_t cap) const;

    std::string str() const;

    friend Divergence reciprocal_sum_diverges(const LambdaFamily& family);
    friend LambdaFamily parity_filter(const LambdaFamily& family, LambdaFamily::Parity parity);

private:
    Kind kind_ = Kind::Explicit;
    std::vector<std::int64_t> values_;           // Explicit
    std::int64_t first_ = 0, second_ = 1;        // Arithmetic/Geometric (first, step/ratio)
    std::int64_t exponent_ = 2;                  // PowerOfIndex
    std::vector<LambdaFamily> children_;         // Union / ParityFiltered (one child)
    Parity parity_ = Parity::Even;               // ParityFiltered
    Divergence filtered_divergence_ = Divergence::Converges;
};

/// Symbolic verdict on sum over lambda in Lambda \ {0} of 1/lambda.
Divergence reciprocal_sum_diverges(const LambdaFamily& family);

/// Members of the given parity, zero excluded for the even filter.
LambdaFamily parity_filter(const LambdaFamily& family, LambdaFamily::Parity parity);

/// Whether 0 is adjoined to the odd part unconditionally or only when it is
/// a member of the original family (the default; the unconditional variant
/// matches the literal even/odd-part definition, which conflicts with
/// Lambda_o being a subset of Lambda when 0 is absent).
enum class ZeroPolicy { AdjoinIfMember, AlwaysAdjoin };

struct EvenOddSplit {
    LambdaFamily even;  // nonzero even members
    LambdaFamily odd;   // odd members, plus 0 per policy
    ZeroPolicy policy_used = ZeroPolicy::AdjoinIfMember;
    bool zero_adjoined = false;
};

EvenOddSplit split_even_odd(const LambdaFamily& family,
                            ZeroPolicy policy = ZeroPolicy::AdjoinIfMember);

enum class IntervalCase { TouchesZero, AwayFromZero, StraddlesZero };

enum class MSReason {
    HarmonicDivergent,
    ReciprocalSumConvergent,
    MissingZero,
    EvenPartFails,
    OddPartFails,
    BothPartsOk,
};

struct MSVerdict {
    bool is_ms = false;
    MSReason reason = MSReason::ReciprocalSumConvergent;
    IntervalCase interval_case = IntervalCase::TouchesZero;
};

/**
 * The three-case Muntz-Szasz membership test for the interval [a, b]:
 *  - a = 0 or b = 0: needs 0 in Lambda and a divergent reciprocal sum;
 *  - a > 0 or b < 0: needs only the divergent reciprocal sum;
 *  - a < 0 < b: needs 0 in Lambda and divergent sums over both the even and
 *    the odd part.
 * Endpoints within zero_snap_tol of 0 are treated as exactly 0, so ranges
 * computed in floating point classify robustly.
 */
MSVerdict classify_ms(const LambdaFamily& family, double a, double b,
                      double zero_snap_tol = 1e-10);

std::string to_string(Divergence d);
std::string to_string(IntervalCase c);
std::string to_string(MSReason r);

}  // namespace powerspan::indexsets

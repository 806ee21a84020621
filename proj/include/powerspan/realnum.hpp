#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace powerspan::realnum {

/// Rational number in lowest terms, denominator > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Rational&, const Rational&) = default;
};

/**
 * Exact representation of the shifts and angles the library reasons about:
 * a rational p/q, a quadratic surd (p + q*sqrt(d))/r, or a plain binary64
 * literal. The first two kinds support exact Diophantine queries (floor,
 * fractional part, comparison against rationals); float literals are
 * second-class and every verdict derived from them carries an inexact flag,
 * since irrationality is undecidable from a float.
 *
 * Normalization invariants enforced by the factories:
 *  - rationals are in lowest terms with positive denominator;
 *  - surds have q != 0, r > 0, and d squarefree and not 1 (a perfect-square
 *    d collapses to a rational at construction);
 *  - value() agrees with the exact value to within 1 ulp of the conversion
 *    (computed through long double).
 */
class SymbolicReal {
public:
    enum class Kind { Rational, QuadraticSurd, FloatLiteral };

    SymbolicReal() = default;  // zero

    static SymbolicReal rational(std::int64_t num, std::int64_t den = 1);
    // (p + q*sqrt(d)) / r
    static SymbolicReal surd(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r = 1);
    static SymbolicReal from_double(double v);

    // Text forms: `p/q`, `sqrt(d)`, `sqrt(d)/r`, `(p+q*sqrt(d))/r`, integer
    // and decimal literals. The first four parse exactly.
    static SymbolicReal parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool exact() const { return kind_ != Kind::FloatLiteral; }
    bool is_rational() const { return kind_ == Kind::Rational; }

    double value() const;
    Rational rational_value() const;  // requires kind() == Rational

    std::int64_t surd_p() const { return p_; }
    std::int64_t surd_q() const { return q_; }
    std::int64_t surd_d() const { return d_; }
    std::int64_t surd_r() const { return r_; }

    /// k * x, exactly (throws std::overflow_error if it leaves int64 range).
    SymbolicReal scaled(std::int64_t k) const;
    /// x + m/n, exactly.
    SymbolicReal plus_rational(const Rational& t) const;
    /// x - y when the difference stays rational or quadratic over one surd;
    /// nullopt for independent surds (floats subtract as floats).
    std::optional<SymbolicReal> minus(const SymbolicReal& y) const;

    /// Exact floor for exact kinds; std::floor for float literals.
    std::int64_t floor() const;
    /// x - floor(x) as a double in [0, 1), computed from the exact floor so
    /// no precision is lost to argument reduction.
    double fractional_value() const;
    /// dist(x, Z).
    double integer_distance() const;
    /// round(x) = floor(x + 1/2), exact for exact kinds.
    std::int64_t nearest_integer() const;

    std::string str() const;

    friend bool operator==(const SymbolicReal&, const SymbolicReal&) = default;

private:
    Kind kind_ = Kind::Rational;
    // Rational: p_/r_ (q_=0, d_=0). Surd: (p_+q_*sqrt(d_))/r_. Float: float_.
    std::int64_t p_ = 0, q_ = 0, d_ = 0, r_ = 1;
    double float_ = 0.0;
};

/// e^{2*pi*i*k*theta}, with the angle reduced through the exact fractional
/// part of k*theta (for exact thetas there is no argument-reduction error).
std::complex<double> circle_exp(const SymbolicReal& theta, std::int64_t k);

/**
 * Continued fraction expansion [a0; a1, a2, ...].
 *
 * Rational inputs terminate at the exact Euclidean expansion; quadratic
 * surds use the exact periodic algorithm (integer state, never float
 * iteration) and record the detected period; float literals iterate the
 * Gauss map in double and set exact_input = false.
 */
struct ContinuedFraction {
    struct Period {
        std::size_t start = 0;                   // index into partial_quotients
        std::vector<std::int64_t> quotients;     // one full period
    };

    std::vector<std::int64_t> partial_quotients;
    std::optional<Period> period;  // present for quadratic surds
    bool exact_input = true;       // false: float input, expansion truncated
    bool complete = false;         // rational expansion ended before depth
};

ContinuedFraction continued_fraction(const SymbolicReal& x, std::size_t depth);

/// Convergents p_k/q_k of an expansion (throws std::overflow_error if a
/// convergent leaves int64 range).
std::vector<Rational> convergents(const ContinuedFraction& cf);

struct RationalDifference {
    std::optional<Rational> value;  // theta1 - theta2 = m/n when rational
    bool exact_inputs = true;       // false when a float literal was involved
};

/// Decides whether theta1 - theta2 is rational. Exact for rational/surd
/// inputs; float literals are treated as their exact dyadic values and the
/// result is flagged inexact.
RationalDifference rational_difference(const SymbolicReal& theta1, const SymbolicReal& theta2);

struct WitnessPair {
    std::int64_t m = 0;
    std::int64_t n = 1;

    friend bool operator==(const WitnessPair&, const WitnessPair&) = default;
};

struct WitnessScan {
    std::vector<WitnessPair> pairs;  // sorted by n
    bool exact_arithmetic = true;    // comparisons done in exact arithmetic
};

/**
 * All pairs (m, n) with 1 <= n <= n_max, m = round(n*theta), and
 * |m - n*theta| < C * n^{-a}. For exact theta with integral a and exactly
 * representable C the comparison is done in exact big-integer arithmetic;
 * otherwise |m - n*theta| is still formed from its exact integer parts and
 * only the final comparison is floating point (flagged in the result).
 *
 * Throws PreconditionError when theta is exactly rational.
 */
WitnessScan approximability_witnesses(const SymbolicReal& theta, double a, double C,
                                      std::int64_t n_max);

struct HalfIntegerDistance {
    std::int64_t k_min = 1;
    double value = 0.0;
};

/// min over 1 <= k <= K of dist(2*k*theta, Z) and the smallest k attaining
/// it (the distance is even in k, so negative k add nothing).
HalfIntegerDistance min_half_integer_distance(const SymbolicReal& theta, std::int64_t K);

}  // namespace powerspan::realnum

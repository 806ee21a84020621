#include "powerspan/realnum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "powerspan/errors.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::realnum {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

std::int64_t checked_cast(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error(std::string("int64 overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t checked_i128(__int128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error(std::string("int64 overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

// sign of B*sqrt(d) - t for squarefree d >= 2 (never zero unless B == 0 and
// t == 0; equality against an irrational cannot occur).
int cmp_surd_term(const BigInt& B, std::int64_t d, const BigRat& t) {
    if (B == 0) {
        if (t > 0) return -1;
        if (t < 0) return 1;
        return 0;
    }
    if (B < 0) return -cmp_surd_term(-B, d, -t);
    if (t <= 0) return 1;
    // B*td*sqrt(d) vs tn, both positive: compare squares.
    const BigInt tn = numerator(t);
    const BigInt td = denominator(t);
    const BigInt lhs = B * B * td * td * d;
    const BigInt rhs = tn * tn;
    if (lhs > rhs) return 1;
    if (lhs < rhs) return -1;
    return 0;  // unreachable for squarefree d >= 2, B != 0
}

// floor of (P + sqrt(D)) / Q with D > 0 nonsquare, Q != 0; exact.
BigInt floor_quadratic(const BigInt& P, const BigInt& D, const BigInt& Q) {
    const BigInt S = mp::sqrt(D);  // floor sqrt
    // Estimate, then fix up with exact comparisons.
    BigInt est = Q > 0 ? BigInt((P + S) / Q) : BigInt((P + S + 1) / Q);
    // floor division semantics for the estimate
    if (Q > 0 && (P + S) < 0 && (P + S) % Q != 0) --est;
    if (Q < 0 && (P + S + 1) > 0 && (P + S + 1) % Q != 0) --est;

    auto x_below = [&](const BigInt& a) {
        // sign of (P + sqrt(D))/Q - a
        const BigInt T = a * Q - P;  // compare sqrt(D) vs T
        const bool sqrt_gt = (T < 0) || (D > T * T);
        const int num_sign = sqrt_gt ? 1 : -1;  // sign of P + sqrt(D) - a*Q
        return (Q > 0 ? num_sign : -num_sign) < 0;
    };
    while (x_below(est)) --est;
    while (!x_below(est + 1)) ++est;
    return est;
}

struct ParsedInt {
    std::int64_t value = 0;
    bool ok = false;
};

ParsedInt parse_int(std::string_view& s) {
    ParsedInt out;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = i;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits == i) return out;
    auto res = std::from_chars(s.data(), s.data() + digits, out.value);
    if (res.ec != std::errc() || res.ptr != s.data() + digits) return out;
    out.ok = true;
    s.remove_prefix(digits);
    return out;
}

bool consume(std::string_view& s, std::string_view token) {
    if (s.substr(0, token.size()) == token) {
        s.remove_prefix(token.size());
        return true;
    }
    return false;
}

std::string strip_spaces(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

}  // namespace

SymbolicReal SymbolicReal::rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    SymbolicReal x;
    x.kind_ = Kind::Rational;
    x.p_ = g ? num / g : 0;
    x.r_ = g ? den / g : 1;
    return x;
}

SymbolicReal SymbolicReal::surd(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r) {
    if (r == 0) throw PreconditionError("surd with zero denominator");
    if (d < 0) throw PreconditionError("surd with negative radicand");
    if (q == 0 || d == 0) return rational(p, r);
    if (r < 0) {
        p = -p;
        q = -q;
        r = -r;
    }
    // Pull square factors out of d so distinct d's are linearly independent
    // over Q and perfect squares collapse to rationals.
    std::int64_t s = 1;
    {
        std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
        while (root * root > d) --root;
        while ((root + 1) * (root + 1) <= d) ++root;
        if (root * root == d) return rational(checked_i128(__int128(p) + __int128(q) * root, "surd"), r);
        const std::int64_t cap = std::min<std::int64_t>(root, 1000000);
        for (std::int64_t f = 2; f <= cap; ++f) {
            while (d % (f * f) == 0) {
                d /= f * f;
                s = checked_i128(__int128(s) * f, "surd");
            }
        }
    }
    q = checked_i128(__int128(q) * s, "surd");
    const std::int64_t g =
        std::gcd(std::gcd(p < 0 ? -p : p, q < 0 ? -q : q), r);
    SymbolicReal x;
    x.kind_ = Kind::QuadraticSurd;
    x.p_ = p / g;
    x.q_ = q / g;
    x.d_ = d;
    x.r_ = r / g;
    return x;
}

SymbolicReal SymbolicReal::from_double(double v) {
    SymbolicReal x;
    x.kind_ = Kind::FloatLiteral;
    x.float_ = v;
    return x;
}

double SymbolicReal::value() const {
    switch (kind_) {
        case Kind::Rational:
            return static_cast<double>(static_cast<long double>(p_) / r_);
        case Kind::QuadraticSurd:
            return static_cast<double>(
                (static_cast<long double>(p_) + static_cast<long double>(q_) * sqrtl(static_cast<long double>(d_))) /
                static_cast<long double>(r_));
        case Kind::FloatLiteral:
            return float_;
    }
    return 0.0;
}

Rational SymbolicReal::rational_value() const {
    if (kind_ != Kind::Rational) throw PreconditionError("not an exact rational");
    return Rational{p_, r_};
}

SymbolicReal SymbolicReal::scaled(std::int64_t k) const {
    switch (kind_) {
        case Kind::Rational:
            return rational(checked_i128(__int128(p_) * k, "scaled"), r_);
        case Kind::QuadraticSurd:
            return surd(checked_i128(__int128(p_) * k, "scaled"),
                        checked_i128(__int128(q_) * k, "scaled"), d_, r_);
        case Kind::FloatLiteral:
            return from_double(float_ * static_cast<double>(k));
    }
    return {};
}

SymbolicReal SymbolicReal::plus_rational(const Rational& t) const {
    switch (kind_) {
        case Kind::Rational:
            return rational(checked_i128(__int128(p_) * t.den + __int128(t.num) * r_, "plus"),
                            checked_i128(__int128(r_) * t.den, "plus"));
        case Kind::QuadraticSurd:
            return surd(checked_i128(__int128(p_) * t.den + __int128(t.num) * r_, "plus"),
                        checked_i128(__int128(q_) * t.den, "plus"), d_,
                        checked_i128(__int128(r_) * t.den, "plus"));
        case Kind::FloatLiteral:
            return from_double(float_ + static_cast<double>(t.num) / static_cast<double>(t.den));
    }
    return {};
}

std::optional<SymbolicReal> SymbolicReal::minus(const SymbolicReal& y) const {
    if (kind_ == Kind::FloatLiteral || y.kind_ == Kind::FloatLiteral) {
        if (kind_ == Kind::QuadraticSurd || y.kind_ == Kind::QuadraticSurd) return std::nullopt;
        return from_double(value() - y.value());
    }
    const bool s1 = kind_ == Kind::QuadraticSurd;
    const bool s2 = y.kind_ == Kind::QuadraticSurd;
    if (s1 && s2 && d_ != y.d_) return std::nullopt;  // independent surds
    const std::int64_t d = s1 ? d_ : (s2 ? y.d_ : 0);
    // (p1 + q1 sqrt(d))/r1 - (p2 + q2 sqrt(d))/r2 over a common denominator
    const __int128 p = __int128(p_) * y.r_ - __int128(y.p_) * r_;
    const __int128 q = __int128(s1 ? q_ : 0) * y.r_ - __int128(s2 ? y.q_ : 0) * r_;
    const __int128 r = __int128(r_) * y.r_;
    if (q == 0 || d == 0)
        return rational(checked_i128(p, "minus"), checked_i128(r, "minus"));
    return surd(checked_i128(p, "minus"), checked_i128(q, "minus"), d, checked_i128(r, "minus"));
}

std::int64_t SymbolicReal::floor() const {
    switch (kind_) {
        case Kind::Rational: {
            std::int64_t q = p_ / r_;
            if (p_ % r_ != 0 && p_ < 0) --q;
            return q;
        }
        case Kind::QuadraticSurd: {
            // Canonical (P + sqrt(D))/Q needs a positive surd coefficient:
            // for q < 0 rewrite (p + q*sqrt(d))/r = (-p + |q|*sqrt(d))/(-r).
            const BigInt D = BigInt(q_) * q_ * d_;
            if (q_ > 0) return checked_cast(floor_quadratic(BigInt(p_), D, BigInt(r_)), "floor");
            return checked_cast(floor_quadratic(BigInt(-p_), D, BigInt(-r_)), "floor");
        }
        case Kind::FloatLiteral:
            return static_cast<std::int64_t>(std::floor(float_));
    }
    return 0;
}

double SymbolicReal::fractional_value() const {
    if (kind_ == Kind::FloatLiteral) {
        double f = float_ - std::floor(float_);
        if (f >= 1.0) f = 0.0;
        return f;
    }
    const std::int64_t fl = floor();
    switch (kind_) {
        case Kind::Rational:
            return static_cast<double>(
                (static_cast<long double>(p_) - static_cast<long double>(fl) * r_) / r_);
        case Kind::QuadraticSurd: {
            const long double num = static_cast<long double>(p_) -
                                    static_cast<long double>(fl) * r_ +
                                    static_cast<long double>(q_) * sqrtl(static_cast<long double>(d_));
            double f = static_cast<double>(num / r_);
            if (f < 0.0) f = 0.0;
            if (f >= 1.0) f = std::nextafter(1.0, 0.0);
            return f;
        }
        default:
            return 0.0;
    }
}

double SymbolicReal::integer_distance() const {
    const double f = fractional_value();
    return std::min(f, 1.0 - f);
}

std::int64_t SymbolicReal::nearest_integer() const {
    return plus_rational(Rational{1, 2}).floor();
}

std::string SymbolicReal::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Rational:
            if (r_ == 1)
                os << p_;
            else
                os << p_ << "/" << r_;
            break;
        case Kind::QuadraticSurd:
            os << "(" << p_ << (q_ >= 0 ? "+" : "-") << (q_ >= 0 ? q_ : -q_) << "*sqrt(" << d_
               << "))/" << r_;
            break;
        case Kind::FloatLiteral: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", float_);
            os << buf;
            break;
        }
    }
    return os.str();
}

SymbolicReal SymbolicReal::parse(std::string_view text) {
    const std::string compact = strip_spaces(text);
    std::string_view s{compact};
    if (s.empty()) throw PreconditionError("empty symbolic real");

    auto fail = [&]() -> SymbolicReal {
        throw PreconditionError("unparseable symbolic real: '" + std::string(text) + "'");
    };

    if (compact.find("sqrt") != std::string::npos) {
        // Forms: sqrt(d), q*sqrt(d), sqrt(d)/r, q*sqrt(d)/r, -sqrt(d),
        //        (p+q*sqrt(d))/r, (p-q*sqrt(d))/r
        if (s.front() == '(') {
            s.remove_prefix(1);
            auto p = parse_int(s);
            if (!p.ok) return fail();
            std::int64_t sign = 1;
            if (consume(s, "+"))
                sign = 1;
            else if (consume(s, "-"))
                sign = -1;
            else
                return fail();
            std::int64_t q = 1;
            if (!consume(s, "sqrt(")) {
                auto qv = parse_int(s);
                if (!qv.ok || !consume(s, "*sqrt(")) return fail();
                q = qv.value;
            }
            auto d = parse_int(s);
            if (!d.ok || !consume(s, "))")) return fail();
            std::int64_t r = 1;
            if (!s.empty()) {
                if (!consume(s, "/")) return fail();
                auto rv = parse_int(s);
                if (!rv.ok || !s.empty()) return fail();
                r = rv.value;
            }
            return surd(p.value, sign * q, d.value, r);
        }
        std::int64_t q = 1;
        if (s.front() == '-' && s.size() > 1 && s[1] == 's') {
            q = -1;
            s.remove_prefix(1);
        } else if (s.front() != 's') {
            auto qv = parse_int(s);
            if (!qv.ok || !consume(s, "*")) return fail();
            q = qv.value;
        }
        if (!consume(s, "sqrt(")) return fail();
        auto d = parse_int(s);
        if (!d.ok || !consume(s, ")")) return fail();
        std::int64_t r = 1;
        if (!s.empty()) {
            if (!consume(s, "/")) return fail();
            auto rv = parse_int(s);
            if (!rv.ok || !s.empty()) return fail();
            r = rv.value;
        }
        return surd(0, q, d.value, r);
    }

    if (compact.find('.') == std::string::npos && compact.find('e') == std::string::npos &&
        compact.find('E') == std::string::npos) {
        auto num = parse_int(s);
        if (!num.ok) return fail();
        if (s.empty()) return rational(num.value, 1);
        if (!consume(s, "/")) return fail();
        auto den = parse_int(s);
        if (!den.ok || !s.empty()) return fail();
        return rational(num.value, den.value);
    }

    char* end = nullptr;
    const double v = std::strtod(compact.c_str(), &end);
    if (end != compact.c_str() + compact.size()) return fail();
    return from_double(v);
}

std::complex<double> circle_exp(const SymbolicReal& theta, std::int64_t k) {
    if (k == 0) return {1.0, 0.0};
    const double frac = theta.scaled(k).fractional_value();
    const long double angle = kTwoPi * static_cast<long double>(frac);
    return {static_cast<double>(cosl(angle)), static_cast<double>(sinl(angle))};
}

ContinuedFraction continued_fraction(const SymbolicReal& x, std::size_t depth) {
    if (depth == 0) throw PreconditionError("continued_fraction: depth must be >= 1");
    ContinuedFraction cf;

    switch (x.kind()) {
        case SymbolicReal::Kind::Rational: {
            std::int64_t num = x.surd_p();
            std::int64_t den = x.surd_r();
            while (den != 0 && cf.partial_quotients.size() < depth) {
                std::int64_t a = num / den;
                if (num % den != 0 && ((num < 0) != (den < 0))) --a;
                cf.partial_quotients.push_back(a);
                const std::int64_t rem = num - a * den;
                num = den;
                den = rem;
            }
            cf.complete = (den == 0);
            return cf;
        }
        case SymbolicReal::Kind::QuadraticSurd: {
            // Canonical state x_k = (P + sqrt(D)) / Q with Q | D - P^2.
            BigInt P, D, Q;
            if (x.surd_q() > 0) {
                P = x.surd_p();
                D = BigInt(x.surd_q()) * x.surd_q() * x.surd_d();
                Q = x.surd_r();
            } else {
                P = -BigInt(x.surd_p());
                D = BigInt(x.surd_q()) * x.surd_q() * x.surd_d();
                Q = -BigInt(x.surd_r());
            }
            if ((D - P * P) % Q != 0) {
                const BigInt qa = abs(Q);
                P *= qa;
                D *= qa * qa;
                Q *= qa;
            }

            std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
            std::vector<std::int64_t> quotients;
            std::optional<ContinuedFraction::Period> period;
            std::size_t step = 0;
            while (quotients.size() < depth + 1 && !period) {
                auto state = std::make_pair(P, Q);
                auto it = seen.find(state);
                if (it != seen.end()) {
                    ContinuedFraction::Period per;
                    per.start = it->second;
                    per.quotients.assign(quotients.begin() + static_cast<std::ptrdiff_t>(it->second),
                                         quotients.end());
                    period = per;
                    break;
                }
                seen.emplace(state, step);
                const BigInt a = floor_quadratic(P, D, Q);
                quotients.push_back(checked_cast(a, "continued_fraction"));
                P = a * Q - P;
                Q = (D - P * P) / Q;
                ++step;
                if (step > 200000)
                    throw std::runtime_error("continued_fraction: period exceeds iteration cap");
            }
            // Fill up to depth from the detected period.
            if (period) {
                while (quotients.size() < depth) {
                    const auto& per = period->quotients;
                    quotients.push_back(per[(quotients.size() - period->start) % per.size()]);
                }
            }
            if (quotients.size() > depth) quotients.resize(depth);
            cf.partial_quotients = std::move(quotients);
            cf.period = std::move(period);
            return cf;
        }
        case SymbolicReal::Kind::FloatLiteral: {
            cf.exact_input = false;
            long double y = x.value();
            while (cf.partial_quotients.size() < depth) {
                const long double a = floorl(y);
                if (a > static_cast<long double>(std::numeric_limits<std::int64_t>::max()) ||
                    a < static_cast<long double>(std::numeric_limits<std::int64_t>::min()))
                    throw std::overflow_error("continued_fraction: quotient overflow");
                cf.partial_quotients.push_back(static_cast<std::int64_t>(a));
                const long double frac = y - a;
                if (frac < 1e-12L) {
                    cf.complete = true;
                    break;
                }
                y = 1.0L / frac;
            }
            return cf;
        }
    }
    return cf;
}

std::vector<Rational> convergents(const ContinuedFraction& cf) {
    std::vector<Rational> out;
    BigInt p_km1 = 1, q_km1 = 0, p_km2 = 0, q_km2 = 1;
    for (std::int64_t a : cf.partial_quotients) {
        const BigInt pk = a * p_km1 + p_km2;
        const BigInt qk = a * q_km1 + q_km2;
        out.push_back(Rational{checked_cast(pk, "convergents"), checked_cast(qk, "convergents")});
        p_km2 = p_km1;
        q_km2 = q_km1;
        p_km1 = pk;
        q_km1 = qk;
    }
    return out;
}

RationalDifference rational_difference(const SymbolicReal& theta1, const SymbolicReal& theta2) {
    using Kind = SymbolicReal::Kind;
    RationalDifference out;
    out.exact_inputs =
        theta1.kind() != Kind::FloatLiteral && theta2.kind() != Kind::FloatLiteral;

    auto to_rat = [](const SymbolicReal& x) -> std::optional<BigRat> {
        switch (x.kind()) {
            case Kind::Rational:
                return BigRat(x.surd_p(), x.surd_r());
            case Kind::FloatLiteral:
                return BigRat(x.value());  // exact dyadic value of the double
            case Kind::QuadraticSurd:
                return std::nullopt;
        }
        return std::nullopt;
    };

    const bool s1 = theta1.kind() == Kind::QuadraticSurd;
    const bool s2 = theta2.kind() == Kind::QuadraticSurd;
    if (s1 != s2) return out;  // rational minus irrational
    if (s1 && s2) {
        if (theta1.surd_d() != theta2.surd_d()) return out;  // independent surds
        const __int128 cross1 = __int128(theta1.surd_q()) * theta2.surd_r();
        const __int128 cross2 = __int128(theta2.surd_q()) * theta1.surd_r();
        if (cross1 != cross2) return out;  // surd part survives
        const BigRat diff = BigRat(theta1.surd_p(), theta1.surd_r()) -
                            BigRat(theta2.surd_p(), theta2.surd_r());
        out.value = Rational{checked_cast(numerator(diff), "rational_difference"),
                             checked_cast(denominator(diff), "rational_difference")};
        return out;
    }
    const auto r1 = to_rat(theta1);
    const auto r2 = to_rat(theta2);
    const BigRat diff = *r1 - *r2;
    out.value = Rational{checked_cast(numerator(diff), "rational_difference"),
                         checked_cast(denominator(diff), "rational_difference")};
    return out;
}

WitnessScan approximability_witnesses(const SymbolicReal& theta, double a, double C,
                                      std::int64_t n_max) {
    if (n_max < 1) throw PreconditionError("approximability_witnesses: n_max must be >= 1");
    if (a <= 0 || C <= 0)
        throw PreconditionError("approximability_witnesses: a and C must be positive");
    if (theta.is_rational())
        throw PreconditionError("approximability_witnesses: theta is exactly rational");

    const bool theta_exact = theta.exact();
    const bool a_integral = (a == std::floor(a)) && a <= 62;
    const bool exact_compare = theta_exact && a_integral;

    WitnessScan scan;
    scan.exact_arithmetic = exact_compare;

    std::vector<signed char> hit(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::int64_t> m_of(static_cast<std::size_t>(n_max) + 1, 0);

    const double theta_val = theta.value();
    const BigRat C_rat = exact_compare ? BigRat(C) : BigRat(0);

    par::for_each_index(n_max, [&](std::ptrdiff_t idx) {
        const std::int64_t n = idx + 1;
        if (!theta_exact) {
            const long double nt = static_cast<long double>(n) * theta_val;
            const long double m = roundl(nt);
            const long double delta = fabsl(m - nt);
            if (delta < static_cast<long double>(C) * powl(static_cast<long double>(n),
                                                           -static_cast<long double>(a))) {
                hit[static_cast<std::size_t>(n)] = 1;
                m_of[static_cast<std::size_t>(n)] = static_cast<std::int64_t>(m);
            }
            return;
        }
        const SymbolicReal nt = theta.scaled(n);
        const std::int64_t m = nt.nearest_integer();
        // delta = m - n*theta = (A - B*sqrt(d)) / r
        const std::int64_t r = nt.surd_r();
        const BigInt A = BigInt(m) * r - nt.surd_p();
        const BigInt B = nt.surd_q();
        const std::int64_t d = nt.surd_d();
        bool inside = false;
        if (exact_compare) {
            BigInt n_pow = 1;
            for (int i = 0; i < static_cast<int>(a); ++i) n_pow *= n;
            const BigRat bound = C_rat * r / BigRat(n_pow);  // compare |A - B sqrt(d)| < bound*?
            // |A - B sqrt(d)| < Y  <=>  A - Y < B sqrt(d) < A + Y
            const BigRat Y = bound;
            inside = cmp_surd_term(B, d, BigRat(A) - Y) > 0 && cmp_surd_term(B, d, BigRat(A) + Y) < 0;
        } else {
            const long double delta =
                fabsl((static_cast<long double>(A) -
                       static_cast<long double>(B) * sqrtl(static_cast<long double>(d))) /
                      static_cast<long double>(r));
            inside = delta < static_cast<long double>(C) *
                                 powl(static_cast<long double>(n), -static_cast<long double>(a));
        }
        if (inside) {
            hit[static_cast<std::size_t>(n)] = 1;
            m_of[static_cast<std::size_t>(n)] = m;
        }
    });

    for (std::int64_t n = 1; n <= n_max; ++n) {
        if (hit[static_cast<std::size_t>(n)])
            scan.pairs.push_back(WitnessPair{m_of[static_cast<std::size_t>(n)], n});
    }
    return scan;
}

HalfIntegerDistance min_half_integer_distance(const SymbolicReal& theta, std::int64_t K) {
    if (K < 1) throw PreconditionError("min_half_integer_distance: K must be >= 1");
    std::vector<double> dist(static_cast<std::size_t>(K) + 1, 0.0);
    par::for_each_index(K, [&](std::ptrdiff_t idx) {
        const std::int64_t k = idx + 1;
        dist[static_cast<std::size_t>(k)] = theta.scaled(2 * k).integer_distance();
    });
    HalfIntegerDistance best{1, dist[1]};
    for (std::int64_t k = 2; k <= K; ++k) {
        if (dist[static_cast<std::size_t>(k)] < best.value) {
            best.value = dist[static_cast<std::size_t>(k)];
            best.k_min = k;
        }
    }
    return best;
}

}  // namespace powerspan::realnum

#include "powerspan/indexsets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include "powerspan/errors.hpp"

namespace powerspan::indexsets {

namespace {

bool is_even(std::int64_t v) { return v % 2 == 0; }

std::int64_t integer_root(std::int64_t v, std::int64_t e) {
    if (v < 0) return -1;
    std::int64_t r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(e))));
    auto pw = [&](std::int64_t base) {
        __int128 acc = 1;
        for (std::int64_t i = 0; i < e; ++i) {
            acc *= base;
            if (acc > (__int128)4e18) return (__int128)4e18;
        }
        return acc;
    };
    while (r > 0 && pw(r) > v) --r;
    while (pw(r + 1) <= v) ++r;
    return r;
}

}  // namespace

LambdaFamily LambdaFamily::explicit_set(std::vector<std::int64_t> values) {
    for (std::int64_t v : values)
        if (v < 0) throw PreconditionError("explicit family: negative exponent");
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    LambdaFamily f;
    f.kind_ = Kind::Explicit;
    f.values_ = std::move(values);
    return f;
}

LambdaFamily LambdaFamily::arithmetic(std::int64_t first, std::int64_t step) {
    if (first < 0 || step < 1) throw PreconditionError("arithmetic family: need first >= 0, step >= 1");
    LambdaFamily f;
    f.kind_ = Kind::Arithmetic;
    f.first_ = first;
    f.second_ = step;
    return f;
}

LambdaFamily LambdaFamily::geometric(std::int64_t first, std::int64_t ratio) {
    if (first < 1 || ratio < 2) throw PreconditionError("geometric family: need first >= 1, ratio >= 2");
    LambdaFamily f;
    f.kind_ = Kind::Geometric;
    f.first_ = first;
    f.second_ = ratio;
    return f;
}

LambdaFamily LambdaFamily::power_of_index(std::int64_t exponent) {
    if (exponent < 2) throw PreconditionError("power family: need exponent >= 2");
    LambdaFamily f;
    f.kind_ = Kind::PowerOfIndex;
    f.exponent_ = exponent;
    return f;
}

LambdaFamily LambdaFamily::union_of(std::vector<LambdaFamily> members) {
    LambdaFamily f;
    f.kind_ = Kind::Union;
    f.children_ = std::move(members);
    return f;
}

bool LambdaFamily::contains(std::int64_t lambda) const {
    if (lambda < 0) return false;
    switch (kind_) {
        case Kind::Explicit:
            return std::binary_search(values_.begin(), values_.end(), lambda);
        case Kind::Arithmetic:
            return lambda >= first_ && (lambda - first_) % second_ == 0;
        case Kind::Geometric: {
            if (lambda < first_) return false;
            std::int64_t v = lambda;
            while (v > first_ && v % second_ == 0) v /= second_;
            return v == first_;
        }
        case Kind::PowerOfIndex: {
            if (lambda < 1) return false;
            const std::int64_t r = integer_root(lambda, exponent_);
            __int128 acc = 1;
            for (std::int64_t i = 0; i < exponent_; ++i) acc *= r;
            return r >= 1 && acc == lambda;
        }
        case Kind::Union:
            return std::any_of(children_.begin(), children_.end(),
                               [&](const LambdaFamily& c) { return c.contains(lambda); });
        case Kind::ParityFiltered: {
            if (parity_ == Parity::Even && (lambda == 0 || !is_even(lambda))) return false;
            if (parity_ == Parity::Odd && is_even(lambda)) return false;
            return children_.front().contains(lambda);
        }
    }
    return false;
}

bool LambdaFamily::is_finite() const {
    switch (kind_) {
        case Kind::Explicit:
            return true;
        case Kind::Arithmetic:
        case Kind::Geometric:
        case Kind::PowerOfIndex:
            return false;
        case Kind::Union:
            return std::all_of(children_.begin(), children_.end(),
                               [](const LambdaFamily& c) { return c.is_finite(); });
        case Kind::ParityFiltered: {
            const LambdaFamily& base = children_.front();
            switch (base.kind_) {
                case Kind::Explicit:
                    return true;
                case Kind::Arithmetic:
                    // step even and parity mismatch -> empty (finite)
                    return base.second_ % 2 == 0 &&
                           (is_even(base.first_) != (parity_ == Parity::Even));
                case Kind::Geometric:
                    // odd first, even ratio: odd members = {first} only
                    return parity_ == Parity::Odd && !is_even(base.first_) &&
                           is_even(base.second_);
                case Kind::PowerOfIndex:
                    return false;
                default:
                    return false;
            }
        }
    }
    return false;
}

std::vector<std::int64_t> LambdaFamily::members_up_to(std::int64_t cap) const {
    std::vector<std::int64_t> out;
    switch (kind_) {
        case Kind::Explicit:
            for (std::int64_t v : values_)
                if (v <= cap) out.push_back(v);
            return out;
        case Kind::Arithmetic:
            for (std::int64_t v = first_; v <= cap; v += second_) out.push_back(v);
            return out;
        case Kind::Geometric:
            for (__int128 v = first_; v <= cap; v *= second_)
                out.push_back(static_cast<std::int64_t>(v));
            return out;
        case Kind::PowerOfIndex: {
            for (std::int64_t k = 1;; ++k) {
                __int128 acc = 1;
                for (std::int64_t i = 0; i < exponent_; ++i) acc *= k;
                if (acc > cap) break;
                out.push_back(static_cast<std::int64_t>(acc));
            }
            return out;
        }
        case Kind::Union: {
            std::set<std::int64_t> merged;
            for (const LambdaFamily& c : children_) {
                auto part = c.members_up_to(cap);
                merged.insert(part.begin(), part.end());
            }
            return {merged.begin(), merged.end()};
        }
        case Kind::ParityFiltered: {
            for (std::int64_t v : children_.front().members_up_to(cap)) {
                if (parity_ == Parity::Even && v != 0 && is_even(v)) out.push_back(v);
                if (parity_ == Parity::Odd && !is_even(v)) out.push_back(v);
            }
            return out;
        }
    }
    return out;
}

std::vector<std::int64_t> LambdaFamily::first_n(std::size_t n) const {
    if (n == 0) return {};
    if (is_finite()) {
        // finite families are unions of explicit sets, so a huge cap is cheap
        auto vals = members_up_to(static_cast<std::int64_t>(4e18));
        if (vals.size() > n) vals.resize(n);
        return vals;
    }
    std::int64_t cap = 64;
    for (;;) {
        auto vals = members_up_to(cap);
        if (vals.size() >= n) {
            vals.resize(n);
            return vals;
        }
        if (cap > static_cast<std::int64_t>(1e17)) return vals;
        cap *= 4;
    }
}

std::string LambdaFamily::str() const {
    switch (kind_) {
        case Kind::Explicit: {
            std::string s = "explicit:[";
            for (std::size_t i = 0; i < values_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(values_[i]);
            }
            return s + "]";
        }
        case Kind::Arithmetic:
            return "arith:" + std::to_string(first_) + "," + std::to_string(second_);
        case Kind::Geometric:
            return "geom:" + std::to_string(first_) + "," + std::to_string(second_);
        case Kind::PowerOfIndex:
            return "powers:" + std::to_string(exponent_);
        case Kind::Union: {
            std::string s = "union:[";
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) s += ";";
                s += children_[i].str();
            }
            return s + "]";
        }
        case Kind::ParityFiltered:
            return std::string(parity_ == Parity::Even ? "even-part(" : "odd-part(") +
                   children_.front().str() + ")";
    }
    return "";
}

LambdaFamily LambdaFamily::parse(std::string_view text) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view s = strip(text);
    auto fail = [&]() -> LambdaFamily {
        throw PreconditionError("unparseable family: '" + std::string(text) + "'");
    };
    auto parse_two = [&](std::string_view body) {
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) fail();
        return std::make_pair(std::stoll(std::string(body.substr(0, comma))),
                              std::stoll(std::string(body.substr(comma + 1))));
    };
    if (s.starts_with("explicit:[") && s.ends_with("]")) {
        std::string_view body = s.substr(10, s.size() - 11);
        std::vector<std::int64_t> vals;
        while (!body.empty()) {
            const auto comma = body.find(',');
            const std::string_view item =
                comma == std::string_view::npos ? body : body.substr(0, comma);
            if (!item.empty()) vals.push_back(std::stoll(std::string(strip(item))));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        return explicit_set(std::move(vals));
    }
    if (s.starts_with("arith:")) {
        auto [f, st] = parse_two(s.substr(6));
        return arithmetic(f, st);
    }
    if (s.starts_with("geom:")) {
        auto [f, r] = parse_two(s.substr(5));
        return geometric(f, r);
    }
    if (s.starts_with("powers:")) return power_of_index(std::stoll(std::string(s.substr(7))));
    if (s.starts_with("union:[") && s.ends_with("]")) {
        std::string_view body = s.substr(7, s.size() - 8);
        std::vector<LambdaFamily> members;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i == body.size() || (body[i] == ';' && depth == 0)) {
                if (i > start) members.push_back(parse(body.substr(start, i - start)));
                start = i + 1;
            } else if (body[i] == '[') {
                ++depth;
            } else if (body[i] == ']') {
                --depth;
            }
        }
        if (members.empty()) fail();
        return union_of(std::move(members));
    }
    return fail();
}

Divergence reciprocal_sum_diverges(const LambdaFamily& family) {
    using Kind = LambdaFamily::Kind;
    switch (family.kind_) {
        case Kind::Explicit:
            return Divergence::Converges;
        case Kind::Arithmetic:
            return Divergence::Diverges;
        case Kind::Geometric:
        case Kind::PowerOfIndex:
            return Divergence::Converges;
        case Kind::Union:
            for (const LambdaFamily& c : family.children_)
                if (reciprocal_sum_diverges(c) == Divergence::Diverges) return Divergence::Diverges;
            return Divergence::Converges;
        case Kind::ParityFiltered:
            return family.filtered_divergence_;
    }
    return Divergence::Converges;
}

LambdaFamily parity_filter(const LambdaFamily& family, LambdaFamily::Parity parity) {
    using Kind = LambdaFamily::Kind;
    using Parity = LambdaFamily::Parity;
    const bool want_even = parity == Parity::Even;
    switch (family.kind_) {
        case Kind::Explicit: {
            std::vector<std::int64_t> vals;
            for (std::int64_t v : family.values_) {
                if (want_even && v != 0 && is_even(v)) vals.push_back(v);
                if (!want_even && !is_even(v)) vals.push_back(v);
            }
            return LambdaFamily::explicit_set(std::move(vals));
        }
        case Kind::Arithmetic: {
            const std::int64_t f = family.first_, s = family.second_;
            if (s % 2 != 0) {
                // parity alternates; the wanted-parity members form an AP of step 2s
                std::int64_t start = (is_even(f) == want_even) ? f : f + s;
                if (want_even && start == 0) start += 2 * s;
                return LambdaFamily::arithmetic(start, 2 * s);
            }
            if (is_even(f) == want_even) {
                std::int64_t start = f;
                if (want_even && start == 0) start += s;
                return LambdaFamily::arithmetic(start, s);
            }
            return LambdaFamily::explicit_set({});
        }
        case Kind::Geometric: {
            const std::int64_t f = family.first_, r = family.second_;
            if (is_even(f)) return want_even ? family : LambdaFamily::explicit_set({});
            if (is_even(r)) {
                if (want_even) return LambdaFamily::geometric(f * r, r);
                return LambdaFamily::explicit_set({f});
            }
            // all members odd
            return want_even ? LambdaFamily::explicit_set({}) : family;
        }
        case Kind::PowerOfIndex: {
            LambdaFamily out;
            out.kind_ = Kind::ParityFiltered;
            out.children_ = {family};
            out.parity_ = parity;
            out.filtered_divergence_ = Divergence::Converges;  // subset of a convergent family
            return out;
        }
        case Kind::Union: {
            std::vector<LambdaFamily> parts;
            parts.reserve(family.children_.size());
            for (const LambdaFamily& c : family.children_) parts.push_back(parity_filter(c, parity));
            return LambdaFamily::union_of(std::move(parts));
        }
        case Kind::ParityFiltered: {
            if (family.parity_ == parity) return family;
            return LambdaFamily::explicit_set({});
        }
    }
    return LambdaFamily::explicit_set({});
}

EvenOddSplit split_even_odd(const LambdaFamily& family, ZeroPolicy policy) {
    EvenOddSplit out;
    out.policy_used = policy;
    out.even = parity_filter(family, LambdaFamily::Parity::Even);
    LambdaFamily odd = parity_filter(family, LambdaFamily::Parity::Odd);
    out.zero_adjoined =
        policy == ZeroPolicy::AlwaysAdjoin || (policy == ZeroPolicy::AdjoinIfMember && family.contains_zero());
    if (out.zero_adjoined)
        out.odd = LambdaFamily::union_of({LambdaFamily::explicit_set({0}), std::move(odd)});
    else
        out.odd = std::move(odd);
    return out;
}

MSVerdict classify_ms(const LambdaFamily& family, double a, double b, double zero_snap_tol) {
    if (std::abs(a) <= zero_snap_tol) a = 0.0;
    if (std::abs(b) <= zero_snap_tol) b = 0.0;
    if (!(a < b)) throw PreconditionError("classify_ms: need a < b");

    MSVerdict v;
    const bool zero = family.contains_zero();
    const Divergence whole = reciprocal_sum_diverges(family);

    if (a == 0.0 || b == 0.0) {
        v.interval_case = IntervalCase::TouchesZero;
        if (whole == Divergence::Converges) {
            v.is_ms = false;
            v.reason = MSReason::ReciprocalSumConvergent;
        } else if (!zero) {
            v.is_ms = false;
            v.reason = MSReason::MissingZero;
        } else {
            v.is_ms = true;
            v.reason = MSReason::HarmonicDivergent;
        }
        return v;
    }
    if (a > 0.0 || b < 0.0) {
        v.interval_case = IntervalCase::AwayFromZero;
        v.is_ms = whole == Divergence::Diverges;
        v.reason = v.is_ms ? MSReason::HarmonicDivergent : MSReason::ReciprocalSumConvergent;
        return v;
    }

    v.interval_case = IntervalCase::StraddlesZero;
    const EvenOddSplit split = split_even_odd(family);
    const bool even_ok = reciprocal_sum_diverges(split.even) == Divergence::Diverges;
    const bool odd_ok = reciprocal_sum_diverges(split.odd) == Divergence::Diverges;
    if (!even_ok) {
        v.is_ms = false;
        v.reason = MSReason::EvenPartFails;
    } else if (!odd_ok) {
        v.is_ms = false;
        v.reason = MSReason::OddPartFails;
    } else if (!zero) {
        v.is_ms = false;
        v.reason = MSReason::MissingZero;
    } else {
        v.is_ms = true;
        v.reason = MSReason::BothPartsOk;
    }
    return v;
}

std::string to_string(Divergence d) {
    return d == Divergence::Diverges ? "diverges" : "converges";
}

std::string to_string(IntervalCase c) {
    switch (c) {
        case IntervalCase::TouchesZero: return "touches-zero";
        case IntervalCase::AwayFromZero: return "away-from-zero";
        case IntervalCase::StraddlesZero: return "straddles-zero";
    }
    return "";
}

std::string to_string(MSReason r) {
    switch (r) {
        case MSReason::HarmonicDivergent: return "harmonic-divergent";
        case MSReason::ReciprocalSumConvergent: return "reciprocal-sum-convergent";
        case MSReason::MissingZero: return "missing-zero";
        case MSReason::EvenPartFails: return "even-part-fails";
        case MSReason::OddPartFails: return "odd-part-fails";
        case MSReason::BothPartsOk: return "both-parts-ok";
    }
    return "";
}

}  // namespace powerspan::indexsets

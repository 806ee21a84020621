#pragma once

#include <functional>
#include <vector>

#include "powerspan/funcrep.hpp"
#include "powerspan/indexsets.hpp"
#include "powerspan/psipower.hpp"

namespace powerspan::muntz {

using funcrep::Complex;
using funcrep::IntervalFunction;
using funcrep::QuadratureRule;

/// Finite power system {x^lambda : lambda in exponents} on [a, b].
struct MuntzSystem {
    std::vector<long long> exponents;  // sorted, distinct, >= 0
    double a = 0.0;
    double b = 1.0;

    static MuntzSystem make(std::vector<long long> exponents, double a, double b);
};

inline constexpr long long kDefaultLambdaMax = 40;
inline constexpr double kGramConditionWarning = 1e12;

struct ApproxResult {
    std::vector<std::pair<long long, Complex>> coefficients;  // exponent -> monomial coeff
    double error_l2 = 0.0;
    double error_sup_grid = 0.0;
    double gram_condition_estimate = 0.0;
    bool gram_condition_warning = false;  // estimate above 1e12 (Hilbert-like collapse)
    double residual_orthogonality = 0.0;  // max_lambda |<f - approx, x^lambda>|
    std::function<Complex(double)> approximant;  // evaluates the projection
};

/**
 * Orthogonal projection of f onto the span of the system in the quadrature
 * L2 inner product. Computed by modified Gram-Schmidt with one
 * reorthogonalization pass against the quadrature weights; the raw Gram
 * normal equations are never solved, the raw Gram matrix only feeds the
 * condition estimate. Throws DegenerateSystemError naming the exponent whose
 * orthogonalized direction collapses below 1e-10 of its original norm.
 */
ApproxResult best_approx_L2(const IntervalFunction& f, const MuntzSystem& system,
                            const QuadratureRule& rule);

/// Raw moments int_I f(s) s^lambda ds per exponent.
std::vector<std::pair<long long, Complex>> annihilation_residuals(const IntervalFunction& f,
                                                                  const MuntzSystem& system,
                                                                  const QuadratureRule& rule);

struct ErrorCurve {
    std::vector<std::pair<std::size_t, double>> stages;  // (exponent count, error_L2)
    indexsets::MSVerdict verdict;                        // MS verdict of the family on f's domain
    std::vector<long long> exponents_used;
};

/// Projection errors over the nested stages spanned by the first k elements
/// of the family, k = 1..stages, with the family's MS verdict attached.
ErrorCurve error_curve(const IntervalFunction& f, const indexsets::LambdaFamily& family,
                       std::size_t stages);

/**
 * Pushforward psi_* f on J = psi([a,b]) with
 * (psi_* f)(t) = f(psi^{-1}(t)) / psi'(psi^{-1}(t)), so that
 * int f psi^lambda = int_J (psi_* f)(t) t^lambda dt. Requires psi injective;
 * a fold raises a PreconditionError carrying the critical point.
 */
IntervalFunction pushforward(const IntervalFunction& f, const psipower::SmoothMap& psi);

}  // namespace powerspan::muntz

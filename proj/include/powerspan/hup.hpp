#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powerspan/cosinesys.hpp"
#include "powerspan/funcrep.hpp"
#include "powerspan/realnum.hpp"

namespace powerspan::hup {

using funcrep::Complex;

/// Finite measure on the unit circle, absolutely continuous with respect to
/// arc length, described by its 1-periodic density.
struct CircleMeasure {
    funcrep::PeriodicFunction density;
};

/**
 * mu_hat(eta, xi) = int_0^1 f(t) e^{2 pi i (eta cos 2pi t + xi sin 2pi t)} dt
 * by the periodic trapezoid rule with the node count grown with the
 * oscillation (>= 64 + 16 ceil |(eta,xi)|, and at least the density's
 * aliasing guard), accurate to ~1e-11 on the smooth test family.
 */
Complex mu_hat(const CircleMeasure& mu, double eta, double xi);

struct LineRestriction {
    std::vector<double> r;
    std::vector<Complex> values;  // mu_hat(r cos 2pi theta, r sin 2pi theta)
    double max_modulus = 0.0;
};

/// mu_hat along the line through the origin at angle 2 pi theta.
LineRestriction line_restriction(const CircleMeasure& mu, const realnum::SymbolicReal& theta,
                                 const std::vector<double>& r_grid);

/// {0, 0.1, ..., 3}
std::vector<double> standard_r_grid();

struct MomentDerivativeRow {
    long long lambda = 0;
    Complex finite_difference;  // d^lambda/dr^lambda of the restriction at r = 0
    Complex moment_side;        // (2 i pi)^lambda int f cos^lambda 2pi(t-theta)
    double discrepancy = 0.0;   // |difference| / max(1, |moment|)
};

/**
 * Central finite differences (step 1e-2, one Richardson pass) of the line
 * restriction at r = 0 against the (2 i pi)^lambda moments; the same node
 * count is used for every stencil evaluation so the quadrature bias cancels
 * in the differences. lambda_cap <= 6.
 */
std::vector<MomentDerivativeRow> moment_derivative_check(const CircleMeasure& mu,
                                                         const realnum::SymbolicReal& theta,
                                                         long long lambda_cap);

enum class HupVerdictKind { Hup, NotHup, Indeterminate };

struct HupReport {
    HupVerdictKind verdict = HupVerdictKind::Indeterminate;
    std::optional<cosinesys::RationalCounterexample> witness;  // rational case
    double witness_max_line_modulus = 0.0;  // certified < 1e-8 on the standard grid
    double min_determinant = 0.0;  // irrational case: finite-band 2x2 certificate
    int certificate_band = 0;
    std::string note;
};

/**
 * Pair-of-lines verdict: a rational difference is never a uniqueness pair
 * (a certified translated odd periodic witness is attached, with its line
 * restrictions checked below 1e-8 on the standard grid); an exact irrational
 * difference is one by the two-line uniqueness theorem, reported with a
 * finite-band certificate (the minimum 2x2 determinant over the band), never
 * as a numerical proof. Float inputs give an indeterminate verdict.
 */
HupReport hup_verdict(const realnum::SymbolicReal& theta1, const realnum::SymbolicReal& theta2,
                      int certificate_band = 64);

}  // namespace powerspan::hup

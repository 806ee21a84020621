#include "powerspan/hup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powerspan/errors.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::hup {

using realnum::SymbolicReal;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int node_count(const CircleMeasure& mu, double radius) {
    const int oscillation = 64 + 16 * static_cast<int>(std::ceil(std::abs(radius)));
    return 2 * std::max(oscillation, 4 * mu.density.bandwidth() + 4);
}

Complex mu_hat_fixed(const CircleMeasure& mu, double eta, double xi, int M) {
    std::vector<Complex> terms(static_cast<std::size_t>(M));
    const funcrep::PeriodicFunction& f = mu.density;
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        const double t = static_cast<double>(j) / M;
        const double phase = kTwoPi * (eta * std::cos(kTwoPi * t) + xi * std::sin(kTwoPi * t));
        terms[static_cast<std::size_t>(j)] = f.value(t) * Complex(std::cos(phase), std::sin(phase));
    });
    double sr = 0, cr = 0, si = 0, ci = 0;
    for (const Complex& v : terms) {
        double y = v.real() - cr;
        double t = sr + y;
        cr = (t - sr) - y;
        sr = t;
        y = v.imag() - ci;
        t = si + y;
        ci = (t - si) - y;
        si = t;
    }
    return {sr / M, si / M};
}

}  // namespace

Complex mu_hat(const CircleMeasure& mu, double eta, double xi) {
    return mu_hat_fixed(mu, eta, xi, node_count(mu, std::hypot(eta, xi)));
}

LineRestriction line_restriction(const CircleMeasure& mu, const SymbolicReal& theta,
                                 const std::vector<double>& r_grid) {
    LineRestriction out;
    out.r = r_grid;
    out.values.resize(r_grid.size());
    double rmax = 0.0;
    for (double r : r_grid) rmax = std::max(rmax, std::abs(r));
    const int M = node_count(mu, rmax);
    const double ang = kTwoPi * theta.fractional_value();
    const double ct = std::cos(ang), st = std::sin(ang);
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        out.values[i] = mu_hat_fixed(mu, r_grid[i] * ct, r_grid[i] * st, M);
        out.max_modulus = std::max(out.max_modulus, std::abs(out.values[i]));
    }
    return out;
}

std::vector<double> standard_r_grid() {
    std::vector<double> r;
    for (int i = 0; i <= 30; ++i) r.push_back(0.1 * i);
    return r;
}

std::vector<MomentDerivativeRow> moment_derivative_check(const CircleMeasure& mu,
                                                         const SymbolicReal& theta,
                                                         long long lambda_cap) {
    if (lambda_cap > 6)
        throw PreconditionError("moment_derivative_check: finite differences degrade beyond "
                                "lambda = 6");
    const double h = 1e-2;
    const double ang = kTwoPi * theta.fractional_value();
    const double ct = std::cos(ang), st = std::sin(ang);
    const int M = node_count(mu, 1.0);  // fixed nodes across the whole stencil
    auto F = [&](double r) { return mu_hat_fixed(mu, r * ct, r * st, M); };

    auto central = [&](long long lambda, double step) {
        // sum_{i=0..lambda} (-1)^i C(lambda,i) F((lambda/2 - i) step) / step^lambda
        Complex acc{0.0, 0.0};
        double binom = 1.0;
        for (long long i = 0; i <= lambda; ++i) {
            const double offset = (static_cast<double>(lambda) / 2.0 - static_cast<double>(i)) * step;
            acc += ((i % 2 == 0) ? 1.0 : -1.0) * binom * F(offset);
            binom = binom * static_cast<double>(lambda - i) / static_cast<double>(i + 1);
        }
        return acc / funcrep::ipow(step, lambda);
    };

    // moment side: (2 i pi)^lambda int f cos^lambda 2pi(t-theta)
    const double tv = theta.value();
    const funcrep::PeriodicFunction& f = mu.density;
    auto moment = [&](long long lambda) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < M; ++j) {
            const double t = static_cast<double>(j) / M;
            acc += f.value(t) * funcrep::ipow(std::cos(kTwoPi * (t - tv)), lambda);
        }
        acc /= static_cast<double>(M);
        Complex scale{1.0, 0.0};
        for (long long i = 0; i < lambda; ++i) scale *= Complex(0.0, kTwoPi);
        return scale * acc;
    };

    std::vector<MomentDerivativeRow> rows;
    for (long long lambda = 0; lambda <= lambda_cap; ++lambda) {
        MomentDerivativeRow row;
        row.lambda = lambda;
        if (lambda == 0) {
            row.finite_difference = F(0.0);
        } else {
            const Complex d1 = central(lambda, h);
            const Complex d2 = central(lambda, h / 2);
            row.finite_difference = (4.0 * d2 - d1) / 3.0;  // one Richardson pass
        }
        row.moment_side = moment(lambda);
        row.discrepancy = std::abs(row.finite_difference - row.moment_side) /
                          std::max(1.0, std::abs(row.moment_side));
        rows.push_back(row);
    }
    return rows;
}

HupReport hup_verdict(const SymbolicReal& theta1, const SymbolicReal& theta2,
                      int certificate_band) {
    const auto rd = realnum::rational_difference(theta1, theta2);
    if (rd.value && rd.value->num == 0)
        throw PreconditionError("hup_verdict: the two lines coincide (theta1 = theta2)");

    HupReport rep;
    rep.certificate_band = certificate_band;

    if (!rd.exact_inputs) {
        rep.verdict = HupVerdictKind::Indeterminate;
        rep.note = "float shifts: the difference's rationality cannot be decided from binary64 "
                   "inputs, no definitive verdict";
        return rep;
    }

    if (rd.value) {
        rep.verdict = HupVerdictKind::NotHup;
        const auto shifts = cosinesys::ShiftPair::make(theta1, theta2);
        rep.witness = cosinesys::rational_counterexample(shifts, nullptr);
        const CircleMeasure witness_measure{rep.witness->witness};
        const auto grid = standard_r_grid();
        const auto l1 = line_restriction(witness_measure, theta1, grid);
        const auto l2 = line_restriction(witness_measure, theta2, grid);
        rep.witness_max_line_modulus = std::max(l1.max_modulus, l2.max_modulus);
        if (rep.witness_max_line_modulus > 1e-8)
            throw CertificationError("hup_verdict: witness line restriction above 1e-8", {});
        rep.note = "rational difference " + std::to_string(rd.value->num) + "/" +
                   std::to_string(rd.value->den) +
                   ": a translated odd 1/n-periodic density annihilates both lines (certified)";
        return rep;
    }

    rep.verdict = HupVerdictKind::Hup;
    const auto diff = theta1.minus(theta2);
    double min_det = 1e300;
    for (int k = 1; k <= certificate_band; ++k) {
        double dist;
        if (diff) {
            dist = diff->scaled(2 * k).integer_distance();
        } else {
            const double d = theta1.value() - theta2.value();
            const double frac = 2.0 * k * d - std::floor(2.0 * k * d);
            dist = std::min(frac, 1.0 - frac);
        }
        min_det = std::min(min_det, 2.0 * std::sin(std::numbers::pi * dist));
    }
    rep.min_determinant = min_det;
    rep.note = "irrational exact difference: uniqueness pair by the two-line theorem; "
               "finite-band certificate: min |det| = " +
               std::to_string(min_det) + " over |k| <= " + std::to_string(certificate_band) +
               " (theorem citation, not a numerical proof)";
    return rep;
}

}  // namespace powerspan::hup

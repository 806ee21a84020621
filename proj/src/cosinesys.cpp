#include "powerspan/cosinesys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powerspan/errors.hpp"
#include "powerspan/muntz.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::cosinesys {

using funcrep::QuadratureRule;
using realnum::circle_exp;
using realnum::SymbolicReal;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct GridNorms {
    double l1 = 0.0, l2 = 0.0, sup = 0.0;
};

GridNorms periodic_grid_norms(const std::function<Complex(double)>& fn, int M) {
    std::vector<double> mags(static_cast<std::size_t>(M));
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        mags[static_cast<std::size_t>(j)] = std::abs(fn(static_cast<double>(j) / M));
    });
    GridNorms out;
    double s1 = 0, c1 = 0, s2 = 0, c2 = 0;
    for (double m : mags) {
        double y = m - c1;
        double t = s1 + y;
        c1 = (t - s1) - y;
        s1 = t;
        y = m * m - c2;
        t = s2 + y;
        c2 = (t - s2) - y;
        s2 = t;
        out.sup = std::max(out.sup, m);
    }
    out.l1 = s1 / M;
    out.l2 = std::sqrt(s2 / M);
    return out;
}

long long resonant_k(const realnum::Rational& diff) {
    return diff.den % 2 == 0 ? diff.den / 2 : diff.den;
}

// the shared per-k 2x2 solve of the parity system
struct BandSolve {
    std::vector<Complex> c1, c2;  // index k-1 for k = 1..K
    double min_denominator = 1e300;
};

BandSolve solve_band(const PeriodicFunction& q, const ShiftPair& shifts, double denom_guard) {
    const int K = q.bandwidth();
    BandSolve out;
    out.c1.assign(static_cast<std::size_t>(std::max(K, 0)), Complex(0, 0));
    out.c2.assign(static_cast<std::size_t>(std::max(K, 0)), Complex(0, 0));
    std::vector<double> denoms(static_cast<std::size_t>(std::max(K, 0)), 1e300);
    par::for_each_index(K, [&](std::ptrdiff_t idx) {
        const long long k = idx + 1;
        const Complex e1 = circle_exp(shifts.theta1, 2 * k);
        const Complex e2 = circle_exp(shifts.theta2, 2 * k);
        const Complex den = e1 - e2;
        denoms[static_cast<std::size_t>(idx)] = std::abs(den);
        if (std::abs(den) < denom_guard) return;  // reported after the loop
        const Complex ck = q.coeff(static_cast<int>(k));
        const Complex cmk = q.coeff(static_cast<int>(-k));
        out.c1[static_cast<std::size_t>(idx)] = (cmk - ck * e2) / den;
        out.c2[static_cast<std::size_t>(idx)] = (cmk - ck * e1) / (e2 - e1);
    });
    for (std::size_t i = 0; i < denoms.size(); ++i) {
        out.min_denominator = std::min(out.min_denominator, denoms[i]);
        if (denoms[i] < denom_guard)
            throw ResonanceError("parity decomposition: denominator |e1-e2| = " +
                                     std::to_string(denoms[i]) + " below guard at k = " +
                                     std::to_string(i + 1),
                                 static_cast<long long>(i + 1));
    }
    return out;
}

int effective_degree(const PeriodicFunction& p) {
    for (int k = p.bandwidth(); k >= 1; --k)
        if (std::abs(p.coeff(k)) > 0.0 || std::abs(p.coeff(-k)) > 0.0) return k;
    return 0;
}

}  // namespace

ShiftPair ShiftPair::make(const SymbolicReal& theta1, const SymbolicReal& theta2) {
    for (const auto* th : {&theta1, &theta2}) {
        const double v = th->value();
        if (v < 0.0 || v >= 1.0)
            throw PreconditionError("ShiftPair: shifts must lie in [0,1), got " + th->str());
    }
    ShiftPair out;
    out.theta1 = theta1;
    out.theta2 = theta2;
    const auto rd = realnum::rational_difference(theta1, theta2);
    if (!rd.exact_inputs)
        out.difference_class = DifferenceClass::FloatUnknown;
    else if (rd.value)
        out.difference_class = DifferenceClass::Rational;
    else
        out.difference_class = DifferenceClass::IrrationalExact;
    out.difference = rd.value;
    out.difference_symbolic = theta1.minus(theta2);
    return out;
}

IntervalFunction pushforward_circle(const PeriodicFunction& f, const SymbolicReal& theta) {
    const double tv = theta.value();
    IntervalFunction g;
    g.a = -1.0;
    g.b = 1.0;
    g.smoothness = funcrep::Smoothness::IntegrableSingularity;
    g.singularities = {-1.0, 1.0};
    const PeriodicFunction fc = f;
    g.eval = [fc, tv](double u) -> Complex {
        const double uc = std::clamp(u, -1.0, 1.0);
        const double s = std::acos(uc) / kTwoPi;
        const double root = std::sqrt(std::max(0.0, 1.0 - uc * uc));
        return (fc.value(tv + s) + fc.value(tv - s)) / (kTwoPi * root);
    };

    // in-op certification of the moment identity, l <= 10 at 1e-9
    std::vector<long long> lambdas;
    for (long long l = 0; l <= 10; ++l) lambdas.push_back(l);
    const int M = std::max(512, 4 * (f.bandwidth() + 10) + 4);
    std::vector<Complex> lhs(lambdas.size());
    par::for_each_index(static_cast<std::ptrdiff_t>(lambdas.size()), [&](std::ptrdiff_t li) {
        const long long l = lambdas[static_cast<std::size_t>(li)];
        Complex acc{0, 0};
        for (int j = 0; j < M; ++j) {
            const double t = static_cast<double>(j) / M;
            acc += fc.value(t) * funcrep::ipow(std::cos(kTwoPi * (t - tv)), l);
        }
        lhs[static_cast<std::size_t>(li)] = acc / static_cast<double>(M);
    });
    const QuadratureRule rule = QuadratureRule::for_function(g, 16);
    const auto rhs = funcrep::power_moments(g, rule, {}, lambdas);
    double worst = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        worst = std::max(worst,
                         std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(lhs[i])));
    if (worst > 1e-9)
        throw CertificationError(
            "pushforward_circle: moment identity defect " + std::to_string(worst) + " above 1e-9",
            {});
    return g;
}

OneShiftResiduals one_shift_residuals(const PeriodicFunction& f, const SymbolicReal& theta,
                                      const indexsets::LambdaFamily& family, long long cap) {
    if (cap > 40) throw PreconditionError("one_shift_residuals: cap <= 40");
    const auto members = family.members_up_to(cap);
    std::vector<long long> lambdas(members.begin(), members.end());
    const double tv = theta.value();
    const int M = std::max(512, 4 * (f.bandwidth() + static_cast<int>(cap)) + 4);

    std::vector<Complex> fv(static_cast<std::size_t>(M));
    std::vector<double> cv(static_cast<std::size_t>(M));
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        const double t = static_cast<double>(j) / M;
        fv[static_cast<std::size_t>(j)] = f.value(t);
        cv[static_cast<std::size_t>(j)] = std::cos(kTwoPi * (t - tv));
    });

    OneShiftResiduals out;
    out.residuals.resize(lambdas.size());
    par::for_each_index(static_cast<std::ptrdiff_t>(lambdas.size()), [&](std::ptrdiff_t li) {
        const long long l = lambdas[static_cast<std::size_t>(li)];
        double sr = 0, cr = 0, si = 0, ci = 0;
        for (int j = 0; j < M; ++j) {
            const Complex term = fv[static_cast<std::size_t>(j)] *
                                 funcrep::ipow(cv[static_cast<std::size_t>(j)], l);
            double y = term.real() - cr;
            double t = sr + y;
            cr = (t - sr) - y;
            sr = t;
            y = term.imag() - ci;
            t = si + y;
            ci = (t - si) - y;
            si = t;
        }
        out.residuals[static_cast<std::size_t>(li)] = {l, Complex(sr / M, si / M)};
    });

    const int G = 2048;
    std::vector<double> defect(static_cast<std::size_t>(G));
    par::for_each_index(G, [&](std::ptrdiff_t j) {
        const double t = static_cast<double>(j) / G;
        defect[static_cast<std::size_t>(j)] = std::abs(f.value(tv + t) + f.value(tv - t));
    });
    for (double d : defect) out.symmetry_defect = std::max(out.symmetry_defect, d);
    return out;
}

ParityDecomposition parity_decompose_trig(const PeriodicFunction& p, const ShiftPair& shifts,
                                          DecomposeMode mode) {
    ParityDecomposition out;
    if (mode == DecomposeMode::Irrational) {
        if (shifts.difference_class == DifferenceClass::Rational)
            throw ResonanceError(
                "parity decomposition: theta1 - theta2 = " +
                    std::to_string(shifts.difference->num) + "/" +
                    std::to_string(shifts.difference->den) +
                    " is rational; the system is singular at k = " +
                    std::to_string(resonant_k(*shifts.difference)),
                resonant_k(*shifts.difference));
        out.float_caveat = shifts.difference_class == DifferenceClass::FloatUnknown;
    } else {
        if (shifts.difference_class != DifferenceClass::Rational)
            throw PreconditionError("rational-capped mode needs an exactly rational difference");
        const long long n = shifts.difference->den;
        const long long cap = n % 2 == 0 ? n / 2 : n;
        if (effective_degree(p) >= cap)
            throw PreconditionError("parity decomposition: degree " +
                                    std::to_string(effective_degree(p)) +
                                    " at or above the rational-difference cap " +
                                    std::to_string(cap));
    }

    const int K = p.bandwidth();
    const Complex mean = p.coeff(0);
    std::vector<Complex> qc(static_cast<std::size_t>(2 * K + 1));
    for (int k = -K; k <= K; ++k) qc[static_cast<std::size_t>(k + K)] = p.coeff(k);
    qc[static_cast<std::size_t>(K)] = Complex(0, 0);  // zero-mean part
    const PeriodicFunction q = PeriodicFunction::from_coeffs(std::move(qc), K);

    const double guard = out.float_caveat ? 1e-9 : 1e-300;
    const BandSolve solve = solve_band(q, shifts, guard);
    out.smallest_denominator = K >= 1 ? solve.min_denominator : 0.0;

    std::vector<Complex> c1(static_cast<std::size_t>(2 * K + 1), Complex(0, 0));
    std::vector<Complex> c2(static_cast<std::size_t>(2 * K + 1), Complex(0, 0));
    c1[static_cast<std::size_t>(K)] = mean;  // remark's lambda = 1 choice: P2 keeps zero mean
    for (int k = 1; k <= K; ++k) {
        const Complex e1 = circle_exp(shifts.theta1, 2 * k);
        const Complex e2 = circle_exp(shifts.theta2, 2 * k);
        const Complex a1 = solve.c1[static_cast<std::size_t>(k - 1)];
        const Complex a2 = solve.c2[static_cast<std::size_t>(k - 1)];
        c1[static_cast<std::size_t>(K + k)] = a1;
        c1[static_cast<std::size_t>(K - k)] = a1 * e1;
        c2[static_cast<std::size_t>(K + k)] = a2;
        c2[static_cast<std::size_t>(K - k)] = a2 * e2;
    }
    out.p1 = PeriodicFunction::from_coeffs(std::move(c1), K);
    out.p2 = PeriodicFunction::from_coeffs(std::move(c2), K);

    double rec2 = 0.0;
    for (int k = -K; k <= K; ++k)
        rec2 += std::norm(p.coeff(k) - out.p1.coeff(k) - out.p2.coeff(k));
    out.reconstruction_defect = std::sqrt(rec2);

    auto parity_defect = [K](const PeriodicFunction& pj, const SymbolicReal& theta) {
        double worst = 0.0;
        for (int k = 1; k <= K; ++k) {
            const Complex ph = circle_exp(theta, k);
            worst = std::max(worst,
                             std::abs(pj.coeff(-k) * std::conj(ph) - pj.coeff(k) * ph));
        }
        return worst;
    };
    out.symmetry_defect_1 = parity_defect(out.p1, shifts.theta1);
    out.symmetry_defect_2 = parity_defect(out.p2, shifts.theta2);
    return out;
}

SobolevDecomposition sobolev_decompose(const PeriodicFunction& f, const ShiftPair& shifts,
                                       double s, int j, double a) {
    if (shifts.difference_class == DifferenceClass::Rational)
        throw ResonanceError("sobolev_decompose: rational difference",
                             resonant_k(*shifts.difference));
    if (shifts.difference_class == DifferenceClass::FloatUnknown)
        throw PreconditionError("sobolev_decompose: needs an exact irrational difference");

    SobolevDecomposition out;
    const ParityDecomposition dec = parity_decompose_trig(f, shifts, DecomposeMode::Irrational);
    out.f1 = dec.p1;
    out.f2 = dec.p2;
    out.diagnostics.a_used = a;
    out.diagnostics.condition_l2 = s >= a;
    out.diagnostics.condition_l1 = s > a + 0.5 + j;

    const int K = f.bandwidth();
    double hs2 = 0.0, l2amp = 0.0, l1w = 0.0;
    for (int k = 1; k <= K; ++k) {
        const Complex e1 = circle_exp(shifts.theta1, 2 * k);
        const Complex e2 = circle_exp(shifts.theta2, 2 * k);
        const double den = std::abs(e1 - e2);
        double bound = 0.0;
        if (shifts.difference_symbolic) {
            bound = 4.0 * shifts.difference_symbolic->scaled(2 * k).integer_distance();
        } else {
            const double d = shifts.theta1.value() - shifts.theta2.value();
            const double frac = 2.0 * k * d - std::floor(2.0 * k * d);
            bound = 4.0 * std::min(frac, 1.0 - frac);
        }
        const double mag = std::abs(f.coeff(k)) + std::abs(f.coeff(-k));
        out.diagnostics.rows.push_back(SobolevDiagnostics::Row{k, mag, den, bound});
        hs2 += std::pow(1.0 + k, 2.0 * s) * (std::norm(f.coeff(k)) + std::norm(f.coeff(-k)));
        if (den > 0) {
            l2amp += (std::norm(f.coeff(k)) + std::norm(f.coeff(-k))) / (den * den);
            l1w += std::pow(static_cast<double>(k), static_cast<double>(j)) * mag / den;
        }
    }
    hs2 += std::norm(f.coeff(0));
    out.diagnostics.hs_norm_band = std::sqrt(hs2);
    out.diagnostics.l2_amplified = std::sqrt(l2amp);
    out.diagnostics.l1_weighted = l1w;
    return out;
}

PeriodicFunction default_counterexample_seed(std::int64_t n) {
    std::vector<std::pair<int, Complex>> entries;
    entries.emplace_back(static_cast<int>(n), Complex(0.0, -0.5));  // sin 2 pi n t
    entries.emplace_back(static_cast<int>(-n), Complex(0.0, 0.5));
    return PeriodicFunction::from_coeff_list(entries);
}

RationalCounterexample rational_counterexample(const ShiftPair& shifts,
                                               const PeriodicFunction* seed) {
    if (shifts.difference_class != DifferenceClass::Rational)
        throw PreconditionError(
            "rational_counterexample: theta1 - theta2 must be exactly rational");
    const std::int64_t n = shifts.difference->den;

    PeriodicFunction phi = seed ? *seed : default_counterexample_seed(n);

    // seed must be odd and 1/n-periodic: coefficients supported on multiples
    // of n with c_{-k} = -c_k
    const int K = phi.bandwidth();
    double support_defect = 0.0, odd_defect = 0.0, mass = 0.0;
    for (int k = -K; k <= K; ++k) {
        const double mag = std::abs(phi.coeff(k));
        mass += mag;
        if (k % n != 0) support_defect = std::max(support_defect, mag);
        if (k >= 0) odd_defect = std::max(odd_defect, std::abs(phi.coeff(-k) + phi.coeff(k)));
    }
    if (mass == 0.0) throw PreconditionError("rational_counterexample: zero seed");
    if (support_defect > 1e-12 * mass)
        throw PreconditionError("rational_counterexample: seed is not 1/" + std::to_string(n) +
                                "-periodic (coefficient off the n-grid)");
    if (odd_defect > 1e-12 * mass)
        throw PreconditionError("rational_counterexample: seed is not odd");

    // f(t) = seed(t - theta2)
    std::vector<Complex> fc(static_cast<std::size_t>(2 * K + 1), Complex(0, 0));
    for (int k = -K; k <= K; ++k)
        fc[static_cast<std::size_t>(k + K)] = phi.coeff(k) * circle_exp(shifts.theta2, -k);
    RationalCounterexample out;
    out.witness = PeriodicFunction::from_coeffs(std::move(fc), K);
    out.period_n = n;

    const indexsets::LambdaFamily all = indexsets::LambdaFamily::arithmetic(0, 1);
    const auto r1 = one_shift_residuals(out.witness, shifts.theta1, all, 30);
    const auto r2 = one_shift_residuals(out.witness, shifts.theta2, all, 30);
    for (const auto& [l, v] : r1.residuals)
        out.max_residual_theta1 = std::max(out.max_residual_theta1, std::abs(v));
    for (const auto& [l, v] : r2.residuals)
        out.max_residual_theta2 = std::max(out.max_residual_theta2, std::abs(v));
    const double scale = std::max(1.0, out.witness.l2_norm());
    if (out.max_residual_theta1 > 1e-11 * scale || out.max_residual_theta2 > 1e-11 * scale) {
        std::vector<CertificationError::ResidualTable> tables(2);
        tables[0].label = "theta1";
        tables[1].label = "theta2";
        for (const auto& [l, v] : r1.residuals) tables[0].rows.emplace_back(l, std::abs(v));
        for (const auto& [l, v] : r2.residuals) tables[1].rows.emplace_back(l, std::abs(v));
        throw CertificationError("rational_counterexample: residuals above 1e-11", std::move(tables));
    }
    return out;
}

PipelineResult constructive_density_approx(const PeriodicFunction& target, const ShiftPair& shifts,
                                           const indexsets::LambdaFamily& lambda,
                                           const indexsets::LambdaFamily& lambda_prime, int fejer_n,
                                           std::size_t stage, bool compensate_fejer) {
    if (fejer_n < 0) throw PreconditionError("pipeline: Fejer degree must be >= 0");
    if (stage < 1) throw PreconditionError("pipeline: stage must be >= 1");

    PipelineResult res;
    res.verdict_lambda = indexsets::classify_ms(lambda, -1.0, 1.0);
    res.verdict_lambda_prime = indexsets::classify_ms(lambda_prime, -1.0, 1.0);
    res.theory_convergent = res.verdict_lambda.is_ms && res.verdict_lambda_prime.is_ms;

    // make sure the target's coefficient table covers the Fejer band
    PeriodicFunction base = target;
    if (target.bandwidth() < fejer_n && target.has_evaluator()) {
        const PeriodicFunction t = target;
        base = funcrep::fourier_coeffs([t](double x) { return t.value(x); }, fejer_n,
                                       std::max(4 * fejer_n + 4, 1024));
    }

    const PeriodicFunction p_fejer = funcrep::fejer_sum(base, fejer_n);
    PeriodicFunction p_approx = p_fejer;
    if (compensate_fejer) {
        std::vector<Complex> cc(static_cast<std::size_t>(2 * fejer_n + 1));
        for (int k = -fejer_n; k <= fejer_n; ++k) {
            const double w = 1.0 - static_cast<double>(std::abs(k)) / (fejer_n + 1);
            cc[static_cast<std::size_t>(k + fejer_n)] = p_fejer.coeff(k) / w;
        }
        p_approx = PeriodicFunction::from_coeffs(std::move(cc), fejer_n);
    }

    res.decomposition = parity_decompose_trig(p_approx, shifts, DecomposeMode::Irrational);
    const PeriodicFunction& p1 = res.decomposition.p1;
    const PeriodicFunction& p2 = res.decomposition.p2;

    // Chebyshev coefficients of h_j from the even form about theta_j
    auto chebyshev_of = [](const PeriodicFunction& pj, const SymbolicReal& theta) {
        const int K = pj.bandwidth();
        std::vector<Complex> a(static_cast<std::size_t>(K + 1));
        a[0] = pj.coeff(0);
        for (int k = 1; k <= K; ++k)
            a[static_cast<std::size_t>(k)] = 2.0 * pj.coeff(k) * circle_exp(theta, k);
        return a;
    };
    auto clenshaw = [](const std::vector<Complex>& a, double u) {
        Complex b1{0, 0}, b2{0, 0};
        for (std::size_t k = a.size(); k-- > 1;) {
            const Complex b = a[k] + 2.0 * u * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        return a[0] + u * b1 - b2;
    };

    const auto a1 = chebyshev_of(p1, shifts.theta1);
    const auto a2 = chebyshev_of(p2, shifts.theta2);
    IntervalFunction h1 = funcrep::make_interval_function(
        -1.0, 1.0, [a1, clenshaw](double u) { return clenshaw(a1, u); });
    IntervalFunction h2 = funcrep::make_interval_function(
        -1.0, 1.0, [a2, clenshaw](double u) { return clenshaw(a2, u); });

    const auto fam1 = lambda.first_n(stage);
    const auto fam2 = lambda_prime.first_n(stage);
    if (fam1.empty() || fam2.empty()) throw PreconditionError("pipeline: empty family");
    const muntz::MuntzSystem sys1 =
        muntz::MuntzSystem::make({fam1.begin(), fam1.end()}, -1.0, 1.0);
    const muntz::MuntzSystem sys2 =
        muntz::MuntzSystem::make({fam2.begin(), fam2.end()}, -1.0, 1.0);
    const auto appr1 = muntz::best_approx_L2(h1, sys1, QuadratureRule::for_function(h1, 16));
    const auto appr2 = muntz::best_approx_L2(h2, sys2, QuadratureRule::for_function(h2, 16));

    const double t1 = shifts.theta1.value();
    const double t2 = shifts.theta2.value();
    auto pi1 = [f = appr1.approximant, t1](double t) { return f(std::cos(kTwoPi * (t - t1))); };
    auto pi2 = [f = appr2.approximant, t2](double t) { return f(std::cos(kTwoPi * (t - t2))); };
    const PeriodicFunction tgt = target;
    res.approximant = [pi1, pi2](double t) { return pi1(t) + pi2(t); };

    const int M = 4096;
    const auto norm_fejer = periodic_grid_norms(
        [&](double t) { return tgt.value(t) - p_fejer.band_value(t); }, M);
    const auto norm_papprox = periodic_grid_norms(
        [&](double t) { return tgt.value(t) - p_approx.band_value(t); }, M);
    const auto norm_dec = periodic_grid_norms(
        [&](double t) { return p_approx.band_value(t) - p1.band_value(t) - p2.band_value(t); }, M);
    const auto norm_m1 =
        periodic_grid_norms([&](double t) { return p1.band_value(t) - pi1(t); }, M);
    const auto norm_m2 =
        periodic_grid_norms([&](double t) { return p2.band_value(t) - pi2(t); }, M);
    const auto norm_comb = periodic_grid_norms(
        [&](double t) { return tgt.value(t) - pi1(t) - pi2(t); }, M);

    auto push = [&](const std::string& name, const GridNorms& n) {
        res.rows.push_back(PipelineRow{name, n.l1, n.l2, n.sup});
    };
    push("fejer", norm_fejer);
    push(compensate_fejer ? "partial-sum (fejer-compensated)" : "approximation-polynomial",
         norm_papprox);
    push("decomposition", norm_dec);
    push("muntz-1", norm_m1);
    push("muntz-2", norm_m2);
    push("combined", norm_comb);

    res.combined_l1 = norm_comb.l1;
    res.combined_l2 = norm_comb.l2;
    res.combined_sup = norm_comb.sup;
    res.bound_l1 = norm_papprox.l1 + norm_dec.l1 + norm_m1.l1 + norm_m2.l1;
    res.bound_l2 = norm_papprox.l2 + norm_dec.l2 + norm_m1.l2 + norm_m2.l2;
    res.bound_sup = norm_papprox.sup + norm_dec.sup + norm_m1.sup + norm_m2.sup;
    push("triangle-bound", GridNorms{res.bound_l1, res.bound_l2, res.bound_sup});
    return res;
}

AnnihilationDefect two_shift_fourier_annihilation(const PeriodicFunction& f,
                                                  const ShiftPair& shifts) {
    AnnihilationDefect out;
    const int K = f.bandwidth();
    auto defect = [&](const SymbolicReal& theta) {
        double worst = 0.0;
        for (int k = 0; k <= K; ++k) {
            const Complex ph = circle_exp(theta, k);
            worst = std::max(worst, std::abs(ph * f.coeff(k) + std::conj(ph) * f.coeff(-k)));
        }
        return worst;
    };
    out.defect1 = defect(shifts.theta1);
    out.defect2 = defect(shifts.theta2);

    double min_det = 1e300;
    for (int k = 1; k <= K; ++k) {
        double dist;
        if (shifts.difference_symbolic) {
            dist = shifts.difference_symbolic->scaled(2 * k).integer_distance();
        } else {
            const double d = shifts.theta1.value() - shifts.theta2.value();
            const double frac = 2.0 * k * d - std::floor(2.0 * k * d);
            dist = std::min(frac, 1.0 - frac);
        }
        min_det = std::min(min_det, 2.0 * std::sin(std::numbers::pi * dist));
    }
    out.min_determinant = K >= 1 ? min_det : 0.0;
    out.uniqueness_certified =
        shifts.difference_class == DifferenceClass::IrrationalExact && out.min_determinant > 0.0;
    if (out.uniqueness_certified)
        out.note = "irrational exact difference: every 2x2 system on the band is invertible "
                   "(min |det| = " +
                   std::to_string(out.min_determinant) +
                   "), so vanishing defects force all band coefficients to zero";
    else if (shifts.difference_class == DifferenceClass::Rational)
        out.note = "rational difference: resonant harmonics make the systems singular";
    else
        out.note = "float shifts: irrationality cannot be certified from the inputs";
    return out;
}

}  // namespace powerspan::cosinesys

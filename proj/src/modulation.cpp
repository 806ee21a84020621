#include "powerspan/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "powerspan/errors.hpp"
#include "powerspan/muntz.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::modulation {

using funcrep::NormKind;
using funcrep::QuadratureRule;

namespace {

double bisect_level(const psipower::SmoothMap& map, double level, double lo, double hi) {
    double flo = map.psi(lo) - level;
    if (flo == 0.0) return lo;
    if (map.psi(hi) - level == 0.0) return hi;
    const bool lo_neg = flo < 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = map.psi(mid) - level;
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == lo_neg)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ModulatedSystem::ModulatedSystem(const psipower::SmoothMap& psi, std::function<double(double)> phase,
                                 indexsets::LambdaFamily lambda, indexsets::LambdaFamily lambda_prime,
                                 double p, bool default_phase, double alpha_value)
    : psi_(psi), phase_(std::move(phase)), lambda_(std::move(lambda)),
      lambda_prime_(std::move(lambda_prime)), p_(p) {
    const psipower::Injectivity inj = psipower::detect_injectivity(psi_);
    if (inj.injective)
        throw PreconditionError(
            "ModulatedSystem: psi' must change sign at one interior point (map is injective)");
    fold_ = psipower::fold_map(psi_, *inj.fold_point);

    const double va = psi_.psi(psi_.a());
    const double vb = psi_.psi(psi_.b());
    critical_value_ = psi_.psi(fold_.x0);
    maximum_ = critical_value_ > std::max(va, vb);
    j_lo_ = std::min({va, vb, critical_value_});
    j_hi_ = std::max({va, vb, critical_value_});
    left_lo_ = std::min(va, critical_value_);
    left_hi_ = std::max(va, critical_value_);
    right_lo_ = std::min(vb, critical_value_);
    right_hi_ = std::max(vb, critical_value_);
    full_overlap_ = std::abs(va - vb) <= 1e-9 * std::max(1.0, j_hi_ - j_lo_);

    if (default_phase) {
        if (!(std::abs(alpha_value) < 1.0 / psi_.length()))
            throw PreconditionError(
                "ModulatedSystem: phase separation needs |alpha| < 1/(b-a) for the default phase");
    } else {
        // grid separation check away from the critical value
        double min_sep = 1e300;
        const int grid = 512;
        for (int i = 1; i < grid; ++i) {
            const double y = j_lo_ + (j_hi_ - j_lo_) * static_cast<double>(i) / grid;
            if (std::abs(y - critical_value_) < 0.01 * (j_hi_ - j_lo_)) continue;
            if (!in_left_range(y) || !in_right_range(y)) continue;
            const double dphi = phase_(invert_right(y)) - phase_(invert_left(y));
            min_sep = std::min(min_sep, 2.0 * std::abs(std::sin(0.5 * dphi)));
        }
        if (min_sep < 1e-9)
            throw PreconditionError(
                "ModulatedSystem: general phase fails grid separation (|u_- - u_+| < 1e-9)");
    }
}

ModulatedSystem ModulatedSystem::make(const psipower::SmoothMap& psi,
                                      const realnum::SymbolicReal& alpha,
                                      indexsets::LambdaFamily lambda,
                                      indexsets::LambdaFamily lambda_prime, double p) {
    const double a = alpha.value();
    return ModulatedSystem(
        psi, [a](double x) { return a * x; }, std::move(lambda), std::move(lambda_prime), p, true, a);
}

ModulatedSystem ModulatedSystem::with_phase(const psipower::SmoothMap& psi,
                                            std::function<double(double)> phase,
                                            indexsets::LambdaFamily lambda,
                                            indexsets::LambdaFamily lambda_prime, double p) {
    return ModulatedSystem(psi, std::move(phase), std::move(lambda), std::move(lambda_prime), p,
                           false, 0.0);
}

Complex ModulatedSystem::unit_phase(double x) const {
    const double ph = phase_(x);
    return {std::cos(ph), std::sin(ph)};
}

double ModulatedSystem::invert_left(double y) const {
    return bisect_level(psi_, y, psi_.a(), fold_.x0);
}

double ModulatedSystem::invert_right(double y) const {
    return bisect_level(psi_, y, fold_.x0, psi_.b());
}

bool ModulatedSystem::in_left_range(double y) const {
    return y >= left_lo_ && y <= left_hi_;
}

bool ModulatedSystem::in_right_range(double y) const {
    return y >= right_lo_ && y <= right_hi_;
}

double ModulatedSystem::mirror(double x) const {
    const double y = psi_.psi(x);
    if (x < fold_.x0) return invert_right(y);
    return invert_left(y);
}

Complex ModulatedSystem::phase_denominator(double x) const {
    // e^{iA} - e^{iB} = 2 i sin((A-B)/2) e^{i(A+B)/2}
    const double A = phase_(mirror(x));
    const double B = phase_(x);
    const double half_diff = 0.5 * (A - B);
    const double half_sum = 0.5 * (A + B);
    const Complex rot(std::cos(half_sum), std::sin(half_sum));
    return Complex(0.0, 2.0 * std::sin(half_diff)) * rot;
}

BranchTransport branch_transport(const IntervalFunction& f, const ModulatedSystem& sys) {
    const double tol = 1e-12 * std::max(1.0, sys.psi().length());
    if (std::abs(f.a - sys.psi().a()) > tol || std::abs(f.b - sys.psi().b()) > tol)
        throw PreconditionError("branch_transport: f must live on the map's domain");

    auto s = std::make_shared<const ModulatedSystem>(sys);  // the densities own their system
    auto feval = f.eval;

    auto density = [s, feval](double y, bool weighted) -> Complex {
        Complex acc{0.0, 0.0};
        if (s->in_left_range(y)) {
            const double x = s->invert_left(y);
            const double d = std::abs(s->psi().dpsi(x));
            Complex term = feval(x) / d;
            if (weighted) term *= s->unit_phase(x);
            acc += term;
        }
        if (s->in_right_range(y)) {
            const double x = s->invert_right(y);
            const double d = std::abs(s->psi().dpsi(x));
            Complex term = feval(x) / d;
            if (weighted) term *= s->unit_phase(x);
            acc += term;
        }
        return acc;
    };

    BranchTransport out;
    for (int weighted = 0; weighted < 2; ++weighted) {
        IntervalFunction g;
        g.a = sys.j_lo();
        g.b = sys.j_hi();
        g.smoothness = funcrep::Smoothness::IntegrableSingularity;
        g.singularities = {sys.critical_value()};
        // outer endpoints with vanishing psi' also blow up
        const double dscale =
            std::max({std::abs(sys.psi().dpsi(sys.psi().a())), std::abs(sys.psi().dpsi(sys.psi().b())), 1.0});
        if (std::abs(sys.psi().dpsi(sys.psi().a())) < 1e-9 * dscale)
            g.singularities.push_back(sys.psi().psi(sys.psi().a()));
        if (std::abs(sys.psi().dpsi(sys.psi().b())) < 1e-9 * dscale)
            g.singularities.push_back(sys.psi().psi(sys.psi().b()));
        if (!sys.branches_cover_range()) {
            // indicator boundary where one branch stops contributing
            const double va = sys.psi().psi(sys.psi().a());
            const double vb = sys.psi().psi(sys.psi().b());
            const bool max_at_fold = sys.critical_value() == sys.j_hi();
            g.breakpoints.push_back(max_at_fold ? std::max(va, vb) : std::min(va, vb));
        }
        std::sort(g.singularities.begin(), g.singularities.end());
        g.singularities.erase(std::unique(g.singularities.begin(), g.singularities.end()),
                              g.singularities.end());
        const bool w = weighted != 0;
        g.eval = [density, w](double y) { return density(y, w); };
        if (weighted)
            out.g_tilde = std::move(g);
        else
            out.g = std::move(g);
    }

    // certify the moment identities for lambda <= 10 at 1e-9
    std::vector<long long> lambdas;
    for (long long l = 0; l <= 10; ++l) lambdas.push_back(l);
    const QuadratureRule rule_f = QuadratureRule::for_function(f, 16);
    const QuadratureRule rule_g = QuadratureRule::for_function(out.g, 16);
    const QuadratureRule rule_gt = QuadratureRule::for_function(out.g_tilde, 16);
    const auto& map = sys.psi();
    const auto lhs_plain = funcrep::power_moments(
        f, rule_f, [&map](double x) { return map.psi(x); }, lambdas);
    const auto lhs_mod = funcrep::power_moments(
        f, rule_f, [&map](double x) { return map.psi(x); }, lambdas,
        [&sys](double x) { return sys.unit_phase(x); });
    const auto rhs_plain = funcrep::power_moments(out.g, rule_g, {}, lambdas);
    const auto rhs_mod = funcrep::power_moments(out.g_tilde, rule_gt, {}, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double d1 = std::abs(lhs_plain[i] - rhs_plain[i]) / std::max(1.0, std::abs(lhs_plain[i]));
        const double d2 = std::abs(lhs_mod[i] - rhs_mod[i]) / std::max(1.0, std::abs(lhs_mod[i]));
        out.max_moment_defect = std::max({out.max_moment_defect, d1, d2});
    }
    if (out.max_moment_defect > 1e-9)
        throw CertificationError("branch_transport: moment identity defect " +
                                     std::to_string(out.max_moment_defect) + " above 1e-9",
                                 {});
    return out;
}

TwoSystemResiduals two_system_residuals(const IntervalFunction& f, const ModulatedSystem& sys,
                                        long long lambda_cap) {
    if (lambda_cap > 40) throw PreconditionError("two_system_residuals: lambda_cap <= 40");
    const auto l1 = sys.lambda().members_up_to(lambda_cap);
    const auto l2 = sys.lambda_prime().members_up_to(lambda_cap);
    std::vector<long long> lam1(l1.begin(), l1.end()), lam2(l2.begin(), l2.end());

    const QuadratureRule rule = QuadratureRule::for_function(f, 16);
    const auto& map = sys.psi();
    const auto m1 = funcrep::power_moments(
        f, rule, [&map](double x) { return map.psi(x); }, lam1);
    const auto m2 = funcrep::power_moments(
        f, rule, [&map](double x) { return map.psi(x); }, lam2,
        [&sys](double x) { return sys.unit_phase(x); });

    TwoSystemResiduals out;
    for (std::size_t i = 0; i < lam1.size(); ++i) out.lambda_side.emplace_back(lam1[i], m1[i]);
    for (std::size_t i = 0; i < lam2.size(); ++i) out.lambda_prime_side.emplace_back(lam2[i], m2[i]);
    return out;
}

IntervalFunction interval_legendre(int degree, double lo, double hi) {
    if (degree < 0) throw PreconditionError("interval_legendre: degree >= 0");
    if (!(lo < hi)) throw PreconditionError("interval_legendre: lo < hi");
    IntervalFunction f;
    f.a = lo;
    f.b = hi;
    f.eval = [degree, lo, hi](double y) -> Complex {
        const double u = (2.0 * y - lo - hi) / (hi - lo);
        double p0 = 1.0, p1 = u;
        if (degree == 0) return {1.0, 0.0};
        for (int k = 1; k < degree; ++k) {
            const double p2 = ((2.0 * k + 1.0) * u * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        return {p1, 0.0};
    };
    return f;
}

ModulatedAnnihilator build_modulated_annihilator(const ModulatedSystem& sys,
                                                 const IntervalFunction& g,
                                                 const IntervalFunction& g_tilde,
                                                 long long certification_cap) {
    if (!sys.branches_cover_range())
        throw PreconditionError(
            "build_modulated_annihilator: branches must cover the full range (psi(a) != psi(b) "
            "leaves a one-branch region where the system is overdetermined)");

    const QuadratureRule rg = QuadratureRule::for_function(g, 12);
    const QuadratureRule rgt = QuadratureRule::for_function(g_tilde, 12);
    const double n_g = funcrep::norm(g, NormKind::L1, rg);
    const double n_gt = funcrep::norm(g_tilde, NormKind::L1, rgt);
    const double big = std::max(n_g, n_gt);
    const double small = std::min(n_g, n_gt);
    if (big < 1e-12 || small > 1e-10 * std::max(1.0, big))
        throw PreconditionError(
            "build_modulated_annihilator: exactly one of g, g~ must be identically zero");
    const bool g_side = n_g >= n_gt;  // the nonzero input annihilates this side's family
    const indexsets::LambdaFamily& family = g_side ? sys.lambda() : sys.lambda_prime();
    if (!family.is_finite())
        throw PreconditionError(
            "build_modulated_annihilator: converse witnesses exist at finite order only for "
            "explicit finite families");

    // the nonzero side must annihilate its family on J
    {
        const IntervalFunction& active = g_side ? g : g_tilde;
        const auto members = family.first_n(10000);
        std::vector<long long> lambdas(members.begin(), members.end());
        const auto rule = QuadratureRule::for_function(active, 16);
        const auto moments = funcrep::power_moments(active, rule, {}, lambdas);
        const double scale = std::max(1.0, funcrep::norm(active, NormKind::L2, rule));
        for (std::size_t i = 0; i < moments.size(); ++i) {
            if (std::abs(moments[i]) > 1e-10 * scale)
                throw PreconditionError("build_modulated_annihilator: input is not a certified "
                                        "annihilator of its family (lambda=" +
                                        std::to_string(lambdas[i]) + ")");
        }
    }

    auto s = std::make_shared<const ModulatedSystem>(sys);
    auto geval = g.eval;
    auto gteval = g_tilde.eval;
    const double x0 = sys.x0();
    const double jspan = sys.j_hi() - sys.j_lo();
    const double crit = sys.critical_value();

    IntervalFunction f;
    f.a = sys.psi().a();
    f.b = sys.psi().b();
    f.smoothness = funcrep::Smoothness::PiecewiseContinuous;
    f.breakpoints = {x0};
    f.eval = [s, geval, gteval, x0, jspan, crit](double x) -> Complex {
        const double y = s->psi().psi(x);
        const double m = s->mirror(x);
        const Complex u_other = s->unit_phase(m);
        const Complex den = s->phase_denominator(x);  // u_other - u_self
        if (std::abs(den) < 1e-13) {
            if (std::abs(y - crit) > 1e-6 * jspan)
                throw PreconditionError(
                    "build_modulated_annihilator: phase-separation violation away from the "
                    "critical value");
            return {0.0, 0.0};  // removable point exactly at the fold
        }
        const Complex num = u_other * geval(y) - gteval(y);
        return std::abs(s->psi().dpsi(x)) * num / den;
    };

    // certification over both families
    const long long cap = std::max<long long>(certification_cap, [&] {
        const auto members = family.first_n(10000);
        return members.empty() ? 0 : members.back();
    }());
    const auto res = two_system_residuals(f, sys, std::min<long long>(cap, 40));

    ModulatedAnnihilator out;
    out.witness = f;
    const QuadratureRule rf = QuadratureRule::for_function(f, 16);
    out.witness_l1 = funcrep::norm(f, NormKind::L1, rf);
    out.input_l1 = n_g + n_gt;
    const double psisup = std::max(1.0, sys.psi().sup_norm());
    const double tol = 1e-9 * std::max(1.0, out.witness_l1) * funcrep::ipow(psisup, std::min<long long>(cap, 40));
    for (const auto& [l, v] : res.lambda_side) {
        out.lambda_residuals.emplace_back(l, std::abs(v));
        out.max_residual = std::max(out.max_residual, std::abs(v));
    }
    for (const auto& [l, v] : res.lambda_prime_side) {
        out.lambda_prime_residuals.emplace_back(l, std::abs(v));
        out.max_residual = std::max(out.max_residual, std::abs(v));
    }
    if (out.max_residual > tol) {
        std::vector<CertificationError::ResidualTable> tables(2);
        tables[0].label = "lambda side";
        tables[0].rows = out.lambda_residuals;
        tables[1].label = "lambda' side";
        tables[1].rows = out.lambda_prime_residuals;
        throw CertificationError("build_modulated_annihilator: residuals above 1e-9 certification",
                                 std::move(tables));
    }
    if (out.witness_l1 <= 0.01 * out.input_l1)
        throw CertificationError("build_modulated_annihilator: witness is numerically trivial", {});
    return out;
}

SingularityFit singularity_exponent(const ModulatedSystem& sys, double p_prime) {
    // constant phases make the sine factor vanish identically
    const double probe = sys.phase(sys.psi().b()) - sys.phase(sys.psi().a());
    if (std::abs(probe) < 1e-14)
        throw PreconditionError("singularity_exponent: phase is constant (alpha = 0?)");

    SingularityFit fit;
    const double crit = sys.critical_value();
    const double span = sys.j_hi() - sys.j_lo();
    const double into = (crit == sys.j_hi()) ? -1.0 : 1.0;  // step direction into J
    const double s0 = 0.1 * span;
    const double rho = 0.6;
    const int n = 26;

    std::vector<double> logs(static_cast<std::size_t>(n)), logphi(static_cast<std::size_t>(n));
    par::for_each_index(n, [&](std::ptrdiff_t k) {
        const double s = s0 * std::pow(rho, static_cast<double>(k));
        const double t = crit + into * s;
        const double vl = sys.invert_left(t);
        const double vr = sys.invert_right(t);
        const double dl = std::abs(sys.psi().dpsi(vl));
        const double sinf = std::abs(std::sin(0.5 * (sys.phase(vr) - sys.phase(vl))));
        const double phi = std::pow(dl, p_prime - 1.0) / std::pow(sinf, p_prime);
        logs[static_cast<std::size_t>(k)] = std::log(s);
        logphi[static_cast<std::size_t>(k)] = std::log(phi);
    });
    fit.samples.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        fit.samples.emplace_back(std::exp(logs[static_cast<std::size_t>(k)]),
                                 std::exp(logphi[static_cast<std::size_t>(k)]));

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        sx += logs[static_cast<std::size_t>(k)];
        sy += logphi[static_cast<std::size_t>(k)];
        sxx += logs[static_cast<std::size_t>(k)] * logs[static_cast<std::size_t>(k)];
        sxy += logs[static_cast<std::size_t>(k)] * logphi[static_cast<std::size_t>(k)];
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    for (int k = 0; k < n; ++k) {
        const double dev = std::abs(logphi[static_cast<std::size_t>(k)] -
                                    (fit.slope * logs[static_cast<std::size_t>(k)] + intercept));
        fit.fit_residual = std::max(fit.fit_residual, dev);
    }
    if (fit.fit_residual > 0.1)
        throw std::runtime_error("singularity_exponent: log-log fit residual " +
                                 std::to_string(fit.fit_residual) + " above 0.1 (samples attached)");
    return fit;
}

ModulatedDensityReport density_verdict_modulated(const ModulatedSystem& sys) {
    if (!(sys.p() > 1.0))
        throw PreconditionError(
            "density_verdict_modulated: the two-family equivalence needs p in (1, infinity]; "
            "p = 1 is outside its scope");

    ModulatedDensityReport rep;
    rep.j_lo = sys.j_lo();
    rep.j_hi = sys.j_hi();
    rep.verdict_lambda = indexsets::classify_ms(sys.lambda(), sys.j_lo(), sys.j_hi());
    rep.verdict_lambda_prime = indexsets::classify_ms(sys.lambda_prime(), sys.j_lo(), sys.j_hi());
    rep.dense = rep.verdict_lambda.is_ms && rep.verdict_lambda_prime.is_ms;
    if (rep.dense) return rep;

    const bool lambda_fails = !rep.verdict_lambda.is_ms;
    const indexsets::LambdaFamily& failing = lambda_fails ? sys.lambda() : sys.lambda_prime();
    if (failing.is_finite() && sys.branches_cover_range()) {
        const auto members = failing.first_n(10000);
        const int degree = members.empty() ? 1 : static_cast<int>(members.back()) + 1;
        const IntervalFunction leg = interval_legendre(degree, sys.j_lo(), sys.j_hi());
        IntervalFunction zero;
        zero.a = sys.j_lo();
        zero.b = sys.j_hi();
        zero.eval = [](double) { return Complex(0.0, 0.0); };
        if (lambda_fails) {
            rep.witness = build_modulated_annihilator(sys, leg, zero);
            rep.note = "witness annihilates the unmodulated family (g = Legendre, g~ = 0)";
        } else {
            rep.witness = build_modulated_annihilator(sys, zero, leg);
            rep.note = "witness annihilates the modulated family (g = 0, g~ = Legendre)";
        }
    } else {
        rep.note = "no finite-order witness constructed (family infinite or branches do not cover "
                   "the range)";
    }
    return rep;
}

}  // namespace powerspan::modulation

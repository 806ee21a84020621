#include "powerspan/psipower.hpp"

#include <algorithm>
#include <cmath>

#include "powerspan/errors.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::psipower {

using funcrep::Complex;
using funcrep::IntervalFunction;
using funcrep::QuadratureRule;

namespace {

constexpr int kHypothesisGrid = 2048;

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
    double flo = g(lo);
    if (flo == 0.0) return lo;
    const double fhi = g(hi);
    if (fhi == 0.0) return hi;
    const bool lo_neg = flo < 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == lo_neg)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SmoothMap::SmoothMap(double a, double b, std::function<double(double)> psi,
                     std::function<double(double)> dpsi, std::function<double(double)> ddpsi,
                     std::string name)
    : a_(a), b_(b), psi_(std::move(psi)), dpsi_(std::move(dpsi)), ddpsi_(std::move(ddpsi)),
      name_(std::move(name)) {
    if (!(a_ < b_)) throw PreconditionError("SmoothMap: need a < b");

    std::vector<double> d1(kHypothesisGrid + 1), d2(kHypothesisGrid + 1), vals(kHypothesisGrid + 1);
    par::for_each_index(kHypothesisGrid + 1, [&](std::ptrdiff_t i) {
        const double x = a_ + (b_ - a_) * static_cast<double>(i) / kHypothesisGrid;
        d1[static_cast<std::size_t>(i)] = dpsi_(x);
        d2[static_cast<std::size_t>(i)] = ddpsi_(x);
        vals[static_cast<std::size_t>(i)] = std::abs(psi_(x));
    });
    double s1 = 0, s2 = 0;
    for (int i = 0; i <= kHypothesisGrid; ++i) {
        s1 = std::max(s1, std::abs(d1[static_cast<std::size_t>(i)]));
        s2 = std::max(s2, std::abs(d2[static_cast<std::size_t>(i)]));
        sup_norm_ = std::max(sup_norm_, vals[static_cast<std::size_t>(i)]);
    }
    if (s1 == 0.0)
        throw PreconditionError("SmoothMap '" + name_ + "': psi' vanishes identically on the grid");

    const double tol1 = 1e-9 * s1;
    const double tol2 = 1e-9 * std::max(s2, 1e-300);
    for (int i = 0; i <= kHypothesisGrid; ++i) {
        if (std::abs(d1[static_cast<std::size_t>(i)]) <= tol1 &&
            std::abs(d2[static_cast<std::size_t>(i)]) <= tol2) {
            const double x = a_ + (b_ - a_) * static_cast<double>(i) / kHypothesisGrid;
            throw PreconditionError("SmoothMap '" + name_ + "': psi' and psi'' both vanish near x=" +
                                    std::to_string(x));
        }
    }
    // refine sign changes of psi' and check psi'' there
    for (int i = 0; i < kHypothesisGrid; ++i) {
        const double va = d1[static_cast<std::size_t>(i)];
        const double vb = d1[static_cast<std::size_t>(i) + 1];
        if ((va <= 0 && vb > 0) || (va >= 0 && vb < 0)) {
            const double lo = a_ + (b_ - a_) * static_cast<double>(i) / kHypothesisGrid;
            const double hi = a_ + (b_ - a_) * static_cast<double>(i + 1) / kHypothesisGrid;
            const double root = bisect_root(dpsi_, lo, hi);
            if (std::abs(ddpsi_(root)) <= tol2)
                throw PreconditionError("SmoothMap '" + name_ +
                                        "': psi' and psi'' both vanish near x=" + std::to_string(root));
        }
    }
}

Injectivity detect_injectivity(const SmoothMap& psi) {
    const int n = kHypothesisGrid;
    const double a = psi.a(), b = psi.b();
    std::vector<double> d1(static_cast<std::size_t>(n) + 1);
    par::for_each_index(n + 1, [&](std::ptrdiff_t i) {
        d1[static_cast<std::size_t>(i)] = psi.dpsi(a + (b - a) * static_cast<double>(i) / n);
    });

    std::vector<double> roots;
    // interior grid points where psi' is exactly zero (x^2 on [-1,1] lands
    // its critical point on the grid)
    for (int i = 1; i < n; ++i) {
        if (d1[static_cast<std::size_t>(i)] == 0.0)
            roots.push_back(a + (b - a) * static_cast<double>(i) / n);
    }
    for (int i = 0; i < n; ++i) {
        const double va = d1[static_cast<std::size_t>(i)];
        const double vb = d1[static_cast<std::size_t>(i) + 1];
        if (va * vb < 0.0) {
            const double lo = a + (b - a) * static_cast<double>(i) / n;
            const double hi = a + (b - a) * static_cast<double>(i + 1) / n;
            const double root = bisect_root([&](double x) { return psi.dpsi(x); }, lo, hi);
            if (root > a + 1e-13 * (b - a) && root < b - 1e-13 * (b - a)) roots.push_back(root);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double u, double v) { return std::abs(u - v) < 1e-10 * (b - a); }),
                roots.end());

    Injectivity out;
    if (roots.empty()) {
        out.injective = true;
        out.direction = psi.psi(b) > psi.psi(a) ? 1 : -1;
        return out;
    }
    if (roots.size() > 1)
        throw MultiFoldError("detect_injectivity: " + std::to_string(roots.size()) +
                                " interior critical points (single-extremum scope)",
                            roots);
    out.injective = false;
    out.fold_point = roots.front();
    return out;
}

FoldStructure fold_map(const SmoothMap& psi, double x0) {
    const double a = psi.a(), b = psi.b();
    if (!(x0 > a && x0 < b)) throw PreconditionError("fold_map: x0 not interior");

    const double va = psi.psi(a), vb = psi.psi(b), v0 = psi.psi(x0);
    const bool is_max = v0 > std::max(va, vb);
    const bool is_min = v0 < std::min(va, vb);
    if (!is_max && !is_min) throw PreconditionError("fold_map: psi(x0) is not an interior extremum");

    // Maximal branches sharing the range: cut the longer branch at the level
    // of the shorter one.
    double a_prime = a, b_prime = b;
    const double shared_level = is_max ? std::max(va, vb) : std::min(va, vb);
    auto solve_left = [&](double level) {
        return bisect_root([&](double x) { return psi.psi(x) - level; }, a, x0);
    };
    auto solve_right = [&](double level) {
        return bisect_root([&](double x) { return psi.psi(x) - level; }, x0, b);
    };
    if (std::abs(va - shared_level) <= std::abs(vb - shared_level)) {
        a_prime = a;
        b_prime = (vb == shared_level) ? b : solve_right(va);
    } else {
        b_prime = b;
        a_prime = solve_left(vb);
    }

    FoldStructure fold;
    fold.x0 = x0;
    fold.a_prime = a_prime;
    fold.b_prime = b_prime;
    fold.orientation = -1;

    const double bp = b_prime;
    const SmoothMap map = psi;  // captured by value so the fold owns its map
    auto phi = [map, x0, bp](double x) {
        const double level = map.psi(x);
        return bisect_root([&map, level](double u) { return map.psi(u) - level; }, x0, bp);
    };
    fold.phi = phi;
    fold.phi_deriv = [map, phi](double x) {
        const double u = phi(x);
        const double du = map.dpsi(u);
        if (du == 0.0) return -1.0;  // removable at the critical point
        return map.dpsi(x) / du;
    };

    // Certify on a 512-point branch grid. The conjugation defect is measured
    // in level units: in x-units phi is ill-conditioned wherever psi flattens
    // (at the critical point the binary64 plateau of psi is ~sqrt(eps) wide),
    // so x-unit endpoint defects are diagnostics with a sqrt(eps)-scale
    // threshold, not the certified quantity.
    const int g = 512;
    std::vector<double> defect(static_cast<std::size_t>(g) + 1, 0.0);
    std::vector<double> image(static_cast<std::size_t>(g) + 1, 0.0);
    par::for_each_index(g + 1, [&](std::ptrdiff_t i) {
        const double x = a_prime + (x0 - a_prime) * static_cast<double>(i) / g;
        const double u = fold.phi(x);
        image[static_cast<std::size_t>(i)] = u;
        defect[static_cast<std::size_t>(i)] = std::abs(psi.psi(u) - psi.psi(x));
    });
    for (double d : defect) fold.conjugation_defect = std::max(fold.conjugation_defect, d);
    fold.endpoint_defect = std::abs(image.front() - b_prime) + std::abs(image.back() - x0);
    for (int i = 0; i < g; ++i) {
        if (image[static_cast<std::size_t>(i)] < image[static_cast<std::size_t>(i) + 1] - 1e-8 * psi.length())
            throw std::runtime_error("fold_map: phi is not monotone on the branch grid");
    }
    const double scale = std::max(1.0, std::abs(v0) + std::abs(va) + std::abs(vb));
    const double level_defect =
        std::max(std::abs(psi.psi(image.front()) - psi.psi(b_prime)),
                 std::abs(psi.psi(image.back()) - psi.psi(x0)));
    if (fold.conjugation_defect > 1e-12 * scale || level_defect > 1e-12 * scale ||
        fold.endpoint_defect > 1e-6 * psi.length())
        throw std::runtime_error("fold_map: range mismatch beyond tolerance");
    return fold;
}

AnnihilatorResult build_annihilator(const SmoothMap& psi, const FoldStructure& fold,
                                    const IntervalFunction& seed, long long lambda_cap) {
    const double tol_pos = 1e-9 * psi.length();
    if (std::abs(seed.a - fold.x0) > tol_pos || std::abs(seed.b - fold.b_prime) > tol_pos)
        throw PreconditionError("build_annihilator: seed must live on [x0, b']");

    const double a = psi.a(), b = psi.b();
    auto make_candidate = [&](int sign) {
        IntervalFunction f;
        f.a = a;
        f.b = b;
        f.smoothness = funcrep::Smoothness::PiecewiseContinuous;
        f.breakpoints = {fold.a_prime, fold.x0, fold.b_prime};
        const FoldStructure& fd = fold;
        auto seed_eval = seed.eval;
        const double ap = fold.a_prime, x0 = fold.x0, bp = fold.b_prime;
        f.eval = [fd, seed_eval, sign, ap, x0, bp](double x) -> Complex {
            if (x < ap || x > bp) return {0.0, 0.0};
            if (x >= x0) return seed_eval(std::min(x, bp));
            return static_cast<double>(sign) * fd.phi_deriv(x) * seed_eval(fd.phi(x));
        };
        return f;
    };

    std::vector<long long> lambdas(static_cast<std::size_t>(lambda_cap) + 1);
    for (long long l = 0; l <= lambda_cap; ++l) lambdas[static_cast<std::size_t>(l)] = l;

    const double psi_sup = std::max(1.0, psi.sup_norm());
    const double scale_pow = funcrep::ipow(psi_sup, lambda_cap);

    auto measure = [&](const IntervalFunction& f) {
        const QuadratureRule rule = QuadratureRule::for_function(f, 24);
        auto moments = funcrep::power_moments(
            f, rule, [&psi](double x) { return psi.psi(x); }, lambdas);
        std::vector<std::pair<long long, double>> rows;
        rows.reserve(moments.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < moments.size(); ++i) {
            rows.emplace_back(lambdas[i], std::abs(moments[i]));
            worst = std::max(worst, std::abs(moments[i]));
        }
        const double l2 = funcrep::norm(f, funcrep::NormKind::L2, rule);
        return std::tuple<double, double, std::vector<std::pair<long long, double>>>(worst, l2, rows);
    };

    const IntervalFunction plus = make_candidate(+1);
    auto [worst_p, l2_p, rows_p] = measure(plus);
    const QuadratureRule seed_rule = QuadratureRule::for_function(seed, 12);
    const double seed_l2 = funcrep::norm(seed, funcrep::NormKind::L2, seed_rule);

    auto finish = [&](int sign, const IntervalFunction& f, double worst, double l2,
                      std::vector<std::pair<long long, double>> rows,
                      std::vector<std::pair<long long, double>> other) {
        AnnihilatorResult res;
        res.witness = f;
        res.sign = sign;
        res.max_normalized_residual = worst / (std::max(l2, 1e-300) * scale_pow);
        res.residuals = std::move(rows);
        res.rejected_residuals = std::move(other);
        res.witness_l2 = l2;
        res.seed_l2 = seed_l2;
        return res;
    };

    const double threshold_p = 1e-10 * l2_p * scale_pow;
    if (worst_p < threshold_p && l2_p >= 0.1 * seed_l2)
        return finish(+1, plus, worst_p, l2_p, rows_p, {});

    const IntervalFunction minus = make_candidate(-1);
    auto [worst_m, l2_m, rows_m] = measure(minus);
    const double threshold_m = 1e-10 * l2_m * scale_pow;
    if (worst_m < threshold_m && l2_m >= 0.1 * seed_l2)
        return finish(-1, minus, worst_m, l2_m, rows_m, rows_p);

    throw CertificationError(
        "build_annihilator: neither extension sign certifies",
        {CertificationError::ResidualTable{"sign +1", rows_p},
         CertificationError::ResidualTable{"sign -1", rows_m}});
}

DensityReport density_verdict(const SmoothMap& psi, const indexsets::LambdaFamily& family) {
    DensityReport report;
    const Injectivity inj = detect_injectivity(psi);
    report.injective = inj.injective;

    double lo = std::min(psi.psi(psi.a()), psi.psi(psi.b()));
    double hi = std::max(psi.psi(psi.a()), psi.psi(psi.b()));
    if (inj.fold_point) {
        const double v0 = psi.psi(*inj.fold_point);
        lo = std::min(lo, v0);
        hi = std::max(hi, v0);
    }
    report.j_lo = lo;
    report.j_hi = hi;
    report.ms_on_j = indexsets::classify_ms(family, lo, hi);

    if (inj.injective) {
        report.dense = report.ms_on_j.is_ms;
        return report;
    }
    report.dense = false;
    const FoldStructure fold = fold_map(psi, *inj.fold_point);
    funcrep::IntervalFunction seed =
        funcrep::make_interval_function(fold.x0, fold.b_prime, [](double) { return Complex(1.0, 0.0); });
    report.witness = build_annihilator(psi, fold, seed);
    return report;
}

}  // namespace powerspan::psipower

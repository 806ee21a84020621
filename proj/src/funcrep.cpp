#include "powerspan/funcrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powerspan/errors.hpp"
#include "powerspan/parallel.hpp"

namespace powerspan::funcrep {

namespace {

constexpr int kGaussOrder = 16;

struct GaussNodes {
    double x[kGaussOrder];
    double w[kGaussOrder];
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_16.
const GaussNodes& gauss16() {
    static const GaussNodes table = [] {
        GaussNodes t{};
        const int n = kGaussOrder;
        for (int i = 0; i < n; ++i) {
            long double x = cosl(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
            long double p0 = 0, p1 = 0;
            for (int iter = 0; iter < 100; ++iter) {
                p0 = 1.0L;
                p1 = 0.0L;
                for (int k = 0; k < n; ++k) {
                    const long double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
                }
                // p0 = P_n(x), derivative via recurrence
                const long double dp = n * (x * p0 - p1) / (x * x - 1.0L);
                const long double dx = p0 / dp;
                x -= dx;
                if (fabsl(dx) < 1e-19L) break;
            }
            // recompute P_{n-1} for the weight
            p0 = 1.0L;
            p1 = 0.0L;
            for (int k = 0; k < n; ++k) {
                const long double p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
            }
            const long double dp = n * (x * p0 - p1) / (x * x - 1.0L);
            t.x[n - 1 - i] = static_cast<double>(x);
            t.w[n - 1 - i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
        }
        return t;
    }();
    return table;
}

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::vector<double> collect_points(const IntervalFunction& f, const std::vector<double>& extra) {
    std::vector<double> pts;
    for (double s : f.singularities) pts.push_back(s);
    for (double s : f.breakpoints) pts.push_back(s);
    for (double s : extra) pts.push_back(s);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](double u, double v) { return std::abs(u - v) < 1e-13 * f.length(); }),
              pts.end());
    return pts;
}

}  // namespace

IntervalFunction make_interval_function(double a, double b, std::function<Complex(double)> eval) {
    if (!(a < b)) throw PreconditionError("interval function needs a < b");
    IntervalFunction f;
    f.a = a;
    f.b = b;
    f.eval = std::move(eval);
    return f;
}

QuadratureRule QuadratureRule::uniform(double a, double b, int panels) {
    if (!(a < b) || panels < 1) throw PreconditionError("bad uniform rule request");
    std::vector<Panel> ps;
    ps.reserve(static_cast<std::size_t>(panels));
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * i / panels;
        const double hi = (i + 1 == panels) ? b : a + (b - a) * (i + 1) / panels;
        ps.push_back(Panel{lo, hi, Transform::None});
    }
    return from_panels(a, b, std::move(ps));
}

QuadratureRule QuadratureRule::from_panels(double a, double b, std::vector<Panel> panels) {
    QuadratureRule r;
    r.a_ = a;
    r.b_ = b;
    r.panels_ = std::move(panels);
    r.materialize();
    return r;
}

QuadratureRule QuadratureRule::for_function(const IntervalFunction& f, int base_panels) {
    const double len = f.length();
    const double tol = 1e-12 * std::max(1.0, std::abs(f.a) + std::abs(f.b));
    std::vector<double> cuts = collect_points(f, {});
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double s) { return s <= f.a + tol || s >= f.b - tol; }),
               cuts.end());

    auto is_singular = [&](double x) {
        for (double s : f.singularities)
            if (std::abs(s - x) <= 1e-12 * std::max(1.0, len)) return true;
        return false;
    };

    std::vector<double> bounds;
    bounds.push_back(f.a);
    for (double c : cuts) bounds.push_back(c);
    bounds.push_back(f.b);

    std::vector<Panel> panels;
    for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        const double lo = bounds[seg];
        const double hi = bounds[seg + 1];
        const double seg_len = hi - lo;
        int sub = std::max(1, static_cast<int>(std::ceil(base_panels * seg_len / len)));
        const bool sing_lo = is_singular(lo);
        const bool sing_hi = is_singular(hi);
        if ((sing_lo || sing_hi) && sub < 2) sub = 2;
        for (int i = 0; i < sub; ++i) {
            Panel p;
            p.lo = lo + seg_len * i / sub;
            p.hi = (i + 1 == sub) ? hi : lo + seg_len * (i + 1) / sub;
            if (i == 0 && sing_lo) p.transform = Transform::SqrtLower;
            if (i + 1 == sub && sing_hi) p.transform = Transform::SqrtUpper;
            panels.push_back(p);
        }
    }
    return from_panels(f.a, f.b, std::move(panels));
}

void QuadratureRule::materialize() {
    const auto& g = gauss16();
    nodes_.clear();
    weights_.clear();
    nodes_.reserve(panels_.size() * kGaussOrder);
    weights_.reserve(panels_.size() * kGaussOrder);
    for (const Panel& p : panels_) {
        const double len = p.hi - p.lo;
        switch (p.transform) {
            case Transform::None: {
                const double mid = 0.5 * (p.lo + p.hi);
                const double half = 0.5 * len;
                for (int i = 0; i < kGaussOrder; ++i) {
                    nodes_.push_back(mid + half * g.x[i]);
                    weights_.push_back(half * g.w[i]);
                }
                break;
            }
            case Transform::SqrtLower: {
                // u = lo + v^2, v in [0, sqrt(len)]
                const double V = std::sqrt(len);
                for (int i = 0; i < kGaussOrder; ++i) {
                    const double v = 0.5 * V * (g.x[i] + 1.0);
                    nodes_.push_back(p.lo + v * v);
                    weights_.push_back(0.5 * V * g.w[i] * 2.0 * v);
                }
                break;
            }
            case Transform::SqrtUpper: {
                // u = hi - v^2, v in [0, sqrt(len)]; emit in increasing u
                const double V = std::sqrt(len);
                for (int i = kGaussOrder - 1; i >= 0; --i) {
                    const double v = 0.5 * V * (g.x[i] + 1.0);
                    nodes_.push_back(p.hi - v * v);
                    weights_.push_back(0.5 * V * g.w[i] * 2.0 * v);
                }
                break;
            }
        }
    }
}

std::pair<std::size_t, std::size_t> QuadratureRule::panel_nodes(std::size_t i) const {
    return {i * kGaussOrder, (i + 1) * kGaussOrder};
}

QuadratureRule QuadratureRule::halved() const {
    std::vector<Panel> out;
    out.reserve(panels_.size() * 2);
    for (const Panel& p : panels_) {
        const double len = p.hi - p.lo;
        switch (p.transform) {
            case Transform::None: {
                const double mid = p.lo + 0.5 * len;
                out.push_back(Panel{p.lo, mid, Transform::None});
                out.push_back(Panel{mid, p.hi, Transform::None});
                break;
            }
            case Transform::SqrtLower: {
                const double cut = p.lo + 0.25 * len;
                out.push_back(Panel{p.lo, cut, Transform::SqrtLower});
                out.push_back(Panel{cut, p.hi, Transform::None});
                break;
            }
            case Transform::SqrtUpper: {
                const double cut = p.hi - 0.25 * len;
                out.push_back(Panel{p.lo, cut, Transform::None});
                out.push_back(Panel{cut, p.hi, Transform::SqrtUpper});
                break;
            }
        }
    }
    return from_panels(a_, b_, std::move(out));
}

Complex weighted_sum(const QuadratureRule& rule, const std::vector<Complex>& values) {
    if (values.size() != rule.nodes().size())
        throw PreconditionError("weighted_sum: value/node count mismatch");
    const std::size_t np = rule.panel_count();
    std::vector<Complex> partial(np);
    par::for_each_index(static_cast<std::ptrdiff_t>(np), [&](std::ptrdiff_t i) {
        const auto [begin, end] = rule.panel_nodes(static_cast<std::size_t>(i));
        Kahan re, im;
        for (std::size_t j = begin; j < end; ++j) {
            re.add(rule.weights()[j] * values[j].real());
            im.add(rule.weights()[j] * values[j].imag());
        }
        partial[static_cast<std::size_t>(i)] = Complex(re.sum, im.sum);
    });
    Kahan re, im;
    for (const Complex& c : partial) {
        re.add(c.real());
        im.add(c.imag());
    }
    return {re.sum, im.sum};
}

namespace {

Complex integrate_on(const IntervalFunction& f, const QuadratureRule& rule) {
    const auto& nodes = rule.nodes();
    std::vector<Complex> values(nodes.size());
    par::for_each_index(static_cast<std::ptrdiff_t>(nodes.size()),
                        [&](std::ptrdiff_t i) { values[static_cast<std::size_t>(i)] = f.eval(nodes[static_cast<std::size_t>(i)]); });
    return weighted_sum(rule, values);
}

}  // namespace

IntegrationResult integrate(const IntervalFunction& f, const QuadratureRule& rule) {
    const double span = std::max(1.0, f.length());
    if (std::abs(rule.a() - f.a) > 1e-12 * span || std::abs(rule.b() - f.b) > 1e-12 * span)
        throw PreconditionError("integrate: rule does not tile the function domain");
    const Complex coarse = integrate_on(f, rule);
    const Complex fine = integrate_on(f, rule.halved());
    return IntegrationResult{fine, std::abs(fine - coarse)};
}

double norm(const IntervalFunction& f, NormKind p, const QuadratureRule& rule, int grid_size) {
    switch (p) {
        case NormKind::L1: {
            IntervalFunction absf = f;
            auto inner = f.eval;
            absf.eval = [inner](double x) { return Complex(std::abs(inner(x)), 0.0); };
            return integrate(absf, rule).value.real();
        }
        case NormKind::L2: {
            IntervalFunction sq = f;
            auto inner = f.eval;
            sq.eval = [inner](double x) { return Complex(std::norm(inner(x)), 0.0); };
            const double v = integrate(sq, rule).value.real();
            return std::sqrt(std::max(0.0, v));
        }
        case NormKind::Sup: {
            if (grid_size < 64) throw PreconditionError("sup norm needs grid_size >= 64");
            const double tol = 1e-12 * std::max(1.0, f.length());
            std::vector<double> vals(static_cast<std::size_t>(grid_size), 0.0);
            par::for_each_index(grid_size, [&](std::ptrdiff_t i) {
                const double x = f.a + f.length() * static_cast<double>(i) / (grid_size - 1);
                for (double s : f.singularities)
                    if (std::abs(x - s) <= tol) return;
                vals[static_cast<std::size_t>(i)] = std::abs(f.eval(x));
            });
            double m = 0.0;
            for (double v : vals) m = std::max(m, v);
            return m;
        }
    }
    return 0.0;
}

PeriodicFunction PeriodicFunction::from_coeffs(std::vector<Complex> coeffs, int K) {
    if (K < 0 || coeffs.size() != static_cast<std::size_t>(2 * K + 1))
        throw PreconditionError("from_coeffs: need 2K+1 coefficients");
    PeriodicFunction f;
    f.K_ = K;
    f.coeffs_ = std::move(coeffs);
    return f;
}

PeriodicFunction PeriodicFunction::from_coeff_list(
    const std::vector<std::pair<int, Complex>>& entries) {
    int K = 0;
    for (const auto& [k, c] : entries) K = std::max(K, std::abs(k));
    std::vector<Complex> coeffs(static_cast<std::size_t>(2 * K + 1), Complex(0.0, 0.0));
    for (const auto& [k, c] : entries) coeffs[static_cast<std::size_t>(k + K)] += c;
    return from_coeffs(std::move(coeffs), K);
}

Complex PeriodicFunction::coeff(int k) const {
    if (std::abs(k) > K_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(k + K_)];
}

Complex PeriodicFunction::band_value(double t) const {
    // Clenshaw-free direct sum; bandwidths here stay modest.
    const double tp = 2.0 * std::numbers::pi * t;
    Complex acc = coeff(0);
    for (int k = 1; k <= K_; ++k) {
        const Complex e(std::cos(k * tp), std::sin(k * tp));
        acc += coeff(k) * e + coeff(-k) * std::conj(e);
    }
    return acc;
}

Complex PeriodicFunction::value(double t) const {
    if (evaluator_) return evaluator_(t);
    return band_value(t);
}

bool PeriodicFunction::real_valued(double tol) const {
    for (int k = 0; k <= K_; ++k)
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol) return false;
    return true;
}

double PeriodicFunction::l2_norm() const {
    double s = 0.0;
    for (const Complex& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

std::vector<std::pair<int, Complex>> PeriodicFunction::table() const {
    std::vector<std::pair<int, Complex>> out;
    out.reserve(coeffs_.size());
    for (int k = -K_; k <= K_; ++k) out.emplace_back(k, coeff(k));
    return out;
}

PeriodicFunction fourier_coeffs(const std::function<Complex(double)>& f, int K, int M) {
    if (K < 0) throw PreconditionError("fourier_coeffs: K must be >= 0");
    if (M < 4 * K + 4)
        throw PreconditionError("fourier_coeffs: M must be >= 4K+4 (aliasing guard)");

    std::vector<Complex> samples(static_cast<std::size_t>(M));
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        samples[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / M);
    });

    // Unit roots e^{-2 pi i m / M} in long double, indexed mod M.
    std::vector<Complex> roots(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const long double ang = -2.0L * std::numbers::pi_v<long double> * m / M;
        roots[static_cast<std::size_t>(m)] = Complex(static_cast<double>(cosl(ang)),
                                                     static_cast<double>(sinl(ang)));
    }

    std::vector<Complex> coeffs(static_cast<std::size_t>(2 * K + 1));
    par::for_each_index(2 * K + 1, [&](std::ptrdiff_t idx) {
        const int k = static_cast<int>(idx) - K;
        Kahan re, im;
        for (int j = 0; j < M; ++j) {
            const long long m = (static_cast<long long>(k) * j) % M;
            const Complex w = roots[static_cast<std::size_t>(m < 0 ? m + M : m)];
            const Complex term = samples[static_cast<std::size_t>(j)] * w;
            re.add(term.real());
            im.add(term.imag());
        }
        coeffs[static_cast<std::size_t>(idx)] = Complex(re.sum / M, im.sum / M);
    });

    PeriodicFunction out = PeriodicFunction::from_coeffs(std::move(coeffs), K);
    out.evaluator_ = f;

    std::vector<double> dev(static_cast<std::size_t>(M), 0.0);
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        const double t = static_cast<double>(j) / M;
        dev[static_cast<std::size_t>(j)] =
            std::abs(out.band_value(t) - samples[static_cast<std::size_t>(j)]);
    });
    double tol = 0.0;
    for (double d : dev) tol = std::max(tol, d);
    out.evaluator_tol_ = tol;
    return out;
}

PeriodicFunction fejer_sum(const PeriodicFunction& f, int N) {
    if (N < 0) throw PreconditionError("fejer_sum: N must be >= 0");
    std::vector<Complex> coeffs(static_cast<std::size_t>(2 * N + 1), Complex(0.0, 0.0));
    for (int k = -N; k <= N; ++k) {
        const double w = 1.0 - static_cast<double>(std::abs(k)) / (N + 1);
        coeffs[static_cast<std::size_t>(k + N)] = f.coeff(k) * w;
    }
    return PeriodicFunction::from_coeffs(std::move(coeffs), N);
}

std::vector<Complex> power_moments(const IntervalFunction& f, const QuadratureRule& rule,
                                   const std::function<double(double)>& base,
                                   const std::vector<long long>& lambdas,
                                   const std::function<Complex(double)>& extra) {
    const auto& nodes = rule.nodes();
    const auto& weights = rule.weights();
    const std::size_t nn = nodes.size();

    std::vector<Complex> fe(nn);
    std::vector<double> be(nn);
    par::for_each_index(static_cast<std::ptrdiff_t>(nn), [&](std::ptrdiff_t i) {
        const std::size_t j = static_cast<std::size_t>(i);
        Complex v = f.eval(nodes[j]);
        if (extra) v *= extra(nodes[j]);
        fe[j] = v;
        be[j] = base ? base(nodes[j]) : nodes[j];
    });

    std::vector<Complex> out(lambdas.size());
    par::for_each_index(static_cast<std::ptrdiff_t>(lambdas.size()), [&](std::ptrdiff_t li) {
        const long long lambda = lambdas[static_cast<std::size_t>(li)];
        const std::size_t np = rule.panel_count();
        Kahan re, im;
        for (std::size_t p = 0; p < np; ++p) {
            const auto [begin, end] = rule.panel_nodes(p);
            Kahan pre, pim;
            for (std::size_t j = begin; j < end; ++j) {
                const Complex term = weights[j] * fe[j] * ipow(be[j], lambda);
                pre.add(term.real());
                pim.add(term.imag());
            }
            re.add(pre.sum);
            im.add(pim.sum);
        }
        out[static_cast<std::size_t>(li)] = Complex(re.sum, im.sum);
    });
    return out;
}

Complex periodic_integral(const std::function<Complex(double)>& f, int M) {
    if (M < 1) throw PreconditionError("periodic_integral: M must be >= 1");
    std::vector<Complex> samples(static_cast<std::size_t>(M));
    par::for_each_index(M, [&](std::ptrdiff_t j) {
        samples[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / M);
    });
    Kahan re, im;
    for (const Complex& c : samples) {
        re.add(c.real());
        im.add(c.imag());
    }
    return Complex(re.sum / M, im.sum / M);
}

}  // namespace powerspan::funcrep

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace powerspan::funcrep {

using Complex = std::complex<double>;

enum class Smoothness { Continuous, PiecewiseContinuous, IntegrableSingularity };

/**
 * Real/complex function on a bounded interval [a, b] with quadrature
 * metadata. `singularities` lists points where the value blows up but stays
 * integrable (rules place square-root substitution panels there);
 * `breakpoints` lists finite jumps or kinks (rules place panel boundaries
 * there). Both lists are finite and may include the endpoints.
 */
struct IntervalFunction {
    double a = 0.0;
    double b = 1.0;
    std::function<Complex(double)> eval;
    Smoothness smoothness = Smoothness::Continuous;
    std::vector<double> singularities;
    std::vector<double> breakpoints;

    Complex operator()(double x) const { return eval(x); }
    double length() const { return b - a; }
};

IntervalFunction make_interval_function(double a, double b, std::function<Complex(double)> eval);

/**
 * Composite Gauss-Legendre rule, order 16 per panel. Panels tile the domain;
 * panels adjacent to a declared singular point use the substitution
 * u = s +- v^2, which turns an integrable inverse-square-root endpoint into
 * a smooth integrand. Node and weight arrays are materialized once; weights
 * are positive and sum to the interval length.
 */
class QuadratureRule {
public:
    enum class Transform { None, SqrtLower, SqrtUpper };

    struct Panel {
        double lo;
        double hi;
        Transform transform = Transform::None;
    };

    // Rule adapted to f's declared structure.
    static QuadratureRule for_function(const IntervalFunction& f, int base_panels = 12);
    static QuadratureRule uniform(double a, double b, int panels);
    static QuadratureRule from_panels(double a, double b, std::vector<Panel> panels);

    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t panel_count() const { return panels_.size(); }
    const std::vector<Panel>& panels() const { return panels_; }
    // node index range [begin, end) of panel i, for ordered reductions
    std::pair<std::size_t, std::size_t> panel_nodes(std::size_t i) const;

    // Every panel split in two; used for the one-halving error estimate.
    QuadratureRule halved() const;

private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<Panel> panels_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    void materialize();
};

struct IntegrationResult {
    Complex value;
    double error_estimate = 0.0;
};

/**
 * Integral of f over its domain. Summation is deterministic: left-to-right
 * over panels with compensated summation, panel sums computed independently
 * (and possibly in parallel) beforehand. The error estimate comes from one
 * panel-halving comparison.
 */
IntegrationResult integrate(const IntervalFunction& f, const QuadratureRule& rule);

/// Same nodes, caller-supplied integrand values; the kernel under both
/// integrate() and the moment evaluators.
Complex weighted_sum(const QuadratureRule& rule, const std::vector<Complex>& values);

enum class NormKind { L1, L2, Sup };

/**
 * L1/L2 via the quadrature rule; Sup as a max over an equispaced grid of
 * grid_size points including endpoints (a lower bound on the true sup).
 * Grid points within 1e-12*(b-a) of a declared singularity are skipped.
 */
double norm(const IntervalFunction& f, NormKind p, const QuadratureRule& rule,
            int grid_size = 1025);

/**
 * 1-periodic function as a finite table of Fourier coefficients
 * c_k = int_0^1 f(t) e^{-2 pi i k t} dt for |k| <= K, plus an optional
 * evaluator for non-bandlimited functions. When an evaluator is present the
 * declared tolerance is the measured max deviation between the evaluator
 * and the coefficient table on the construction grid.
 */
class PeriodicFunction {
public:
    PeriodicFunction() : coeffs_(1, Complex(0.0, 0.0)) {}

    static PeriodicFunction from_coeffs(std::vector<Complex> coeffs_by_k_plus_K, int K);
    static PeriodicFunction from_coeff_list(const std::vector<std::pair<int, Complex>>& entries);

    int bandwidth() const { return K_; }
    Complex coeff(int k) const;
    Complex value(double t) const;  // evaluator when present, else the trig sum
    Complex band_value(double t) const;  // always the trig sum

    bool has_evaluator() const { return static_cast<bool>(evaluator_); }
    double evaluator_tolerance() const { return evaluator_tol_; }
    bool real_valued(double tol = 1e-12) const;

    double l2_norm() const;  // Plancherel over the stored band
    std::vector<std::pair<int, Complex>> table() const;

    friend PeriodicFunction fourier_coeffs(const std::function<Complex(double)>& f, int K, int M);

private:
    int K_ = 0;
    std::vector<Complex> coeffs_;  // index k + K_
    std::function<Complex(double)> evaluator_;
    double evaluator_tol_ = 0.0;
};

/**
 * Trapezoidal (equispaced) discrete Fourier coefficients of a 1-periodic
 * evaluator: exact to roundoff for trigonometric polynomials of degree <= K.
 * Requires M >= 4K + 4 as an aliasing guard.
 */
PeriodicFunction fourier_coeffs(const std::function<Complex(double)>& f, int K, int M);

/// Fejer (Cesaro) sum: coefficients c_k (1 - |k|/(N+1)) for |k| <= N.
PeriodicFunction fejer_sum(const PeriodicFunction& f, int N);

/// int_0^1 f(t) g(t) dt for 1-periodic integrands via the M-point trapezoid
/// rule (spectrally accurate for smooth periodic integrands).
Complex periodic_integral(const std::function<Complex(double)>& f, int M);

/// x^n by binary exponentiation; deterministic across platforms/thread
/// counts, unlike std::pow for integer exponents.
inline double ipow(double x, long long n) {
    double acc = 1.0;
    double base = x;
    for (long long e = n; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

/**
 * moments[j] = int f(x) base(x)^{lambda_j} extra(x) dx over f's domain.
 * f, base, extra are evaluated once per node; each exponent is then an
 * independent ordered panel reduction (the data-parallel kernel behind all
 * moment/residual families).
 */
std::vector<Complex> power_moments(const IntervalFunction& f, const QuadratureRule& rule,
                                   const std::function<double(double)>& base,
                                   const std::vector<long long>& lambdas,
                                   const std::function<Complex(double)>& extra = {});

}  // namespace powerspan::funcrep

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "powerspan/funcrep.hpp"
#include "powerspan/indexsets.hpp"

namespace powerspan::psipower {

/**
 * C^2 map psi: [a,b] -> R with evaluators for psi, psi', psi''. The
 * constructor enforces the standing hypothesis that psi' and psi'' never
 * vanish simultaneously, checked on a 2048-point grid with sign-change
 * refinement; maps like x^3 near 0 are rejected here.
 */
class SmoothMap {
public:
    SmoothMap(double a, double b, std::function<double(double)> psi,
              std::function<double(double)> dpsi, std::function<double(double)> ddpsi,
              std::string name = "psi");

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    double psi(double x) const { return psi_(x); }
    double dpsi(double x) const { return dpsi_(x); }
    double ddpsi(double x) const { return ddpsi_(x); }
    const std::string& name() const { return name_; }
    double sup_norm() const { return sup_norm_; }  // grid sup of |psi|

private:
    double a_, b_;
    std::function<double(double)> psi_, dpsi_, ddpsi_;
    std::string name_;
    double sup_norm_ = 0.0;
};

struct Injectivity {
    bool injective = true;
    int direction = 1;                  // +1 increasing, -1 decreasing (injective case)
    std::optional<double> fold_point;   // the single interior critical point
};

/// Locates interior zeros of psi' by sign-change bisection (to 1e-13 of the
/// interval). Throws MultiFoldError listing all critical points when there
/// is more than one.
Injectivity detect_injectivity(const SmoothMap& psi);

/**
 * Branch-exchange map phi around the critical point: phi: [a',x0] -> [x0,b'],
 * strictly monotone, with psi(phi(x)) = psi(x). Branch endpoints are maximal
 * subject to both branches sharing the range of psi.
 */
struct FoldStructure {
    double x0 = 0.0;
    double a_prime = 0.0;
    double b_prime = 0.0;
    int orientation = -1;  // sign of phi'
    std::function<double(double)> phi;
    std::function<double(double)> phi_deriv;  // psi'(x) / psi'(phi(x))
    double conjugation_defect = 0.0;          // max |psi(phi(x)) - psi(x)| on a 512 grid
    double endpoint_defect = 0.0;             // |phi(a')-b'| + |phi(x0)-x0|
};

FoldStructure fold_map(const SmoothMap& psi, double x0);

struct AnnihilatorResult {
    funcrep::IntervalFunction witness;  // on [a,b], zero outside [a',b']
    int sign = 1;                       // extension sign that certified
    double max_normalized_residual = 0.0;
    std::vector<std::pair<long long, double>> residuals;           // certified sign
    std::vector<std::pair<long long, double>> rejected_residuals;  // the other sign
    double witness_l2 = 0.0;
    double seed_l2 = 0.0;
};

/**
 * Extends the seed (given on [x0, b']) across the fold by
 * f(x) = s phi'(x) seed(phi(x)) on [a', x0), zero outside [a', b'], with the
 * sign s in {+1, -1} selected by certification: the returned witness has
 * max_{lambda<=cap} |int f psi^lambda| < 1e-10 ||f||_2 max(1,||psi||_sup)^cap,
 * or a CertificationError with both residual tables is thrown.
 */
AnnihilatorResult build_annihilator(const SmoothMap& psi, const FoldStructure& fold,
                                    const funcrep::IntervalFunction& seed, long long lambda_cap = 20);

struct DensityReport {
    bool injective = false;
    double j_lo = 0.0, j_hi = 0.0;  // J = psi([a,b])
    indexsets::MSVerdict ms_on_j;
    bool dense = false;
    std::optional<AnnihilatorResult> witness;  // attached when non-injective
};

/// Proposition-level verdict: dense iff psi injective and the family is a
/// J-Muntz-Szasz sequence. Non-injective maps get a certified annihilator
/// witness; families failing the MS test carry the verdict reason only.
DensityReport density_verdict(const SmoothMap& psi, const indexsets::LambdaFamily& family);

}  // namespace powerspan::psipower

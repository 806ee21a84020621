#include "powerspan/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "powerspan/cosinesys.hpp"
#include "powerspan/errors.hpp"
#include "powerspan/hup.hpp"
#include "powerspan/modulation.hpp"
#include "powerspan/muntz.hpp"
#include "powerspan/psipower.hpp"
#include "powerspan/realnum.hpp"

namespace powerspan::runner {

namespace {

using config::Config;
using config::ConfigError;
using funcrep::Complex;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class OutputFile {
public:
    OutputFile(const std::string& out_dir, const std::string& name, const std::string& subcommand,
               const Config& cfg) {
        std::filesystem::create_directories(out_dir);
        path_ = out_dir + "/" + name;
        out_.open(path_);
        if (!out_) throw std::runtime_error("cannot open output file " + path_);
        out_ << "# powerspan " << subcommand << "\n";
        for (const auto& [k, v] : cfg.entries()) out_ << "# " << k << " = " << v << "\n";
        out_ << "# end-config\n";
    }

    std::ofstream& stream() { return out_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
};

realnum::SymbolicReal symbolic_or(const Config& cfg, const std::string& key,
                                  const std::string& fallback) {
    return cfg.has(key) ? cfg.get_symbolic(key) : realnum::SymbolicReal::parse(fallback);
}

// ---------------------------------------------------------------- classify

int run_classify(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known({"family", "interval", "seed"});
    const auto family = cfg.get_family("family");
    const auto [ia, ib] = cfg.get_interval("interval");
    const auto verdict = indexsets::classify_ms(family, ia.value(), ib.value());

    OutputFile file(out, "classify.csv", "classify", cfg);
    file.stream() << "family,interval_case,is_ms,reason\n";
    file.stream() << family.str() << "," << indexsets::to_string(verdict.interval_case) << ","
                  << (verdict.is_ms ? "yes" : "no") << "," << indexsets::to_string(verdict.reason)
                  << "\n";
    std::cout << "classify: " << family.str() << " on [" << ia.str() << "," << ib.str() << "] -> "
              << (verdict.is_ms ? "yes" : "no") << " (" << indexsets::to_string(verdict.reason)
              << ", " << indexsets::to_string(verdict.interval_case) << ")\n";
    if (verbose) std::cout << "wrote " << file.path() << "\n";
    return kExitOk;
}

// ------------------------------------------------------------- diophantine

int run_diophantine(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known({"action", "theta", "theta2", "depth", "a", "C", "n_max", "K", "seed"});
    const std::string action = cfg.get_or("action", "cf");

    if (action == "cf") {
        const auto theta = cfg.get_symbolic("theta");
        const auto depth = static_cast<std::size_t>(cfg.get_int_or("depth", 16));
        const auto cf = realnum::continued_fraction(theta, depth);
        const auto conv = realnum::convergents(cf);
        OutputFile file(out, "continued_fraction.csv", "diophantine", cfg);
        file.stream() << "k,a_k,p_k,q_k\n";
        for (std::size_t k = 0; k < cf.partial_quotients.size(); ++k)
            file.stream() << k << "," << cf.partial_quotients[k] << "," << conv[k].num << ","
                          << conv[k].den << "\n";
        std::cout << "diophantine cf: " << cf.partial_quotients.size() << " quotients"
                  << (cf.period ? " (periodic, length " + std::to_string(cf.period->quotients.size()) + ")"
                                : "")
                  << (cf.exact_input ? "" : " [inexact float input]") << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action == "witnesses") {
        const auto theta = cfg.get_symbolic("theta");
        const auto scan = realnum::approximability_witnesses(
            theta, cfg.get_double("a"), cfg.get_double("C"), cfg.get_int("n_max"));
        OutputFile file(out, "witnesses.csv", "diophantine", cfg);
        file.stream() << "m,n,abs_m_minus_n_theta\n";
        for (const auto& p : scan.pairs)
            file.stream() << p.m << "," << p.n << ","
                          << fmt(std::abs(p.m - p.n * theta.value())) << "\n";
        std::cout << "diophantine witnesses: " << scan.pairs.size() << " pairs"
                  << (scan.exact_arithmetic ? " (exact comparisons)" : " (float comparisons)")
                  << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action == "mindist") {
        const auto theta = cfg.get_symbolic("theta");
        const auto K = cfg.get_int_or("K", 12);
        OutputFile file(out, "mindist.csv", "diophantine", cfg);
        file.stream() << "k,dist_2k_theta\n";
        for (long long k = 1; k <= K; ++k)
            file.stream() << k << "," << fmt(theta.scaled(2 * k).integer_distance()) << "\n";
        const auto best = realnum::min_half_integer_distance(theta, K);
        std::cout << "diophantine mindist: k_min=" << best.k_min << " value=" << fmt(best.value)
                  << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action == "ratdiff") {
        const auto t1 = cfg.get_symbolic("theta");
        const auto t2 = cfg.get_symbolic("theta2");
        const auto rd = realnum::rational_difference(t1, t2);
        OutputFile file(out, "ratdiff.csv", "diophantine", cfg);
        file.stream() << "rational,m,n,exact_inputs\n";
        if (rd.value)
            file.stream() << "yes," << rd.value->num << "," << rd.value->den << ","
                          << (rd.exact_inputs ? "yes" : "no") << "\n";
        else
            file.stream() << "no,,," << (rd.exact_inputs ? "yes" : "no") << "\n";
        std::cout << "diophantine ratdiff: "
                  << (rd.value ? std::to_string(rd.value->num) + "/" + std::to_string(rd.value->den)
                               : std::string("not rational"))
                  << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    throw ConfigError("unknown diophantine action '" + action + "'", 0, 0);
}

// ------------------------------------------------------------------ approx

int run_approx(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known({"function", "interval", "family", "stages", "seed"});
    const auto [ia, ib] = cfg.get_interval("interval");
    const auto f = config::make_interval_builtin(cfg.get("function"), ia.value(), ib.value());
    const auto family = cfg.get_family("family");
    const auto stages = static_cast<std::size_t>(cfg.get_int_or("stages", 8));

    const auto curve = muntz::error_curve(f, family, stages);
    OutputFile file(out, "error_curve.csv", "approx", cfg);
    file.stream() << "# verdict: " << (curve.verdict.is_ms ? "ms" : "not-ms") << " ("
                  << indexsets::to_string(curve.verdict.reason) << ", "
                  << indexsets::to_string(curve.verdict.interval_case) << ")\n";
    file.stream() << "stage_size,error_l2\n";
    for (const auto& [k, e] : curve.stages) file.stream() << k << "," << fmt(e) << "\n";

    // final-stage coefficient table per the ApproxResult serialization
    const muntz::MuntzSystem system =
        muntz::MuntzSystem::make({curve.exponents_used.begin(), curve.exponents_used.end()},
                                 ia.value(), ib.value());
    const auto res =
        muntz::best_approx_L2(f, system, funcrep::QuadratureRule::for_function(f, 16));
    OutputFile coeffs(out, "approx.csv", "approx", cfg);
    coeffs.stream() << "exponent,coeff_re,coeff_im\n";
    for (const auto& [lam, c] : res.coefficients)
        coeffs.stream() << lam << "," << fmt(c.real()) << "," << fmt(c.imag()) << "\n";
    coeffs.stream() << "# error_l2," << fmt(res.error_l2) << "\n";
    coeffs.stream() << "# error_sup_grid," << fmt(res.error_sup_grid) << "\n";
    coeffs.stream() << "# residual_orthogonality," << fmt(res.residual_orthogonality) << "\n";
    coeffs.stream() << "# gram_condition_estimate," << fmt(res.gram_condition_estimate)
                    << (res.gram_condition_warning ? " (warning: above 1e12)" : "") << "\n";

    std::cout << "approx: " << curve.stages.size() << " stages, final error_l2 = "
              << fmt(curve.stages.back().second) << "\n";
    if (verbose) std::cout << "wrote " << file.path() << " and " << coeffs.path() << "\n";
    return kExitOk;
}

// --------------------------------------------------------------------- psi

int run_psi(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known({"psi", "psi_interval", "family", "seed"});
    const auto [ia, ib] = cfg.get_interval("psi_interval");
    const auto map = config::make_psi_builtin(cfg.get("psi"), ia.value(), ib.value());
    const auto family = cfg.get_family("family");

    const auto report = psipower::density_verdict(map, family);
    OutputFile file(out, "psi_verdict.txt", "psi", cfg);
    file.stream() << "psi: " << map.name() << " on [" << fmt(map.a()) << ", " << fmt(map.b())
                  << "]\n";
    file.stream() << "injective: " << (report.injective ? "yes" : "no") << "\n";
    file.stream() << "range: [" << fmt(report.j_lo) << ", " << fmt(report.j_hi) << "]\n";
    file.stream() << "ms_on_range: " << (report.ms_on_j.is_ms ? "yes" : "no") << " ("
                  << indexsets::to_string(report.ms_on_j.reason) << ", "
                  << indexsets::to_string(report.ms_on_j.interval_case) << ")\n";
    file.stream() << "dense: " << (report.dense ? "yes" : "no") << "\n";
    if (report.witness) {
        file.stream() << "witness: certified annihilator, sign " << report.witness->sign
                      << ", max normalized residual "
                      << fmt(report.witness->max_normalized_residual) << ", L2 "
                      << fmt(report.witness->witness_l2) << "\n";
        OutputFile wf(out, "psi_witness.csv", "psi", cfg);
        wf.stream() << "x,f_re,f_im\n";
        const auto& w = report.witness->witness;
        for (int i = 0; i < 1024; ++i) {
            const double x = w.a + (w.b - w.a) * i / 1023.0;
            const Complex v = w.eval(x);
            wf.stream() << fmt(x) << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
        }
        if (verbose) std::cout << "wrote " << wf.path() << "\n";
    }
    std::cout << "psi: dense=" << (report.dense ? "yes" : "no")
              << " injective=" << (report.injective ? "yes" : "no") << "\n";
    if (verbose) std::cout << "wrote " << file.path() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- modulate

int run_modulate(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known(
        {"action", "psi", "psi_interval", "alpha", "family", "family2", "p", "pprime", "seed"});
    const auto [ia, ib] = cfg.get_interval("psi_interval");
    const auto map = config::make_psi_builtin(cfg.get("psi"), ia.value(), ib.value());
    const auto alpha = symbolic_or(cfg, "alpha", "1/4");
    const auto lambda = cfg.get_family("family");
    const auto lambda2 = cfg.has("family2") ? cfg.get_family("family2") : lambda;
    const double p = cfg.get_double_or("p", 2.0);
    const auto sys = modulation::ModulatedSystem::make(map, alpha, lambda, lambda2, p);
    const std::string action = cfg.get_or("action", "verdict");

    if (action == "exponent") {
        const double pprime = cfg.get_double_or("pprime", 2.0);
        const auto fit = modulation::singularity_exponent(sys, pprime);
        OutputFile file(out, "singularity_exponent.csv", "modulate", cfg);
        file.stream() << "# slope," << fmt(fit.slope) << "\n";
        file.stream() << "# fit_residual," << fmt(fit.fit_residual) << "\n";
        file.stream() << "separation,phi\n";
        for (const auto& [s, phi] : fit.samples)
            file.stream() << fmt(s) << "," << fmt(phi) << "\n";
        std::cout << "modulate exponent: slope = " << fmt(fit.slope) << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action != "verdict")
        throw ConfigError("unknown modulate action '" + action + "'", 0, 0);

    const auto rep = modulation::density_verdict_modulated(sys);
    OutputFile file(out, "modulate_verdict.txt", "modulate", cfg);
    file.stream() << "range: [" << fmt(rep.j_lo) << ", " << fmt(rep.j_hi) << "]\n";
    file.stream() << "lambda: " << (rep.verdict_lambda.is_ms ? "ms" : "not-ms") << " ("
                  << indexsets::to_string(rep.verdict_lambda.reason) << ")\n";
    file.stream() << "lambda': " << (rep.verdict_lambda_prime.is_ms ? "ms" : "not-ms") << " ("
                  << indexsets::to_string(rep.verdict_lambda_prime.reason) << ")\n";
    file.stream() << "dense: " << (rep.dense ? "yes" : "no") << "\n";
    if (!rep.note.empty()) file.stream() << "note: " << rep.note << "\n";
    if (rep.witness) {
        OutputFile rf(out, "modulate_residuals.csv", "modulate", cfg);
        rf.stream() << "lambda,residual_lambda_side,residual_lambda_prime_side\n";
        const std::size_t rows =
            std::max(rep.witness->lambda_residuals.size(), rep.witness->lambda_prime_residuals.size());
        for (std::size_t i = 0; i < rows; ++i) {
            rf.stream() << (i < rep.witness->lambda_residuals.size()
                                ? std::to_string(rep.witness->lambda_residuals[i].first)
                                : "");
            rf.stream() << ","
                        << (i < rep.witness->lambda_residuals.size()
                                ? fmt(rep.witness->lambda_residuals[i].second)
                                : "");
            rf.stream() << ","
                        << (i < rep.witness->lambda_prime_residuals.size()
                                ? fmt(rep.witness->lambda_prime_residuals[i].second)
                                : "")
                        << "\n";
        }
        if (verbose) std::cout << "wrote " << rf.path() << "\n";
    }
    std::cout << "modulate: dense=" << (rep.dense ? "yes" : "no") << "\n";
    if (verbose) std::cout << "wrote " << file.path() << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ cosine

void write_periodic_csv(OutputFile& file, const funcrep::PeriodicFunction& f) {
    file.stream() << "k,c_re,c_im\n";
    for (const auto& [k, c] : f.table())
        file.stream() << k << "," << fmt(c.real()) << "," << fmt(c.imag()) << "\n";
}

int run_cosine(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known({"action", "target", "theta1", "theta2", "mode", "fejer_degree", "stage",
                       "family", "family2", "compensate", "cap", "seed"});
    const std::string action = cfg.get_or("action", "pipeline");
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 0));

    if (action == "decompose") {
        const auto shifts = cosinesys::ShiftPair::make(cfg.get_symbolic("theta1"),
                                                       cfg.get_symbolic("theta2"));
        const auto target = config::make_periodic_builtin(cfg.get("target"), seed);
        const auto mode = cfg.get_or("mode", "irrational") == "rational"
                              ? cosinesys::DecomposeMode::RationalCapped
                              : cosinesys::DecomposeMode::Irrational;
        const auto dec = cosinesys::parity_decompose_trig(target, shifts, mode);
        OutputFile f1(out, "decompose_p1.csv", "cosine", cfg);
        write_periodic_csv(f1, dec.p1);
        OutputFile f2(out, "decompose_p2.csv", "cosine", cfg);
        write_periodic_csv(f2, dec.p2);
        OutputFile sum(out, "decompose_summary.csv", "cosine", cfg);
        sum.stream() << "reconstruction_defect,symmetry_defect_1,symmetry_defect_2,"
                        "smallest_denominator,float_caveat\n";
        sum.stream() << fmt(dec.reconstruction_defect) << "," << fmt(dec.symmetry_defect_1) << ","
                     << fmt(dec.symmetry_defect_2) << "," << fmt(dec.smallest_denominator) << ","
                     << (dec.float_caveat ? "yes" : "no") << "\n";
        std::cout << "cosine decompose: reconstruction defect " << fmt(dec.reconstruction_defect)
                  << "\n";
        if (verbose)
            std::cout << "wrote " << f1.path() << ", " << f2.path() << ", " << sum.path() << "\n";
        return kExitOk;
    }
    if (action == "counterexample") {
        const auto shifts = cosinesys::ShiftPair::make(cfg.get_symbolic("theta1"),
                                                       cfg.get_symbolic("theta2"));
        const auto ce = cosinesys::rational_counterexample(shifts, nullptr);
        OutputFile file(out, "counterexample.csv", "cosine", cfg);
        write_periodic_csv(file, ce.witness);
        file.stream() << "# max_residual_theta1," << fmt(ce.max_residual_theta1) << "\n";
        file.stream() << "# max_residual_theta2," << fmt(ce.max_residual_theta2) << "\n";
        std::cout << "cosine counterexample: period 1/" << ce.period_n << ", residuals "
                  << fmt(std::max(ce.max_residual_theta1, ce.max_residual_theta2)) << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action == "residuals") {
        const auto theta = cfg.get_symbolic("theta1");
        const auto target = config::make_periodic_builtin(cfg.get("target"), seed);
        const auto family = cfg.get_family("family");
        const auto res =
            cosinesys::one_shift_residuals(target, theta, family, cfg.get_int_or("cap", 20));
        OutputFile file(out, "one_shift_residuals.csv", "cosine", cfg);
        file.stream() << "lambda,residual_re,residual_im\n";
        for (const auto& [l, v] : res.residuals)
            file.stream() << l << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
        file.stream() << "# symmetry_defect," << fmt(res.symmetry_defect) << "\n";
        std::cout << "cosine residuals: symmetry defect " << fmt(res.symmetry_defect) << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action != "pipeline") throw ConfigError("unknown cosine action '" + action + "'", 0, 0);

    const auto shifts =
        cosinesys::ShiftPair::make(symbolic_or(cfg, "theta1", "0"), cfg.get_symbolic("theta2"));
    const auto target = config::make_periodic_builtin(cfg.get("target"), seed);
    const auto lambda = cfg.get_family("family");
    const auto lambda2 = cfg.has("family2") ? cfg.get_family("family2") : lambda;
    const auto res = cosinesys::constructive_density_approx(
        target, shifts, lambda, lambda2, static_cast<int>(cfg.get_int_or("fejer_degree", 32)),
        static_cast<std::size_t>(cfg.get_int_or("stage", 12)), cfg.get_int_or("compensate", 1) != 0);

    OutputFile file(out, "pipeline_ledger.csv", "cosine", cfg);
    file.stream() << "stage,description,L1,L2,sup_grid\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i)
        file.stream() << i << "," << res.rows[i].stage << "," << fmt(res.rows[i].l1) << ","
                      << fmt(res.rows[i].l2) << "," << fmt(res.rows[i].sup) << "\n";
    file.stream() << "# theory_convergent," << (res.theory_convergent ? "yes" : "no") << "\n";
    std::cout << "cosine pipeline: combined L2 = " << fmt(res.combined_l2)
              << " (bound " << fmt(res.bound_l2) << ")\n";
    if (verbose) std::cout << "wrote " << file.path() << "\n";
    return kExitOk;
}

// --------------------------------------------------------------------- hup

int run_hup(const Config& cfg, const std::string& out, bool verbose) {
    cfg.require_known(
        {"action", "theta1", "theta2", "theta", "function", "r_max", "r_step", "lambda_cap",
         "band", "seed"});
    const std::string action = cfg.get_or("action", "verdict");
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int_or("seed", 0));

    if (action == "restriction") {
        const auto theta = cfg.get_symbolic("theta");
        const hup::CircleMeasure mu{config::make_periodic_builtin(cfg.get("function"), seed)};
        std::vector<double> grid;
        const double rmax = cfg.get_double_or("r_max", 3.0);
        const double rstep = cfg.get_double_or("r_step", 0.1);
        for (double r = 0.0; r <= rmax + 1e-12; r += rstep) grid.push_back(r);
        const auto lr = hup::line_restriction(mu, theta, grid);
        OutputFile file(out, "line_restriction.csv", "hup", cfg);
        file.stream() << "r,value_re,value_im\n";
        for (std::size_t i = 0; i < lr.r.size(); ++i)
            file.stream() << fmt(lr.r[i]) << "," << fmt(lr.values[i].real()) << ","
                          << fmt(lr.values[i].imag()) << "\n";
        file.stream() << "# max_modulus," << fmt(lr.max_modulus) << "\n";
        std::cout << "hup restriction: max modulus " << fmt(lr.max_modulus) << "\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action == "moments") {
        const auto theta = cfg.get_symbolic("theta");
        const hup::CircleMeasure mu{config::make_periodic_builtin(cfg.get("function"), seed)};
        const auto rows = hup::moment_derivative_check(mu, theta, cfg.get_int_or("lambda_cap", 4));
        OutputFile file(out, "moment_check.csv", "hup", cfg);
        file.stream() << "lambda,fd_re,fd_im,moment_re,moment_im,discrepancy\n";
        for (const auto& r : rows)
            file.stream() << r.lambda << "," << fmt(r.finite_difference.real()) << ","
                          << fmt(r.finite_difference.imag()) << "," << fmt(r.moment_side.real())
                          << "," << fmt(r.moment_side.imag()) << "," << fmt(r.discrepancy) << "\n";
        std::cout << "hup moments: " << rows.size() << " rows\n";
        if (verbose) std::cout << "wrote " << file.path() << "\n";
        return kExitOk;
    }
    if (action != "verdict") throw ConfigError("unknown hup action '" + action + "'", 0, 0);

    const auto t1 = cfg.get_symbolic("theta1");
    const auto t2 = cfg.get_symbolic("theta2");
    const auto rep = hup::hup_verdict(t1, t2, static_cast<int>(cfg.get_int_or("band", 64)));
    OutputFile file(out, "hup_verdict.txt", "hup", cfg);
    const char* verdict_name = rep.verdict == hup::HupVerdictKind::Hup
                                   ? "uniqueness-pair"
                                   : (rep.verdict == hup::HupVerdictKind::NotHup
                                          ? "not-a-uniqueness-pair"
                                          : "indeterminate");
    file.stream() << "verdict: " << verdict_name << "\n";
    file.stream() << "note: " << rep.note << "\n";
    if (rep.witness) {
        file.stream() << "witness_max_line_modulus: " << fmt(rep.witness_max_line_modulus) << "\n";
        OutputFile wf(out, "hup_witness.csv", "hup", cfg);
        write_periodic_csv(wf, rep.witness->witness);
        if (verbose) std::cout << "wrote " << wf.path() << "\n";
    }
    std::cout << "hup: " << verdict_name << "\n";
    if (verbose) std::cout << "wrote " << file.path() << "\n";
    return kExitOk;
}

}  // namespace

config::Config parse_echo_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::ostringstream cfg_text;
    bool in_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("# powerspan ", 0) == 0) {
            in_header = true;
            continue;
        }
        if (line == "# end-config") break;
        if (in_header && line.rfind("# ", 0) == 0) cfg_text << line.substr(2) << "\n";
    }
    return config::Config::parse_text(cfg_text.str());
}

int run(const std::string& subcommand, const config::Config& cfg, const std::string& out_dir,
        bool verbose) {
    try {
        if (subcommand == "classify") return run_classify(cfg, out_dir, verbose);
        if (subcommand == "diophantine") return run_diophantine(cfg, out_dir, verbose);
        if (subcommand == "approx") return run_approx(cfg, out_dir, verbose);
        if (subcommand == "psi") return run_psi(cfg, out_dir, verbose);
        if (subcommand == "modulate") return run_modulate(cfg, out_dir, verbose);
        if (subcommand == "cosine") return run_cosine(cfg, out_dir, verbose);
        if (subcommand == "hup") return run_hup(cfg, out_dir, verbose);
        std::cerr << "unknown subcommand '" << subcommand << "'\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        for (const auto& table : e.residual_tables) {
            std::cerr << "  " << table.label << ":\n";
            for (const auto& [l, r] : table.rows)
                std::cerr << "    lambda " << l << ": " << fmt(r) << "\n";
        }
        return kExitCertification;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    }
}

}  // namespace powerspan::runner

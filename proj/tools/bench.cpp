// Times the data-parallel kernels against the serial reference path and
// verifies that both produce bit-identical results (independent output
// slots, ordered reductions).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <vector>

#include "powerspan/cosinesys.hpp"
#include "powerspan/funcrep.hpp"
#include "powerspan/parallel.hpp"
#include "powerspan/realnum.hpp"

using powerspan::funcrep::Complex;
namespace par = powerspan::par;

namespace {

double seconds(const std::function<void()>& body, int repeats) {
    body();  // warm caches and thread pool
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / repeats;
}

bool bits_equal(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

struct Row {
    const char* name;
    double serial;
    double parallel;
    bool identical;
};

}  // namespace

int main() {
    using namespace powerspan;
    const double PI = std::numbers::pi;
    std::vector<Row> rows;

    {  // per-exponent moment family over a refined rule
        auto f = funcrep::make_interval_function(
            0.0, 1.0, [PI](double t) { return Complex(std::exp(std::sin(2 * PI * t)), 0.0); });
        const auto rule = funcrep::QuadratureRule::uniform(0.0, 1.0, 256);
        std::vector<long long> lambdas;
        for (long long l = 0; l <= 40; ++l) lambdas.push_back(l);
        auto base = [PI](double t) { return std::cos(PI * t); };
        std::vector<Complex> serial_out, parallel_out;
        par::set_enabled(false);
        const double ts = seconds(
            [&] { serial_out = funcrep::power_moments(f, rule, base, lambdas); }, 10);
        par::set_enabled(true);
        const double tp = seconds(
            [&] { parallel_out = funcrep::power_moments(f, rule, base, lambdas); }, 10);
        rows.push_back({"moment family (41 exponents, 4096 nodes)", ts, tp,
                        bits_equal(serial_out, parallel_out)});
    }

    {  // discrete Fourier coefficients
        auto eval = [PI](double t) { return Complex(std::exp(std::sin(2 * PI * t)), 0.0); };
        funcrep::PeriodicFunction serial_out, parallel_out;
        par::set_enabled(false);
        const double ts = seconds([&] { serial_out = funcrep::fourier_coeffs(eval, 256, 4096); }, 10);
        par::set_enabled(true);
        const double tp =
            seconds([&] { parallel_out = funcrep::fourier_coeffs(eval, 256, 4096); }, 10);
        bool same = true;
        for (int k = -256; k <= 256; ++k)
            same = same && serial_out.coeff(k) == parallel_out.coeff(k);
        rows.push_back({"fourier_coeffs (K=256, M=4096)", ts, tp, same});
    }

    {  // parity decomposition across a wide band
        std::vector<std::pair<int, Complex>> entries;
        for (int k = 1; k <= 2048; ++k) {
            const double re = std::cos(0.37 * k), im = std::sin(0.61 * k);
            entries.emplace_back(k, Complex(re, im) / double(k));
            entries.emplace_back(-k, Complex(re, -im) / double(k));
        }
        const auto p = funcrep::PeriodicFunction::from_coeff_list(entries);
        const auto shifts = cosinesys::ShiftPair::make(realnum::SymbolicReal::rational(0, 1),
                                                       realnum::SymbolicReal::surd(0, 1, 2, 2));
        cosinesys::ParityDecomposition serial_out, parallel_out;
        par::set_enabled(false);
        const double ts = seconds([&] { serial_out = cosinesys::parity_decompose_trig(p, shifts); }, 10);
        par::set_enabled(true);
        const double tp =
            seconds([&] { parallel_out = cosinesys::parity_decompose_trig(p, shifts); }, 10);
        bool same = true;
        for (int k = -2048; k <= 2048; ++k)
            same = same && serial_out.p1.coeff(k) == parallel_out.p1.coeff(k) &&
                   serial_out.p2.coeff(k) == parallel_out.p2.coeff(k);
        rows.push_back({"parity decomposition (band 2048)", ts, tp, same});
    }

    {  // exact-arithmetic witness scan
        const auto theta = realnum::SymbolicReal::surd(0, 1, 2, 1);
        realnum::WitnessScan serial_out, parallel_out;
        par::set_enabled(false);
        const double ts = seconds(
            [&] { serial_out = realnum::approximability_witnesses(theta, 1.0, 1.0, 20000); }, 10);
        par::set_enabled(true);
        const double tp = seconds(
            [&] { parallel_out = realnum::approximability_witnesses(theta, 1.0, 1.0, 20000); }, 10);
        rows.push_back({"witness scan (exact, n <= 20000)", ts, tp,
                        serial_out.pairs == parallel_out.pairs});
    }

    par::set_enabled(true);
    std::printf("%-45s %10s %10s %8s %s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
                "bit-identical");
    for (const Row& r : rows)
        std::printf("%-45s %10.4f %10.4f %7.2fx %s\n", r.name, r.serial, r.parallel,
                    r.serial / r.parallel, r.identical ? "yes" : "NO");
    std::printf("threads: %d\n", par::max_threads());

    for (const Row& r : rows)
        if (!r.identical) return 1;
    return 0;
}

#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace powerspan::par {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Defaults to parallel when compiled with OpenMP; POWERSPAN_SERIAL=1 in the
// environment forces the serial path for a whole run.
bool enabled();
void set_enabled(bool on);
int max_threads();

// Parallel index map. body(i) must be independent across i and write only
// to its own output slot; any floating-point reduction happens serially
// afterwards over the stored slots, so results are bit-identical to the
// serial reference regardless of thread count. Exceptions cannot cross an
// OpenMP region, so the lowest-index one is captured and rethrown after the
// join (the same exception the serial path would surface first).
template <class Body>
void for_each_index(std::ptrdiff_t n, Body&& body) {
    if (n <= 0) return;
#ifdef _OPENMP
    if (enabled() && n > 1) {
        std::exception_ptr error;
        std::ptrdiff_t error_index = n;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(powerspan_par_error)
                {
                    if (i < error_index) {
                        error_index = i;
                        error = std::current_exception();
                    }
                }
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

// Serial reference for the same contract; kept separate so tests and the
// benchmark can compare the two paths directly.
template <class Body>
void for_each_index_serial(std::ptrdiff_t n, Body&& body) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace powerspan::par

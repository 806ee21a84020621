#include "powerspan/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace powerspan::par {

namespace {

bool initial_enabled() {
#ifdef _OPENMP
    const char* env = std::getenv("POWERSPAN_SERIAL");
    if (env != nullptr && std::strcmp(env, "0") != 0) return false;
    return true;
#else
    return false;
#endif
}

std::atomic<bool>& flag() {
    static std::atomic<bool> value{initial_enabled()};
    return value;
}

}  // namespace

bool enabled() { return flag().load(std::memory_order_relaxed); }

void set_enabled(bool on) {
#ifndef _OPENMP
    on = false;
#endif
    flag().store(on, std::memory_order_relaxed);
}

int max_threads() {
#ifdef _OPENMP
    return enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

}  // namespace powerspan::par

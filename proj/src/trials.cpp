#include "ssco/trials.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>

#include <omp.h>

namespace ssco {

int oracle_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SSCO_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

std::int64_t serial_first_failure(std::int64_t count, const TrialBody& body) {
    for (std::int64_t i = 0; i < count; ++i)
        if (body(i)) return i;
    return -1;
}

std::int64_t parallel_first_failure(std::int64_t count, const TrialBody& body, int threads) {
    const int nt = oracle_threads(threads);
    if (nt <= 1 || count <= 1) return serial_first_failure(count, body);
    std::atomic<std::int64_t> best{count};
    std::exception_ptr error;
    std::mutex error_lock;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (std::int64_t i = 0; i < count; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) continue;
        bool failed = false;
        try {
            failed = body(i);
        } catch (...) {
            std::lock_guard<std::mutex> guard(error_lock);
            if (!error) error = std::current_exception();
        }
        if (failed) {
            std::int64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    if (error) std::rethrow_exception(error);
    const std::int64_t b = best.load();
    return b == count ? -1 : b;
}

} // namespace ssco

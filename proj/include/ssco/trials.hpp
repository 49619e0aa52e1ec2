#pragma once

#include <cstdint>
#include <functional>

namespace ssco {

/// A trial body: returns true when trial i fails.
using TrialBody = std::function<bool(std::int64_t i)>;

/// Thread count for oracle kernels: the request if positive, else SSCO_THREADS,
/// else the OpenMP default.
int oracle_threads(int requested = 0);

/// Smallest failing trial index in [0, count), or -1. Plain loop; reference kernel.
std::int64_t serial_first_failure(std::int64_t count, const TrialBody& body);

/// Same result as serial_first_failure, computed with OpenMP. Workers skip
/// indices above the best failure found so far, so the lowest index wins.
std::int64_t parallel_first_failure(std::int64_t count, const TrialBody& body, int threads = 0);

} // namespace ssco

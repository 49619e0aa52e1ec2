#include <doctest.h>

#include <cstdlib>
#include <stdexcept>

#include "ssco/trials.hpp"

using namespace ssco;

TEST_CASE("parallel first failure matches the serial kernel") {
    for (std::int64_t count : {0, 1, 7, 100, 1000}) {
        for (std::int64_t stride : {3, 17, 97, 5000}) {
            const TrialBody body = [stride](std::int64_t i) { return i > 0 && i % stride == 0; };
            const std::int64_t serial = serial_first_failure(count, body);
            for (int threads : {1, 2, 4}) CHECK(parallel_first_failure(count, body, threads) == serial);
        }
    }
}

TEST_CASE("the lowest failing index wins even when later trials fail first") {
    const TrialBody body = [](std::int64_t i) { return i == 5 || i >= 40; };
    CHECK(parallel_first_failure(200, body, 4) == 5);
}

TEST_CASE("trial exceptions propagate") {
    const TrialBody body = [](std::int64_t i) -> bool {
        if (i == 3) throw std::runtime_error("boom");
        return false;
    };
    CHECK_THROWS_AS(parallel_first_failure(10, body, 2), std::runtime_error);
    CHECK_THROWS_AS(serial_first_failure(10, body), std::runtime_error);
}

TEST_CASE("thread count honours the request, then SSCO_THREADS") {
    CHECK(oracle_threads(3) == 3);
    setenv("SSCO_THREADS", "2", 1);
    CHECK(oracle_threads(0) == 2);
    setenv("SSCO_THREADS", "junk", 1);
    CHECK(oracle_threads(0) >= 1);
    unsetenv("SSCO_THREADS");
    CHECK(oracle_threads(0) >= 1);
}

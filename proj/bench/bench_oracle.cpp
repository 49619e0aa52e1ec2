#include <benchmark/benchmark.h>

#include "ssco/io.hpp"
#include "ssco/oracle.hpp"
#include "ssco/placement.hpp"
#include "ssco/realization.hpp"
#include "ssco/trials.hpp"

using namespace ssco;

namespace {

struct FiveBus {
    PencilPattern pencil;
    Pattern b;
    FiveBus() {
        pencil = {load_pattern_file(SSCO_FIXTURES "/five_bus/E.txt"), load_pattern_file(SSCO_FIXTURES "/five_bus/A.txt")};
        b = materialize_inputs(place_actuators(pencil, {}).best, pencil.n());
    }
};

const FiveBus& five_bus() {
    static const FiveBus f;
    return f;
}

/// One trial: sample a realization of the five-bus design; fails when it is not R-controllable.
bool uncontrollable_trial(std::int64_t i) {
    const FiveBus& f = five_bus();
    const auto seed = static_cast<std::uint64_t>(i);
    const Eigen::MatrixXd e = sample_realization(f.pencil.e, derive_seed(seed, 0));
    const Eigen::MatrixXd a = sample_realization(f.pencil.a, derive_seed(seed, 1));
    const Eigen::MatrixXd b = sample_realization(f.b, derive_seed(seed, 2));
    if (!is_regular_pencil(e, a)) return false;
    return !r_controllable(e, a, b);
}

void BM_TrialsSerial(benchmark::State& state) {
    five_bus();
    for (auto _ : state) benchmark::DoNotOptimize(serial_first_failure(state.range(0), uncontrollable_trial));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialsSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TrialsParallel(benchmark::State& state) {
    five_bus();
    for (auto _ : state) benchmark::DoNotOptimize(parallel_first_failure(state.range(0), uncontrollable_trial));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = oracle_threads();
}
BENCHMARK(BM_TrialsParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_FalsifyFiveBus(benchmark::State& state) {
    OracleConfig cfg;
    cfg.trials = 64;
    cfg.adversarial_attempts = 16;
    cfg.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(falsify_sssc(five_bus().pencil, five_bus().b, cfg).outcome);
}
BENCHMARK(BM_FalsifyFiveBus)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles/brute_force.hpp"
#include "ssco/errors.hpp"
#include "ssco/io.hpp"
#include "ssco/placement.hpp"

using namespace ssco;

namespace {

PencilPattern five_bus() {
    return {load_pattern_file(SSCO_FIXTURES "/five_bus/E.txt"), load_pattern_file(SSCO_FIXTURES "/five_bus/A.txt")};
}

StairOptions five_bus_order() {
    const Json j = Json::parse(read_file(SSCO_FIXTURES "/five_bus/order.json"));
    StairOptions o;
    for (int r : j["rows"]) o.row_priority.push_back(r - 1);
    for (int c : j["cols"]) o.col_priority.push_back(c - 1);
    return o;
}

std::vector<int> one_based(std::vector<int> v) {
    for (int& x : v) ++x;
    return v;
}

PencilPattern random_pencil(int n, std::mt19937_64& rng) {
    Pattern e(n, n);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int i = 0; i < n; ++i) e(i, i) = coin(rng) == 0 ? Entry::Zero : Entry::Nonzero;
    return {e, oracle::random_pattern(n, n, rng)};
}

} // namespace

TEST_CASE("five-bus actuation alternatives under the printed order") {
    PlacementOptions o;
    o.scope = FormScope::Pinned;
    o.stair = five_bus_order();
    const PlacementResult r = place_actuators(five_bus(), o);
    std::set<std::vector<int>> got;
    for (const auto& a : r.alternatives) got.insert(one_based(a.base));
    const std::set<std::vector<int>> expected{{12, 14, 16}, {13, 14, 16}, {12, 15, 16}, {13, 15, 16}};
    CHECK(got == expected);
    CHECK_FALSE(r.unique);
    CHECK(r.best.cost == doctest::Approx(3.0));
}

TEST_CASE("five-bus sensing is unique") {
    const PlacementResult r = place_sensors(five_bus(), {});
    CHECK(one_based(r.best.base) == std::vector<int>{2, 5, 8});
    CHECK(r.unique);
}

TEST_CASE("five-bus resilient placement with a monotone cost") {
    const CostMatrix wb = load_cost(SSCO_FIXTURES "/five_bus/wb_monotone.csv");
    PlacementOptions o;
    o.k = 1;
    o.scope = FormScope::Pinned;
    o.stair = five_bus_order();
    o.cost = wb;
    const DedicatedSolution a = place_actuators(five_bus(), o).best;
    std::vector<int> sorted = one_based(a.indices);
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{12, 12, 14, 14, 16, 16});
    CHECK(a.indices.size() == 6);

    PlacementOptions so;
    so.k = 1;
    std::vector<int> sensed = one_based(place_sensors(five_bus(), so).best.indices);
    std::sort(sensed.begin(), sensed.end());
    CHECK(sensed == std::vector<int>{2, 2, 5, 5, 8, 8});
}

TEST_CASE("minimum-cost actuation matches subset enumeration") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(1.0, 1.25);
    for (int t = 0; t < 300; ++t) {
        const int n = 2 + t % 3;
        const PencilPattern pencil = random_pencil(n, rng);
        Eigen::MatrixXd w(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w(i, j) = u(rng);
        PlacementOptions o;
        o.cost.weights = w;
        const PlacementResult r = place_actuators(pencil, o);
        std::vector<std::vector<int>> argmin;
        const double expected = oracle::min_ramp_actuators(oracle::lambda_pattern(pencil.e, pencil.a), w, &argmin);
        CHECK_MESSAGE(r.best.cost == doctest::Approx(expected).epsilon(1e-12),
                      serialize_pattern(pencil.e) << serialize_pattern(pencil.a));
        CHECK(std::find(argmin.begin(), argmin.end(), r.best.base) != argmin.end());
        CHECK(sssc_check(pencil, dedicated_columns(n, r.best.indices)) == Certificate::Certified);
    }
}

TEST_CASE("sensing is actuation of the transposed pencil") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 4;
        const PencilPattern pencil = random_pencil(n, rng);
        const DedicatedSolution s = resilient_sensors(pencil, 0);
        const DedicatedSolution a = resilient_actuators(pencil.transpose(), 0);
        CHECK(s.base == a.base);
        CHECK(resilient_actuators(pencil, 0).base.size() == s.base.size());
        const Pattern c = oracle::random_pattern(1 + t % 3, n, rng);
        CHECK(ssso_check(pencil, c) == sssc_check(pencil.transpose(), c.transpose()));
    }
}

TEST_CASE("resilient solutions survive every deletion of up to k columns") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 3;
        const int k = 1 + t % 2;
        const PencilPattern pencil = random_pencil(n, rng);
        const DedicatedSolution a = resilient_actuators(pencil, k);
        const int p = static_cast<int>(a.indices.size());
        CHECK(p == (k + 1) * static_cast<int>(a.base.size()));
        for (std::uint32_t mask = 0; mask < (1U << p); ++mask) {
            if (__builtin_popcount(mask) > k) continue;
            std::vector<int> kept;
            for (int j = 0; j < p; ++j)
                if (!(mask >> j & 1)) kept.push_back(a.indices[j]);
            const Pattern b = dedicated_columns(n, kept);
            CHECK(sssc_check(pencil, b) == Certificate::Certified);
            CHECK(oracle::is_ramp(Pattern::hcat(oracle::lambda_pattern(pencil.e, pencil.a), b)));
        }
    }
}

TEST_CASE("materialized inputs place one nonzero per effective column") {
    const DedicatedSolution a = resilient_actuators({Pattern(3, 3), Pattern(3, 3, Entry::Free)}, 1);
    const Pattern b = materialize_inputs(a, 3);
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 6);
    CHECK(b.count(Entry::Nonzero) == static_cast<int>(a.indices.size()));
    const Pattern c = materialize_outputs(resilient_sensors({Pattern(3, 3), Pattern(3, 3, Entry::Free)}, 1), 3);
    CHECK(c.rows() == 6);
    CHECK(c.cols() == 3);
}

TEST_CASE("cost matrices must match the frame") {
    const PencilPattern pencil{Pattern::identity(3), Pattern(3, 3, Entry::Free)};
    PlacementOptions o;
    o.k = 1;
    o.cost.weights = Eigen::MatrixXd::Ones(3, 3);
    CHECK_THROWS_AS(place_actuators(pencil, o), CostDimensionError);
    o.cost.weights = Eigen::MatrixXd::Ones(6, 3);
    CHECK_NOTHROW(place_sensors(pencil, o));
    CHECK_THROWS_AS(place_actuators(pencil, o), CostDimensionError);
    o.cost.weights = -Eigen::MatrixXd::Ones(3, 6);
    CHECK_THROWS_AS(place_actuators(pencil, o), Error);
}

TEST_CASE("placement cost reads the slot of every copy") {
    CostMatrix w;
    w.weights = Eigen::MatrixXd(2, 4);
    w.weights << 1, 2, 3, 4, 10, 20, 30, 40;
    CHECK(placement_cost(SolutionKind::Actuation, {0, 1, 0, 1}, w) == 1 + 20 + 3 + 40);
    CostMatrix c;
    c.weights = w.weights.transpose();
    CHECK(placement_cost(SolutionKind::Sensing, {0, 1, 0, 1}, c) == 1 + 20 + 3 + 40);
}

#include <doctest.h>

#include <random>
#include <set>

#include "oracles/brute_force.hpp"
#include "ssco/codesign.hpp"
#include "ssco/errors.hpp"
#include "ssco/io.hpp"
#include "ssco/matching.hpp"

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

} // namespace

TEST_CASE("five-bus codesign pairs the printed index-mates") {
    CodesignOptions o;
    o.k = 1;
    o.scope = FormScope::Pinned;
    o.stair = five_bus_order();
    o.wb = load_cost(SSCO_FIXTURES "/five_bus/wb_monotone.csv");
    const CodesignResult r = codesign(five_bus(), o);
    std::set<std::pair<int, int>> channels;
    for (auto [a, s] : r.info.channels) channels.emplace(a + 1, s + 1);
    const std::set<std::pair<int, int>> expected{{1, 2}, {4, 5}, {2, 3}, {5, 6}, {3, 1}, {6, 4}};
    CHECK(channels == expected);
    CHECK(r.info.p == 6);
    CHECK(r.info.m == 6);
    CHECK(r.total_cost == doctest::Approx(design_cost(r, o.wb, o.wc, o.wk)));
    CHECK(necessary_conditions(five_bus(), materialize_inputs(r.actuation, 16), materialize_outputs(r.sensing, 16))
              .holds());
}

TEST_CASE("solutions from different pivot collections cannot be paired") {
    const PencilPattern pencil = five_bus();
    const StairForm form = stair_decompose(lambda_pattern(pencil), StairMode::Exhaustive, five_bus_order());
    PivotChoiceEnumerator en(form);
    std::vector<Pivot> first, second;
    REQUIRE(en.next(first));
    REQUIRE(en.next(second));
    StairForm f1 = apply_pivots(form, first);
    StairForm f2 = apply_pivots(form, second);
    DedicatedSolution act = dedicated_actuators(f1, first);
    DedicatedSolution other = dedicated_actuators(f2, second);
    DedicatedSolution sen;
    sen.kind = SolutionKind::Sensing;
    sen.form = f2;
    sen.pivots = second;
    sen.base = other.base;
    CHECK_THROWS_AS(index_mates(f1, act, sen), MismatchedPivotChoice);

    DedicatedSolution foreign = sen;
    foreign.form = stair_decompose(Pattern::identity(16), StairMode::Exhaustive);
    CHECK_THROWS_AS(index_mates(f1, act, foreign), MismatchedPivotChoice);
}

TEST_CASE("a pattern without pivots needs a channel per state") {
    Pattern e(2, 2);
    e(0, 0) = e(1, 1) = Entry::Nonzero;
    const PencilPattern pencil{e, Pattern(2, 2, Entry::Free)};
    const CodesignResult r = codesign(pencil, {});
    CHECK(r.actuation.base == std::vector<int>{0, 1});
    CHECK(r.sensing.base == std::vector<int>{0, 1});
    CHECK(r.info.channels.size() == 2);
    CHECK(r.total_cost == doctest::Approx(6.0));
}

TEST_CASE("a fully pivoted pattern needs nothing") {
    const PencilPattern pencil{Pattern(4, 4), Pattern::identity(4)};
    const CodesignResult r = codesign(pencil, {});
    CHECK(r.actuation.indices.empty());
    CHECK(r.sensing.indices.empty());
    CHECK(r.info.channels.empty());
    CHECK(r.total_cost == 0.0);
}

TEST_CASE("codesign cost is the cost of the materialized design") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(1.0, 3.0);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 3;
        const int k = t % 2;
        const int frame = (k + 1) * n;
        PencilPattern pencil{Pattern(n, n), oracle::random_pattern(n, n, rng)};
        for (int i = 0; i < n; ++i) pencil.e(i, i) = t % 3 ? Entry::Nonzero : Entry::Zero;
        CodesignOptions o;
        o.k = k;
        o.wb.weights = Eigen::MatrixXd::NullaryExpr(n, frame, [&] { return u(rng); });
        o.wc.weights = Eigen::MatrixXd::NullaryExpr(frame, n, [&] { return u(rng); });
        o.wk.weights = Eigen::MatrixXd::NullaryExpr(frame, frame, [&] { return u(rng); });
        const CodesignResult r = codesign(pencil, o);
        CHECK(r.total_cost == doctest::Approx(design_cost(r, o.wb, o.wc, o.wk)));
        CHECK(r.actuation.indices.size() == r.sensing.indices.size());
        CHECK(static_cast<int>(r.info.channels.size()) == r.info.p);
        // Every actuator and every sensor carries exactly one channel.
        std::set<int> acts, sens;
        for (auto [a, s] : r.info.channels) {
            CHECK(acts.insert(a).second);
            CHECK(sens.insert(s).second);
        }
        const NecessaryConditions nc =
            necessary_conditions(pencil, materialize_inputs(r.actuation, n), materialize_outputs(r.sensing, n));
        CHECK(nc.holds());
    }
}

TEST_CASE("channel cost matrices must match the frame") {
    CodesignOptions o;
    o.k = 1;
    o.wk.weights = Eigen::MatrixXd::Ones(3, 3);
    CHECK_THROWS_AS(codesign({Pattern::identity(3), Pattern(3, 3, Entry::Free)}, o), CostDimensionError);
}

TEST_CASE("assignment solvers agree with permutation search") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> d(0, 4);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 5;
        Eigen::MatrixXd c(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c(i, j) = d(rng);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = 1e300;
        std::vector<int> best_perm;
        do {
            double s = 0;
            for (int i = 0; i < n; ++i) s += c(i, perm[i]);
            if (s < best - 1e-12) {
                best = s;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<int> a;
        CHECK(min_cost_assignment(c, a) == doctest::Approx(best));
        CHECK(lexicographic_min_assignment(c, a) == doctest::Approx(best));
        CHECK(a == best_perm);
    }
}

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "oracles/brute_force.hpp"
#include "ssco/form_search.hpp"
#include "ssco/io.hpp"
#include "ssco/pattern.hpp"
#include "ssco/placement.hpp"
#include "ssco/stair.hpp"

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

int pivot_count(const StairForm& s) { return static_cast<int>(normalize_steps(s).second.size()); }

/// Some realization on a small grid has all columns proportional (rank at most one).
bool rank_one_on_grid(const Pattern& d) {
    const int cells = d.rows() * d.cols();
    std::vector<std::vector<double>> choices(cells);
    for (int i = 0; i < cells; ++i) {
        const Entry e = d(i / d.cols(), i % d.cols());
        if (e == Entry::Zero) choices[i] = {0.0};
        else if (e == Entry::Nonzero) choices[i] = {-1.0, 1.0, 2.0};
        else choices[i] = {-1.0, 0.0, 1.0, 2.0};
    }
    std::vector<std::size_t> idx(cells, 0);
    for (;;) {
        bool rank_one = true;
        auto v = [&](int r, int c) { return choices[r * d.cols() + c][idx[r * d.cols() + c]]; };
        for (int r1 = 0; r1 < d.rows() && rank_one; ++r1)
            for (int r2 = r1 + 1; r2 < d.rows() && rank_one; ++r2)
                for (int c1 = 0; c1 < d.cols() && rank_one; ++c1)
                    for (int c2 = c1 + 1; c2 < d.cols() && rank_one; ++c2)
                        if (v(r1, c1) * v(r2, c2) != v(r1, c2) * v(r2, c1)) rank_one = false;
        if (rank_one) return true;
        int i = 0;
        while (i < cells && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == cells) return false;
    }
}

} // namespace

TEST_CASE("diagonal patterns are already maximal stairs") {
    const StairForm s = stair_decompose(Pattern::identity(3), StairMode::Exhaustive);
    REQUIRE(s.step_count() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.steps[i].height == 1);
        CHECK(s.steps[i].length == i + 1);
    }
    CHECK(s.maximality_certified);
    CHECK(is_valid_stair(s));
    const auto diffs = step_differences(s);
    REQUIRE(diffs.size() == 3);
    for (const auto& d : diffs) {
        CHECK(d.cells.rows() == 1);
        CHECK(d.cells.cols() == 1);
        CHECK(d.cells(0, 0) == Entry::Nonzero);
    }
    PivotChoiceEnumerator en(s);
    CHECK(en.count() == 1);
}

TEST_CASE("an all-free pattern is a single step without pivots") {
    const StairForm s = stair_decompose(Pattern(3, 3, Entry::Free), StairMode::Exhaustive);
    REQUIRE(s.step_count() == 1);
    CHECK(s.steps[0] == Step{3, 3});
    const auto diffs = step_differences(s);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0].cells == Pattern(3, 3, Entry::Free));
    CHECK(normalize_steps(s).second.empty());
    CHECK(PivotChoiceEnumerator(s).count() == 0);
}

TEST_CASE("normalization moves a Nonzero cell to the left-top") {
    Pattern p = parse_pattern("* x\nx *\n");
    const StairForm s = stair_decompose(p, StairMode::Exhaustive);
    REQUIRE(s.step_count() == 1);
    auto [normalized, pivots] = normalize_steps(s);
    REQUIRE(pivots.size() == 1);
    CHECK(pivots[0].row == 0);
    CHECK(pivots[0].col == 0);
    CHECK(normalized.permuted()(0, 0) == Entry::Nonzero);
    CHECK(PivotChoiceEnumerator(s).count() == 2);
}

TEST_CASE("the candidate count is the product over step differences") {
    // Block 1: rows {0,1} over column 0 with two Nonzero candidates; block 2: row 2 adds column 1.
    const Pattern p = parse_pattern("x 0\nx 0\n* x\n");
    const StairForm s = stair_decompose(p, StairMode::Exhaustive);
    PivotChoiceEnumerator en(s);
    std::size_t product = 1;
    for (const auto& c : en.candidates())
        if (!c.empty()) product *= c.size();
    CHECK(en.count() == product);
    std::vector<Pivot> out;
    std::size_t seen = 0;
    while (en.next(out)) ++seen;
    CHECK(seen == en.count());
}

TEST_CASE("exhaustive stair search matches the ordered-partition oracle on every 3x3 pattern") {
    for (std::uint64_t code = 0; code < 19683; ++code) {
        const Pattern p = oracle::pattern_from_code(3, 3, code);
        const auto [pivots, steps] = oracle::best_stair(p);
        const FormSearch search(p);
        REQUIRE_MESSAGE(search.max_pivots() == pivots, serialize_pattern(p));
        REQUIRE_MESSAGE(search.max_steps() == steps, serialize_pattern(p));
        const StairForm s = stair_decompose(p, StairMode::Exhaustive);
        REQUIRE(is_valid_stair(s));
        CHECK(pivot_count(s) == pivots);
        CHECK(s.step_count() == steps);
    }
}

TEST_CASE("exhaustive stair search matches the oracle on random patterns up to 5x5") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 400; ++t) {
        const int n = 2 + t % 4;
        const Pattern p = oracle::random_pattern(n, n, rng);
        const auto expected = oracle::best_stair(p);
        const StairForm s = stair_decompose(p, StairMode::Exhaustive);
        REQUIRE(is_valid_stair(s));
        CHECK_MESSAGE(std::make_pair(pivot_count(s), s.step_count()) == expected, serialize_pattern(p));

        const StairForm g = stair_decompose(p, StairMode::Greedy);
        CHECK(is_valid_stair(g));
        CHECK_FALSE(g.maximality_certified);
        CHECK(std::make_pair(pivot_count(g), g.step_count()) <= expected);
    }
}

TEST_CASE("step differences partition the columns and pivots are Nonzero") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        const Pattern p = oracle::random_pattern(4, 4, rng);
        const StairForm s = stair_decompose(p, StairMode::Exhaustive);
        const auto diffs = step_differences(s);
        int col = 0, row = 0;
        for (const auto& d : diffs) {
            CHECK(d.col_begin == col);
            CHECK(d.row_begin == row);
            col = d.col_end;
            row = d.row_end;
        }
        CHECK(row == p.rows());
        auto [normalized, pivots] = normalize_steps(s);
        CHECK(is_valid_stair(normalized));
        const Pattern m = normalized.permuted();
        std::set<int> steps;
        for (const Pivot& pv : pivots) {
            CHECK(m(pv.row, pv.col) == Entry::Nonzero);
            CHECK(p(pv.orig_row, pv.orig_col) == Entry::Nonzero);
            CHECK(pv.row == normalized.row_begin(pv.step));
            CHECK(pv.col == normalized.col_begin(pv.step));
            CHECK(steps.insert(pv.step).second);
        }
        PivotChoiceEnumerator en(s);
        CHECK((en.count() > 0) == !pivots.empty());
    }
}

TEST_CASE("the ramp test agrees with permutation search") {
    for (std::uint64_t code = 0; code < 19683; ++code) {
        const Pattern p = oracle::pattern_from_code(3, 3, code);
        const RampWitness w = is_ramp(p);
        REQUIRE_MESSAGE(w.ramp == oracle::is_ramp(p), serialize_pattern(p));
        if (!w.ramp) continue;
        // The witness is a lower-triangular cell sequence with a Nonzero diagonal.
        REQUIRE(w.pivots.size() == 3);
        for (std::size_t k = 0; k < w.pivots.size(); ++k) {
            CHECK(p(w.pivots[k].first, w.pivots[k].second) == Entry::Nonzero);
            for (std::size_t j = 0; j < k; ++j) CHECK(p(w.pivots[j].first, w.pivots[k].second) == Entry::Zero);
        }
    }
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const int rows = 2 + t % 3, cols = rows + t % 3;
        const Pattern p = oracle::random_pattern(rows, cols, rng);
        CHECK(is_ramp(p).ramp == oracle::is_ramp(p));
        CHECK(is_ramp(p.transpose()).ramp == oracle::is_ramp(p.transpose()));
    }
}

TEST_CASE("ramp patterns have full row rank in every sampled realization") {
    std::mt19937_64 rng(8);
    int ramps = 0;
    for (int t = 0; t < 60; ++t) {
        const Pattern p = oracle::random_pattern(3, 5, rng, 0.5, 0.35);
        if (!is_ramp(p).ramp) continue;
        ++ramps;
        for (int s = 0; s < 1000; ++s) {
            const Eigen::MatrixXd x = oracle::realize(p, rng);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
            REQUIRE(svd.singularValues()(2) > 1e-9 * svd.singularValues()(0));
        }
    }
    CHECK(ramps > 5);
}

TEST_CASE("appendix ramp displays") {
    const Pattern ramp_a = load_pattern_file(SSCO_FIXTURES "/appendix/ramp_A.txt");
    const Pattern with_b = Pattern::hcat(ramp_a, dedicated_columns(3, {1, 2}));
    CHECK(is_ramp(with_b).ramp);
    CHECK(oracle::is_ramp(with_b));

    const Pattern counter_a = load_pattern_file(SSCO_FIXTURES "/appendix/counter_A.txt");
    const Pattern counter_b = load_pattern_file(SSCO_FIXTURES "/appendix/counter_B.txt");
    CHECK_FALSE(is_ramp(Pattern::hcat(counter_a, counter_b)).ramp);
    CHECK_FALSE(oracle::is_ramp(Pattern::hcat(counter_a, counter_b)));

    Pattern lower(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c <= r; ++c) lower(r, c) = Entry::Nonzero;
    const RampWitness w = is_ramp(lower);
    CHECK(w.ramp);
    CHECK(w.uncovered.empty());
}

TEST_CASE("five-bus stair form under the printed order") {
    const PencilPattern pencil = five_bus();
    const StairOptions order = five_bus_order();
    const StairForm s = stair_decompose(lambda_pattern(pencil), StairMode::Exhaustive, order);
    CHECK(s.maximality_certified);
    auto [normalized, pivots] = normalize_steps(s);
    CHECK(pivots.size() == 13);

    // The displayed normalized matrix, compared up to the exchange of pivot candidates.
    const std::string text = read_file(SSCO_FIXTURES "/five_bus/stair.txt");
    const Pattern printed = parse_pattern(text);
    CHECK(normalized.row_perm == order.row_priority);
    CHECK(normalized.col_perm == order.col_priority);
    CHECK(normalized.permuted() == printed);

    PivotChoiceEnumerator en(s);
    CHECK(en.count() == 4);
    std::set<std::vector<int>> actuator_sets;
    std::vector<Pivot> choice;
    while (en.next(choice)) actuator_sets.insert(dedicated_actuators(s, choice).base);
    const std::set<std::vector<int>> expected{{11, 13, 15}, {12, 13, 15}, {11, 14, 15}, {12, 14, 15}};
    CHECK(actuator_sets == expected);

    // Steps with more rows than pivots sit at rows {12,13}, {14,15} and {11,16}.
    std::vector<std::vector<int>> extra_rows;
    for (const auto& d : step_differences(normalized))
        if (d.cells.rows() > 1) {
            std::vector<int> r;
            for (int i = d.row_begin; i < d.row_end; ++i) r.push_back(normalized.row_perm[i] + 1);
            extra_rows.push_back(r);
        }
    CHECK(extra_rows == std::vector<std::vector<int>>{{12, 13}, {14, 15}, {11, 16}});
}

TEST_CASE("assumption 1 verdicts") {
    int witness = -7;
    CHECK(assumption1_verdict(Pattern(3, 3, Entry::Free), &witness) == A1Verdict::HoldsStructurally);
    CHECK(witness == 0);
    CHECK(assumption1_verdict(Pattern(1, 1, Entry::Nonzero), &witness) == A1Verdict::HoldsStructurally);
    CHECK(witness == 0);
    // c = [Free, Nonzero], j = [Nonzero, Zero]: no realization makes them proportional.
    const Pattern violated = parse_pattern("* x\nx 0\n");
    CHECK(assumption1_verdict(violated, &witness) == A1Verdict::Violated);
    CHECK(witness == -1);
    CHECK_FALSE(rank_one_on_grid(violated));
    // [x,*] and [*,x] are proportional when both Free cells are nonzero; the proxy cannot show it.
    const Pattern gap = parse_pattern("x *\n* x\n");
    CHECK(assumption1_verdict(gap, nullptr) == A1Verdict::Inconclusive);
    CHECK(rank_one_on_grid(gap));
}

TEST_CASE("assumption 1 verdicts are sound against a grid search on every 2x2 and 3x2 pattern") {
    for (int rows : {2, 3}) {
        std::uint64_t total = 1;
        for (int i = 0; i < rows * 2; ++i) total *= 3;
        for (std::uint64_t code = 0; code < total; ++code) {
            const Pattern d = oracle::pattern_from_code(rows, 2, code);
            int witness = -1;
            const A1Verdict v = assumption1_verdict(d, &witness);
            const bool feasible = rank_one_on_grid(d);
            if (v == A1Verdict::HoldsStructurally) {
                CHECK_MESSAGE(feasible, serialize_pattern(d));
                CHECK(witness >= 0);
            }
            if (v == A1Verdict::Violated) CHECK_MESSAGE(!feasible, serialize_pattern(d));
        }
    }
}

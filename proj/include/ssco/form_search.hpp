#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ssco/pattern.hpp"
#include "ssco/stair.hpp"

namespace ssco {

/// Weight of choosing base cell (row, col) as a pivot.
using PivotWeight = std::function<double(int row, int col)>;

/// Exact search over every stair form of a pattern, by dynamic programming
/// over the set of rows already placed (cost O(3^rows)).
class FormSearch {
public:
    static constexpr int max_rows = 20;

    /// row_priority lists base rows from highest to lowest tie-break priority.
    explicit FormSearch(const Pattern& p, std::vector<int> row_priority = {});

    /// Largest pivot count over all stair forms.
    int max_pivots() const;
    /// Largest step count among forms with max_pivots() pivots.
    int max_steps() const;

    /// The (pivots, steps)-maximal form that wins the row-priority tie-break, unnormalized.
    StairForm canonical(const std::vector<int>& col_priority = {}) const;

    struct Choice {
        StairForm form;              ///< normalized on the chosen pivots
        std::vector<Pivot> pivots;   ///< one per pivoted step, in form coordinates
        double weight = 0.0;         ///< summed pivot weight
    };

    /// Among forms with max_pivots() pivots, the pivot collection of largest total weight.
    Choice best_weighted(const PivotWeight& w, const std::vector<int>& col_priority = {}) const;

    /// Every distinct optimal pivot collection (pivots first, then weight when w is set).
    /// Collections are identified by their pivot rows, and also by their pivot
    /// columns when distinguish_cols is true. Sorted by pivot rows, then columns.
    std::vector<Choice> optimal_choices(const PivotWeight* w, bool distinguish_cols, std::size_t cap,
                                        bool* truncated, const std::vector<int>& col_priority = {}) const;

private:
    struct Value {
        int pivots = -1;
        double weight = 0.0;
    };
    struct Transition {
        std::uint32_t block = 0;
        int pivot_row = -1;  ///< local row, or -1
        int pivot_col = -1;  ///< base column, or -1
    };

    std::vector<Value> solve(const PivotWeight* w) const;
    /// Best pivot cell of block B at placed set U; returns its weight (or -1 when none).
    double block_gain(std::uint32_t placed, std::uint32_t block, const PivotWeight* w, int* row, int* col) const;
    bool better(const Value& a, const Value& b) const;
    bool same(const Value& a, const Value& b) const;
    Choice build(const std::vector<Transition>& path, const std::vector<int>& col_priority) const;

    Pattern p_;
    std::vector<int> local_;       ///< local index -> base row (nonempty rows, priority order)
    std::vector<int> empty_rows_;  ///< rows with no support, in priority order
    std::vector<std::uint64_t> supp_;
    std::vector<std::uint64_t> nz_;
    std::vector<std::uint64_t> union_;  ///< support union per row set
    std::vector<int> steps_;            ///< best (pivots, steps) suffix, packed
};

} // namespace ssco

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ssco/pattern.hpp"

namespace ssco {

/// One step of a stair matrix: its row count and cumulative column length n_l.
struct Step {
    int height = 0;
    int length = 0;
    bool operator==(const Step&) const = default;
};

/// A pivot cell; row/col are positions in the stair form, orig_* in the base pattern.
struct Pivot {
    int row = 0;
    int col = 0;
    int orig_row = 0;
    int orig_col = 0;
    int step = 0;
    bool operator==(const Pivot&) const = default;
};

/// Row and column permutations of a pattern together with its step boundaries.
struct StairForm {
    Pattern base;
    std::vector<int> row_perm;  ///< row_perm[i] = base row shown at position i
    std::vector<int> col_perm;  ///< col_perm[j] = base column shown at position j
    std::vector<Step> steps;
    bool maximality_certified = true;

    int step_count() const { return static_cast<int>(steps.size()); }
    int row_begin(int step) const;
    int row_end(int step) const;
    int col_begin(int step) const { return step == 0 ? 0 : steps[step - 1].length; }
    int col_end(int step) const { return steps[step].length; }
    /// The permuted pattern P_r * base * P_c.
    Pattern permuted() const;
};

/// True when s satisfies every stair invariant (permutations, increasing lengths, zero blocks).
bool is_valid_stair(const StairForm& s);

/// New-column slice of one step.
struct StepDifference {
    int step_index = 0;
    int row_begin = 0;
    int row_end = 0;
    int col_begin = 0;
    int col_end = 0;
    Pattern cells;
};

enum class StairMode { Exhaustive, Greedy };

/// Tie-break priorities and the exhaustive size limit for stair searches.
struct StairOptions {
    int exhaustive_limit = 16;
    std::vector<int> row_priority;  ///< rows listed first win ties; empty = original order
    std::vector<int> col_priority;  ///< column order inside a step; empty = original order
};

/// Maximal stair form: most pivots, then most steps, ties by row priority.
/// Exhaustive mode is exact up to exhaustive_limit rows; beyond it, and in Greedy mode,
/// the result carries maximality_certified = false.
StairForm stair_decompose(const Pattern& p, StairMode mode, const StairOptions& options = {});

std::vector<StepDifference> step_differences(const StairForm& s);

/// Nonzero cells of each step difference, in (orig_row, orig_col) order.
std::vector<std::vector<Pivot>> pivot_candidates(const StairForm& s);

/// Moves the given pivots (one per listed step) to the left-top of their step differences.
StairForm apply_pivots(const StairForm& s, std::vector<Pivot>& pivots);

/// Normalizes every step difference that has a Nonzero cell, choosing the
/// lexicographically first candidate; returns the normalized form and its pivots.
std::pair<StairForm, std::vector<Pivot>> normalize_steps(const StairForm& s);

/// Iterates every maximal pivot collection of a stair form, lexicographic in
/// (step, orig_row, orig_col).
class PivotChoiceEnumerator {
public:
    explicit PivotChoiceEnumerator(const StairForm& s);

    /// Number of collections (saturates at SIZE_MAX).
    std::size_t count() const;
    /// Writes the next collection; false when exhausted.
    bool next(std::vector<Pivot>& out);
    const std::vector<std::vector<Pivot>>& candidates() const { return candidates_; }

private:
    std::vector<std::vector<Pivot>> candidates_;
    std::vector<std::size_t> cursor_;
    bool done_ = false;
};

/// Result of the ramp test with its lower-triangular witness.
struct RampWitness {
    bool ramp = false;
    /// Pivot cells (row, col) in triangular order: cell k is Nonzero and every
    /// cell (row_j, col_k) with j < k is Zero.
    std::vector<std::pair<int, int>> pivots;
    std::vector<int> row_order;  ///< pivot rows in triangular order
    std::vector<int> col_order;  ///< pivot columns in triangular order, then the rest
    std::vector<int> uncovered;  ///< rows (or columns, if tall) left after peeling
};

/// Ramp test: permutations exist exposing a min(rows, cols) lower-triangular
/// submatrix with Nonzero diagonal. Decided by zero-forcing peeling.
RampWitness is_ramp(const Pattern& p);

/// Rows of the wide pattern p that survive peeling when the given rows are
/// removed first (as if actuated by dedicated columns).
std::vector<int> ramp_uncovered(const Pattern& p, const std::vector<int>& preremoved = {});

enum class A1Verdict { HoldsStructurally, Violated, Inconclusive };

struct Assumption1Item {
    int step = 0;
    A1Verdict verdict = A1Verdict::Inconclusive;
    int witness_col = -1;  ///< base column when HoldsStructurally
};

struct Assumption1Report {
    std::vector<Assumption1Item> items;
};

/// Structural proportionality proxy of Assumption 1 for a single step difference.
A1Verdict assumption1_verdict(const Pattern& delta, int* witness_col);

Assumption1Report check_assumption1(const StairForm& s);

const char* to_string(A1Verdict v);

} // namespace ssco

#include "ssco/stair.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ssco/errors.hpp"
#include "ssco/form_search.hpp"

namespace ssco {

int StairForm::row_begin(int step) const {
    int r = 0;
    for (int s = 0; s < step; ++s) r += steps[s].height;
    return r;
}

int StairForm::row_end(int step) const { return row_begin(step) + steps[step].height; }

Pattern StairForm::permuted() const { return base.permuted(row_perm, col_perm); }

namespace {

bool is_permutation_of(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

} // namespace

bool is_valid_stair(const StairForm& s) {
    if (!is_permutation_of(s.row_perm, s.base.rows()) || !is_permutation_of(s.col_perm, s.base.cols())) return false;
    if (s.steps.empty()) return false;
    int rows = 0;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        if (s.steps[i].height <= 0 || s.steps[i].length < 0 || s.steps[i].length > s.base.cols()) return false;
        if (i > 0 && s.steps[i].length <= s.steps[i - 1].length) return false;
        rows += s.steps[i].height;
    }
    if (rows != s.base.rows()) return false;
    const Pattern m = s.permuted();
    for (int st = 0; st < s.step_count(); ++st)
        for (int r = s.row_begin(st); r < s.row_end(st); ++r)
            for (int c = s.steps[st].length; c < m.cols(); ++c)
                if (m(r, c) != Entry::Zero) return false;
    return true;
}

namespace {

/// Locally maximal form: repeatedly open the row that adds the fewest new
/// columns, then absorb every row whose support is already covered.
StairForm greedy_form(const Pattern& p, const std::vector<int>& priority, const std::vector<int>& col_priority) {
    const int n = p.rows();
    std::vector<std::uint64_t> supp(n), nz(n);
    for (int r = 0; r < n; ++r) {
        supp[r] = p.row_support(r);
        nz[r] = p.row_nonzero(r);
    }
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[priority[i]] = i;
    std::vector<int> col_rank(p.cols());
    for (int i = 0; i < p.cols(); ++i) col_rank[col_priority[i]] = i;

    StairForm s;
    s.base = p;
    s.maximality_certified = false;
    std::vector<char> used(n, 0);
    std::uint64_t covered = 0;
    int placed = 0;
    std::vector<int> empty_rows;
    for (int r : priority)
        if (supp[r] == 0) {
            used[r] = 1;
            empty_rows.push_back(r);
        }
    placed = static_cast<int>(empty_rows.size());

    auto order_cols = [&](std::uint64_t mask) {
        std::vector<int> cols;
        for (int c = 0; c < p.cols(); ++c)
            if (mask >> c & 1) cols.push_back(c);
        std::sort(cols.begin(), cols.end(), [&](int a, int b) { return col_rank[a] < col_rank[b]; });
        return cols;
    };

    while (placed < n) {
        int best = -1;
        int best_new = std::numeric_limits<int>::max();
        bool best_x = false;
        for (int r : priority) {
            if (used[r]) continue;
            const std::uint64_t nw = supp[r] & ~covered;
            const int cnt = __builtin_popcountll(nw);
            const bool has_x = (nz[r] & nw) != 0;
            if (cnt < best_new || (cnt == best_new && has_x && !best_x)) {
                best = r;
                best_new = cnt;
                best_x = has_x;
            }
        }
        const std::uint64_t next = covered | supp[best];
        std::vector<int> block;
        for (int r : priority)
            if (!used[r] && (supp[r] & ~next) == 0) block.push_back(r);
        for (int r : block) used[r] = 1;
        placed += static_cast<int>(block.size());
        if (placed == n) block.insert(block.end(), empty_rows.begin(), empty_rows.end());
        for (int r : block) s.row_perm.push_back(r);
        for (int c : order_cols(next & ~covered)) s.col_perm.push_back(c);
        covered = next;
        s.steps.push_back({static_cast<int>(block.size()), __builtin_popcountll(covered)});
    }
    if (s.steps.empty()) {
        s.row_perm = empty_rows;
        s.steps.push_back({n, 0});
    }
    const std::uint64_t all = p.cols() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.cols()) - 1;
    for (int c : order_cols(all & ~covered)) s.col_perm.push_back(c);
    return s;
}

std::vector<int> default_order(const std::vector<int>& given, int n) {
    if (given.empty()) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return v;
    }
    if (!is_permutation_of(given, n)) throw DimensionError("priority is not a permutation of the index range");
    return given;
}

} // namespace

StairForm stair_decompose(const Pattern& p, StairMode mode, const StairOptions& options) {
    if (p.empty()) throw NotNormalizable("empty pattern has no stair form");
    const std::vector<int> rows = default_order(options.row_priority, p.rows());
    const std::vector<int> cols = default_order(options.col_priority, p.cols());
    const int limit = std::min(options.exhaustive_limit, FormSearch::max_rows);
    if (mode == StairMode::Exhaustive && p.rows() <= limit) return FormSearch(p, rows).canonical(cols);
    return greedy_form(p, rows, cols);
}

std::vector<StepDifference> step_differences(const StairForm& s) {
    const Pattern m = s.permuted();
    std::vector<StepDifference> out;
    for (int st = 0; st < s.step_count(); ++st) {
        StepDifference d;
        d.step_index = st;
        d.row_begin = s.row_begin(st);
        d.row_end = s.row_end(st);
        d.col_begin = s.col_begin(st);
        d.col_end = s.col_end(st);
        d.cells = Pattern(d.row_end - d.row_begin, d.col_end - d.col_begin);
        for (int r = d.row_begin; r < d.row_end; ++r)
            for (int c = d.col_begin; c < d.col_end; ++c) d.cells(r - d.row_begin, c - d.col_begin) = m(r, c);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<std::vector<Pivot>> pivot_candidates(const StairForm& s) {
    std::vector<std::vector<Pivot>> out;
    for (const StepDifference& d : step_differences(s)) {
        std::vector<Pivot> cand;
        for (int r = d.row_begin; r < d.row_end; ++r)
            for (int c = d.col_begin; c < d.col_end; ++c)
                if (d.cells(r - d.row_begin, c - d.col_begin) == Entry::Nonzero)
                    cand.push_back({r, c, s.row_perm[r], s.col_perm[c], d.step_index});
        std::sort(cand.begin(), cand.end(), [](const Pivot& a, const Pivot& b) {
            return std::pair(a.orig_row, a.orig_col) < std::pair(b.orig_row, b.orig_col);
        });
        out.push_back(std::move(cand));
    }
    return out;
}

StairForm apply_pivots(const StairForm& s, std::vector<Pivot>& pivots) {
    StairForm out = s;
    for (Pivot& pv : pivots) {
        if (pv.step < 0 || pv.step >= s.step_count()) throw DimensionError("pivot step out of range");
        const int rb = out.row_begin(pv.step);
        const int re = out.row_end(pv.step);
        const int cb = out.col_begin(pv.step);
        const int ce = out.col_end(pv.step);
        auto rit = std::find(out.row_perm.begin() + rb, out.row_perm.begin() + re, pv.orig_row);
        auto cit = std::find(out.col_perm.begin() + cb, out.col_perm.begin() + ce, pv.orig_col);
        if (rit == out.row_perm.begin() + re || cit == out.col_perm.begin() + ce ||
            s.base(pv.orig_row, pv.orig_col) != Entry::Nonzero)
            throw DimensionError("pivot is not a Nonzero cell of its step difference");
        std::rotate(out.row_perm.begin() + rb, rit, rit + 1);
        std::rotate(out.col_perm.begin() + cb, cit, cit + 1);
        pv.row = rb;
        pv.col = cb;
    }
    return out;
}

std::pair<StairForm, std::vector<Pivot>> normalize_steps(const StairForm& s) {
    std::vector<Pivot> pivots;
    for (const auto& cand : pivot_candidates(s))
        if (!cand.empty()) pivots.push_back(cand.front());
    StairForm out = apply_pivots(s, pivots);
    return {std::move(out), std::move(pivots)};
}

PivotChoiceEnumerator::PivotChoiceEnumerator(const StairForm& s) {
    for (auto& cand : pivot_candidates(s))
        if (!cand.empty()) candidates_.push_back(std::move(cand));
    cursor_.assign(candidates_.size(), 0);
    done_ = candidates_.empty();
}

std::size_t PivotChoiceEnumerator::count() const {
    if (candidates_.empty()) return 0;
    std::size_t total = 1;
    for (const auto& c : candidates_) {
        if (total > std::numeric_limits<std::size_t>::max() / c.size()) return std::numeric_limits<std::size_t>::max();
        total *= c.size();
    }
    return total;
}

bool PivotChoiceEnumerator::next(std::vector<Pivot>& out) {
    if (done_) return false;
    out.clear();
    for (std::size_t i = 0; i < candidates_.size(); ++i) out.push_back(candidates_[i][cursor_[i]]);
    std::size_t i = candidates_.size();
    while (i > 0) {
        --i;
        if (++cursor_[i] < candidates_[i].size()) return true;
        cursor_[i] = 0;
    }
    done_ = true;
    return true;
}

namespace {

/// Peels rows of a wide pattern: a column whose remaining support is a single
/// Nonzero cell removes that row. Returns the removals in order.
std::vector<std::pair<int, int>> peel(const Pattern& p, std::vector<char>& row_alive) {
    std::vector<std::pair<int, int>> removed;
    std::vector<char> col_used(p.cols(), 0);
    std::vector<int> alive_count(p.cols(), 0);
    for (int c = 0; c < p.cols(); ++c)
        for (int r = 0; r < p.rows(); ++r)
            if (row_alive[r] && p(r, c) != Entry::Zero) ++alive_count[c];
    bool progress = true;
    while (progress) {
        progress = false;
        for (int c = 0; c < p.cols(); ++c) {
            if (col_used[c] || alive_count[c] != 1) continue;
            int row = -1;
            for (int r = 0; r < p.rows(); ++r)
                if (row_alive[r] && p(r, c) != Entry::Zero) row = r;
            if (p(row, c) != Entry::Nonzero) continue;
            col_used[c] = 1;
            row_alive[row] = 0;
            removed.emplace_back(row, c);
            for (int cc = 0; cc < p.cols(); ++cc)
                if (p(row, cc) != Entry::Zero) --alive_count[cc];
            progress = true;
        }
    }
    return removed;
}

RampWitness ramp_wide(const Pattern& p) {
    RampWitness w;
    std::vector<char> alive(p.rows(), 1);
    auto removed = peel(p, alive);
    std::reverse(removed.begin(), removed.end());
    w.pivots = removed;
    std::vector<char> col_in(p.cols(), 0);
    for (auto [r, c] : removed) {
        w.row_order.push_back(r);
        w.col_order.push_back(c);
        col_in[c] = 1;
    }
    for (int c = 0; c < p.cols(); ++c)
        if (!col_in[c]) w.col_order.push_back(c);
    for (int r = 0; r < p.rows(); ++r)
        if (alive[r]) w.uncovered.push_back(r);
    w.ramp = w.uncovered.empty();
    return w;
}

} // namespace

RampWitness is_ramp(const Pattern& p) {
    if (p.rows() <= p.cols()) return ramp_wide(p);
    RampWitness t = ramp_wide(p.transpose());
    RampWitness w;
    w.ramp = t.ramp;
    w.uncovered = t.uncovered;
    for (auto it = t.pivots.rbegin(); it != t.pivots.rend(); ++it) {
        w.pivots.emplace_back(it->second, it->first);
        w.row_order.push_back(it->second);
        w.col_order.push_back(it->first);
    }
    std::vector<char> row_in(p.rows(), 0);
    for (int r : w.row_order) row_in[r] = 1;
    for (int r = 0; r < p.rows(); ++r)
        if (!row_in[r]) w.row_order.push_back(r);
    return w;
}

std::vector<int> ramp_uncovered(const Pattern& p, const std::vector<int>& preremoved) {
    std::vector<char> alive(p.rows(), 1);
    for (int r : preremoved) alive.at(r) = 0;
    peel(p, alive);
    std::vector<int> out;
    for (int r = 0; r < p.rows(); ++r)
        if (alive[r]) out.push_back(r);
    return out;
}

namespace {

bool zero_or_free(Entry e) { return e != Entry::Nonzero; }

/// Branch (a) or (b) of the proportionality proxy for column j against candidate c.
bool proportional_proxy(const Pattern& d, int c, int j) {
    bool branch_a = true;
    for (int r = 0; r < d.rows(); ++r)
        if (d(r, j) == Entry::Nonzero) branch_a = false;
    if (branch_a) return true;
    for (int r = 0; r < d.rows(); ++r) {
        if (zero_or_free(d(r, c)) && !zero_or_free(d(r, j))) return false;
        if (d(r, c) == Entry::Nonzero && d(r, j) == Entry::Zero) return false;
    }
    return true;
}

bool has_nonzero(const Pattern& d, int c) {
    for (int r = 0; r < d.rows(); ++r)
        if (d(r, c) == Entry::Nonzero) return true;
    return false;
}

/// Two columns that are nonzero in every realization are proportional only with
/// equal zero sets, so a row where one is Nonzero and the other Zero rules it out.
bool forced_apart(const Pattern& d, int c, int j) {
    if (!has_nonzero(d, c) || !has_nonzero(d, j)) return false;
    for (int r = 0; r < d.rows(); ++r) {
        if (d(r, c) == Entry::Nonzero && d(r, j) == Entry::Zero) return true;
        if (d(r, j) == Entry::Nonzero && d(r, c) == Entry::Zero) return true;
    }
    return false;
}

} // namespace

A1Verdict assumption1_verdict(const Pattern& delta, int* witness_col) {
    if (witness_col) *witness_col = -1;
    if (delta.cols() <= 1) {
        if (witness_col && delta.cols() == 1) *witness_col = 0;
        return A1Verdict::HoldsStructurally;
    }
    for (int c = 0; c < delta.cols(); ++c) {
        bool ok = true;
        for (int j = 0; j < delta.cols() && ok; ++j)
            if (j != c && !proportional_proxy(delta, c, j)) ok = false;
        if (ok) {
            if (witness_col) *witness_col = c;
            return A1Verdict::HoldsStructurally;
        }
    }
    for (int c = 0; c < delta.cols(); ++c)
        for (int j = c + 1; j < delta.cols(); ++j)
            if (forced_apart(delta, c, j)) return A1Verdict::Violated;
    return A1Verdict::Inconclusive;
}

Assumption1Report check_assumption1(const StairForm& s) {
    Assumption1Report report;
    for (const StepDifference& d : step_differences(s)) {
        Assumption1Item item;
        item.step = d.step_index;
        int w = -1;
        item.verdict = assumption1_verdict(d.cells, &w);
        if (w >= 0) item.witness_col = s.col_perm[d.col_begin + w];
        report.items.push_back(item);
    }
    return report;
}

const char* to_string(A1Verdict v) {
    switch (v) {
    case A1Verdict::HoldsStructurally: return "HoldsStructurally";
    case A1Verdict::Violated: return "Violated";
    case A1Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

} // namespace ssco

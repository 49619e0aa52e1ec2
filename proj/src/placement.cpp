#include "ssco/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ssco/errors.hpp"
#include "ssco/form_search.hpp"

namespace ssco {

std::vector<std::string> validate_cost(const CostMatrix& cost, int rows, int cols, SolutionKind kind) {
    std::vector<std::string> warnings;
    if (cost.is_uniform()) {
        if (!std::isfinite(cost.uniform_weight) || cost.uniform_weight < 0)
            throw Error("uniform weight must be finite and nonnegative");
        return warnings;
    }
    if (cost.weights.rows() != rows || cost.weights.cols() != cols)
        throw CostDimensionError("cost matrix is " + std::to_string(cost.weights.rows()) + "x" +
                                 std::to_string(cost.weights.cols()) + ", expected " + std::to_string(rows) + "x" +
                                 std::to_string(cols));
    for (Eigen::Index r = 0; r < cost.weights.rows(); ++r)
        for (Eigen::Index c = 0; c < cost.weights.cols(); ++c)
            if (!std::isfinite(cost.weights(r, c)) || cost.weights(r, c) < 0)
                throw Error("cost weights must be finite and nonnegative");
    if (kind == SolutionKind::Actuation) {
        for (Eigen::Index r = 0; r < cost.weights.rows(); ++r)
            if ((cost.weights.row(r).array() != cost.weights(r, 0)).any()) {
                warnings.push_back("actuation cost of state " + std::to_string(r + 1) +
                                   " differs between columns; pivot collections are priced column by column");
            }
    } else {
        for (Eigen::Index c = 0; c < cost.weights.cols(); ++c)
            if ((cost.weights.col(c).array() != cost.weights(0, c)).any()) {
                warnings.push_back("sensing cost of state " + std::to_string(c + 1) +
                                   " differs between rows; pivot collections are priced row by row");
            }
    }
    return warnings;
}

std::vector<double> state_weights(const CostMatrix& cost, int n, SolutionKind kind) {
    std::vector<double> w(n, cost.uniform_weight);
    if (cost.is_uniform()) return w;
    for (int i = 0; i < n; ++i)
        w[i] = kind == SolutionKind::Actuation ? cost.weights.row(i).mean() : cost.weights.col(i).mean();
    return w;
}

double placement_cost(SolutionKind kind, const std::vector<int>& indices, const CostMatrix& cost) {
    double total = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const int slot = static_cast<int>(j);
        total += kind == SolutionKind::Actuation ? cost.at(indices[j], slot) : cost.at(slot, indices[j]);
    }
    return total;
}

DedicatedSolution dedicated_actuators(const StairForm& form, const std::vector<Pivot>& pivots) {
    const int n = form.base.rows();
    if (n == 0) throw NotNormalizable("empty pattern");
    DedicatedSolution s;
    s.form = form;
    s.pivots = pivots;
    std::vector<char> pivot_row(n, 0);
    for (const Pivot& p : pivots) pivot_row.at(p.orig_row) = 1;
    for (int r = 0; r < n; ++r)
        if (!pivot_row[r]) s.base.push_back(r);
    s.indices = s.base;
    std::vector<char> has(form.step_count(), 0);
    for (const Pivot& p : pivots) has.at(p.step) = 1;
    for (int st = 0; st < form.step_count(); ++st) {
        if (has[st]) continue;
        std::string rows;
        for (int r = form.row_begin(st); r < form.row_end(st); ++r)
            rows += (rows.empty() ? "" : ",") + std::to_string(form.row_perm[r] + 1);
        s.diagnostics.push_back("step " + std::to_string(st + 1) + " has no pivot; rows {" + rows +
                                "} enter the solution in full");
    }
    return s;
}

namespace {

/// Pivot collections of one form whose summed weight is maximal: the product of
/// the per-step argmax candidates, distinct by pivot rows.
std::vector<std::vector<Pivot>> best_collections(const StairForm& form, const std::vector<double>& w, std::size_t cap,
                                                 bool* truncated) {
    std::vector<std::vector<Pivot>> per_step;
    for (const auto& cand : pivot_candidates(form)) {
        if (cand.empty()) continue;
        double best = -1;
        for (const Pivot& p : cand) best = std::max(best, w[p.orig_row]);
        std::vector<Pivot> keep;
        for (const Pivot& p : cand) {
            if (std::abs(w[p.orig_row] - best) > 1e-9 * (1 + std::abs(best))) continue;
            if (!keep.empty() && keep.back().orig_row == p.orig_row) continue;
            keep.push_back(p);
        }
        per_step.push_back(std::move(keep));
    }
    std::vector<std::vector<Pivot>> out;
    std::vector<std::size_t> cur(per_step.size(), 0);
    *truncated = false;
    while (true) {
        if (out.size() >= cap) {
            *truncated = true;
            break;
        }
        std::vector<Pivot> pick;
        for (std::size_t i = 0; i < per_step.size(); ++i) pick.push_back(per_step[i][cur[i]]);
        out.push_back(std::move(pick));
        std::size_t i = per_step.size();
        bool carry = true;
        while (carry && i > 0) {
            --i;
            if (++cur[i] < per_step[i].size())
                carry = false;
            else
                cur[i] = 0;
        }
        if (carry) break;
    }
    return out;
}

PlacementResult place_core(const Pattern& m, SolutionKind kind, const PlacementOptions& options) {
    const int n = m.rows();
    if (n == 0) throw NotNormalizable("empty pattern");
    if (options.k < 0) throw Error("resilience k must be nonnegative");
    const int frame = (options.k + 1) * n;
    std::vector<std::string> warnings = kind == SolutionKind::Actuation
                                            ? validate_cost(options.cost, n, frame, kind)
                                            : validate_cost(options.cost, frame, n, kind);
    // Per-state weights rank pivot collections exactly only when each state costs
    // the same in every slot; otherwise all collections are kept and priced below.
    const bool per_state = options.cost.is_uniform() || warnings.empty();
    const std::vector<double> w = per_state ? state_weights(options.cost, n, kind) : std::vector<double>(n, 1.0);

    PlacementResult result;
    std::vector<std::pair<StairForm, std::vector<Pivot>>> collections;
    const int limit = std::min(options.stair.exhaustive_limit, FormSearch::max_rows);
    const bool exhaustive = n <= limit;
    if (options.scope == FormScope::AllMaximal && exhaustive) {
        FormSearch search(m, options.stair.row_priority);
        const PivotWeight weight = [&](int r, int) { return w[r]; };
        const auto choices = search.optimal_choices(per_state && !options.cost.is_uniform() ? &weight : nullptr, false,
                                                    options.alternatives_cap, &result.truncated,
                                                    options.stair.col_priority);
        for (const auto& c : choices) collections.emplace_back(c.form, c.pivots);
    } else {
        const StairForm form =
            stair_decompose(m, exhaustive ? StairMode::Exhaustive : StairMode::Greedy, options.stair);
        for (auto& pivots : best_collections(form, w, options.alternatives_cap, &result.truncated)) {
            StairForm normalized = apply_pivots(form, pivots);
            collections.emplace_back(std::move(normalized), std::move(pivots));
        }
    }

    auto copies = [&](const std::vector<int>& base) {
        std::vector<int> indices;
        for (int copy = 0; copy <= options.k; ++copy) indices.insert(indices.end(), base.begin(), base.end());
        return indices;
    };
    std::map<std::vector<int>, DedicatedSolution> by_base;
    double cheapest = std::numeric_limits<double>::infinity();
    for (auto& [form, pivots] : collections) {
        DedicatedSolution s = dedicated_actuators(form, pivots);
        s.kind = kind;
        s.cost = placement_cost(kind, s.base, options.cost);
        cheapest = std::min(cheapest, placement_cost(kind, copies(s.base), options.cost));
        by_base.emplace(s.base, std::move(s));
    }
    for (auto& [base, s] : by_base) {
        const double full = placement_cost(kind, copies(base), options.cost);
        if (full <= cheapest + 1e-9 * (1.0 + std::abs(cheapest))) result.alternatives.push_back(std::move(s));
    }
    result.unique = result.alternatives.size() == 1 && !result.truncated;

    DedicatedSolution best = result.alternatives.front();
    best.k = options.k;
    best.indices = copies(best.base);
    best.cost = placement_cost(kind, best.indices, options.cost);
    best.diagnostics.insert(best.diagnostics.begin(), warnings.begin(), warnings.end());
    if (!best.form.maximality_certified)
        best.diagnostics.push_back("stair form found greedily; maximality is not certified");
    if (result.truncated)
        best.diagnostics.push_back("alternative enumeration stopped at " + std::to_string(options.alternatives_cap));
    result.best = std::move(best);
    return result;
}

CostMatrix transposed(const CostMatrix& c) {
    CostMatrix t = c;
    if (!c.is_uniform()) t.weights = c.weights.transpose();
    return t;
}

} // namespace

PlacementResult place_actuators(const PencilPattern& pencil, const PlacementOptions& options) {
    return place_core(lambda_pattern(pencil), SolutionKind::Actuation, options);
}

PlacementResult place_sensors(const PencilPattern& pencil, const PlacementOptions& options) {
    pencil.validate();
    const int frame = (options.k + 1) * pencil.n();
    validate_cost(options.cost, frame, pencil.n(), SolutionKind::Sensing);
    PlacementOptions t = options;
    t.cost = transposed(options.cost);
    PlacementResult r = place_core(lambda_pattern(pencil).transpose(), SolutionKind::Actuation, t);
    auto relabel = [&](DedicatedSolution& s) {
        s.kind = SolutionKind::Sensing;
        s.cost = placement_cost(SolutionKind::Sensing, s.indices, options.cost);
    };
    relabel(r.best);
    for (auto& a : r.alternatives) relabel(a);
    return r;
}

DedicatedSolution resilient_actuators(const PencilPattern& pencil, int k, const CostMatrix& cost) {
    PlacementOptions o;
    o.k = k;
    o.cost = cost;
    return place_actuators(pencil, o).best;
}

DedicatedSolution resilient_sensors(const PencilPattern& pencil, int k, const CostMatrix& cost) {
    PlacementOptions o;
    o.k = k;
    o.cost = cost;
    return place_sensors(pencil, o).best;
}

Certificate sssc_check(const PencilPattern& pencil, const Pattern& b) {
    pencil.validate();
    if (b.rows() != pencil.n()) throw DimensionError("B must have n rows");
    return is_ramp(Pattern::hcat(lambda_pattern(pencil), b)).ramp ? Certificate::Certified : Certificate::Inconclusive;
}

Certificate ssso_check(const PencilPattern& pencil, const Pattern& c) {
    pencil.validate();
    if (c.cols() != pencil.n()) throw DimensionError("C must have n columns");
    return sssc_check(pencil.transpose(), c.transpose());
}

Pattern materialize_inputs(const DedicatedSolution& s, int n) {
    Pattern b(n, (s.k + 1) * n);
    for (std::size_t j = 0; j < s.indices.size(); ++j) b(s.indices[j], static_cast<int>(j)) = Entry::Nonzero;
    return b;
}

Pattern materialize_outputs(const DedicatedSolution& s, int n) {
    Pattern c((s.k + 1) * n, n);
    for (std::size_t j = 0; j < s.indices.size(); ++j) c(static_cast<int>(j), s.indices[j]) = Entry::Nonzero;
    return c;
}

const char* to_string(SolutionKind k) { return k == SolutionKind::Actuation ? "actuation" : "sensing"; }

const char* to_string(FormScope s) { return s == FormScope::Pinned ? "pinned" : "all"; }

const char* to_string(Certificate c) { return c == Certificate::Certified ? "Certified" : "Inconclusive"; }

} // namespace ssco

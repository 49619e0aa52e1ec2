#include "ssco/codesign.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ssco/errors.hpp"
#include "ssco/form_search.hpp"
#include "ssco/matching.hpp"

namespace ssco {

Pattern InformationPattern::materialize(int frame) const {
    Pattern k(frame, frame);
    for (auto [a, s] : channels) k(a, s) = Entry::Nonzero;
    return k;
}

namespace {

std::vector<int> rank_of(const std::vector<int>& priority, int n) {
    std::vector<int> rank(n);
    if (priority.empty()) {
        std::iota(rank.begin(), rank.end(), 0);
    } else {
        for (int i = 0; i < n; ++i) rank.at(priority.at(i)) = i;
    }
    return rank;
}

/// Row and column positions of the form with every step (and step difference)
/// listed in priority order, i.e. before pivots are moved to the left-top.
void priority_positions(const StairForm& form, const StairOptions& order, std::vector<int>& row_pos,
                        std::vector<int>& col_pos) {
    const std::vector<int> rr = rank_of(order.row_priority, form.base.rows());
    const std::vector<int> cr = rank_of(order.col_priority, form.base.cols());
    std::vector<int> rows = form.row_perm;
    std::vector<int> cols = form.col_perm;
    for (int st = 0; st < form.step_count(); ++st) {
        std::sort(rows.begin() + form.row_begin(st), rows.begin() + form.row_end(st),
                  [&](int a, int b) { return rr[a] < rr[b]; });
        std::sort(cols.begin() + form.col_begin(st), cols.begin() + form.col_end(st),
                  [&](int a, int b) { return cr[a] < cr[b]; });
    }
    const int tail = form.steps.back().length;
    std::sort(cols.begin() + tail, cols.end(), [&](int a, int b) { return cr[a] < cr[b]; });
    row_pos.assign(rows.size(), 0);
    col_pos.assign(cols.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<int>(j);
}

std::set<std::pair<int, int>> pivot_cells(const std::vector<Pivot>& pivots, bool swap) {
    std::set<std::pair<int, int>> out;
    for (const Pivot& p : pivots) out.insert(swap ? std::pair(p.orig_col, p.orig_row) : std::pair(p.orig_row, p.orig_col));
    return out;
}

} // namespace

std::vector<IndexMate> index_mates(const StairForm& form, const DedicatedSolution& actuators,
                                   const DedicatedSolution& sensors, const CostMatrix& wk, const StairOptions& order) {
    bool swap = false;
    if (sensors.form.base == form.base)
        swap = false;
    else if (sensors.form.base == form.base.transpose())
        swap = true;
    else
        throw MismatchedPivotChoice("sensor solution was built from a different pattern");
    if (pivot_cells(actuators.pivots, false) != pivot_cells(sensors.pivots, swap))
        throw MismatchedPivotChoice("actuator and sensor solutions use different pivot collections");
    const int p = static_cast<int>(actuators.base.size());
    if (static_cast<int>(sensors.base.size()) != p)
        throw MismatchedPivotChoice("actuator and sensor base solutions differ in size");
    if (actuators.k != sensors.k) throw Error("actuator and sensor solutions differ in resilience");
    const int copies = actuators.k + 1;
    std::vector<IndexMate> mates;
    if (p == 0) return mates;

    std::vector<int> row_pos, col_pos;
    priority_positions(form, order, row_pos, col_pos);

    // Canonical pairing along the diagonal of the form.
    std::vector<int> act_order(p);
    std::iota(act_order.begin(), act_order.end(), 0);
    std::sort(act_order.begin(), act_order.end(),
              [&](int a, int b) { return row_pos[actuators.base[a]] < row_pos[actuators.base[b]]; });
    std::vector<char> taken(p, 0);
    std::vector<int> canonical(p, -1);
    for (int i : act_order) {
        const int t = row_pos[actuators.base[i]];
        int pick = -1;
        int below = -1, above = -1;
        for (int j = 0; j < p; ++j) {
            if (taken[j]) continue;
            const int g = col_pos[sensors.base[j]];
            if (g == t) pick = j;
            if (g < t && (below < 0 || g > col_pos[sensors.base[below]])) below = j;
            if (g > t && (above < 0 || g < col_pos[sensors.base[above]])) above = j;
        }
        if (pick < 0) pick = below >= 0 ? below : above;
        taken[pick] = 1;
        canonical[i] = pick;
    }

    // Group costs: best matching of the copies of actuator i to the copies of sensor j.
    auto copy_costs = [&](int i, int j) {
        Eigen::MatrixXd m(copies, copies);
        for (int q = 0; q < copies; ++q)
            for (int r = 0; r < copies; ++r) m(q, r) = wk.at(q * p + i, r * p + j);
        return m;
    };
    Eigen::MatrixXd group(p, p);
    std::vector<int> scratch;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) group(i, j) = min_cost_assignment(copy_costs(i, j), scratch);
    double canonical_total = 0.0;
    for (int i = 0; i < p; ++i) canonical_total += group(i, canonical[i]);
    std::vector<int> pairing = canonical;
    std::vector<int> optimal;
    const double best = lexicographic_min_assignment(group, optimal);
    if (best < canonical_total - 1e-9 * (1.0 + std::abs(canonical_total))) pairing = optimal;

    for (int i = 0; i < p; ++i) {
        const int j = pairing[i];
        std::vector<int> assign;
        lexicographic_min_assignment(copy_costs(i, j), assign);
        for (int q = 0; q < copies; ++q) {
            IndexMate m;
            m.actuator = q * p + i;
            m.sensor = assign[q] * p + j;
            m.actuator_state = actuators.base[i];
            m.sensor_state = sensors.base[j];
            m.diagonal_cell = {row_pos[m.actuator_state], col_pos[m.sensor_state]};
            m.channel_cost = wk.at(m.actuator, m.sensor);
            mates.push_back(m);
        }
    }
    return mates;
}

NecessaryConditions necessary_conditions(const PencilPattern& pencil, const Pattern& b, const Pattern& c) {
    return {sssc_check(pencil, b), ssso_check(pencil, c)};
}

double design_cost(const CodesignResult& r, const CostMatrix& wb, const CostMatrix& wc, const CostMatrix& wk) {
    double total = placement_cost(SolutionKind::Actuation, r.actuation.indices, wb) +
                   placement_cost(SolutionKind::Sensing, r.sensing.indices, wc);
    for (auto [a, s] : r.info.channels) total += wk.at(a, s);
    return total;
}

namespace {

CodesignResult evaluate(const StairForm& form, const std::vector<Pivot>& pivots, const CodesignOptions& o) {
    const int n = form.base.rows();
    CodesignResult r;
    r.actuation = dedicated_actuators(form, pivots);
    r.actuation.kind = SolutionKind::Actuation;
    r.actuation.k = o.k;

    r.sensing.kind = SolutionKind::Sensing;
    r.sensing.form = form;
    r.sensing.pivots = pivots;
    r.sensing.k = o.k;
    std::vector<char> pivot_col(n, 0);
    for (const Pivot& p : pivots) pivot_col[p.orig_col] = 1;
    for (int c = 0; c < n; ++c)
        if (!pivot_col[c]) r.sensing.base.push_back(c);

    for (DedicatedSolution* s : {&r.actuation, &r.sensing}) {
        s->indices.clear();
        for (int q = 0; q <= o.k; ++q) s->indices.insert(s->indices.end(), s->base.begin(), s->base.end());
    }
    r.actuation.cost = placement_cost(SolutionKind::Actuation, r.actuation.indices, o.wb);
    r.sensing.cost = placement_cost(SolutionKind::Sensing, r.sensing.indices, o.wc);

    r.info.mates = index_mates(form, r.actuation, r.sensing, o.wk, o.stair);
    r.info.p = static_cast<int>(r.actuation.indices.size());
    r.info.m = static_cast<int>(r.sensing.indices.size());
    for (const IndexMate& m : r.info.mates) r.info.channels.emplace_back(m.actuator, m.sensor);
    r.total_cost = design_cost(r, o.wb, o.wc, o.wk);
    return r;
}

bool cheaper(const CodesignResult& a, const CodesignResult& b) {
    return a.total_cost < b.total_cost - 1e-9 * (1.0 + std::abs(b.total_cost));
}

} // namespace

CodesignResult codesign(const PencilPattern& pencil, const CodesignOptions& options) {
    pencil.validate();
    const int n = pencil.n();
    if (n == 0) throw NotNormalizable("empty pattern");
    if (options.k < 0) throw Error("resilience k must be nonnegative");
    const int frame = (options.k + 1) * n;
    std::vector<std::string> diagnostics = validate_cost(options.wb, n, frame, SolutionKind::Actuation);
    for (auto& w : validate_cost(options.wc, frame, n, SolutionKind::Sensing)) diagnostics.push_back(w);
    if (!options.wk.is_uniform() && (options.wk.weights.rows() != frame || options.wk.weights.cols() != frame))
        throw CostDimensionError("channel cost matrix must be " + std::to_string(frame) + "x" + std::to_string(frame));
    validate_cost(options.wk, frame, frame, SolutionKind::Actuation);

    const std::vector<double> wb = state_weights(options.wb, n, SolutionKind::Actuation);
    const std::vector<double> wc = state_weights(options.wc, n, SolutionKind::Sensing);
    const PivotWeight weight = [&](int r, int c) { return wb[r] + wc[c] + options.wk.at(r, c); };

    const Pattern m = lambda_pattern(pencil);
    const int limit = std::min(options.stair.exhaustive_limit, FormSearch::max_rows);
    std::vector<std::pair<StairForm, std::vector<Pivot>>> candidates;
    if (options.scope == FormScope::AllMaximal && n <= limit) {
        FormSearch search(m, options.stair.row_priority);
        bool truncated = false;
        auto choices = search.optimal_choices(nullptr, true, options.candidate_cap, &truncated, options.stair.col_priority);
        if (truncated) {
            diagnostics.push_back("candidate pivot collections exceed the cap; using the maximum pivot weight rule");
            choices = {search.best_weighted(weight, options.stair.col_priority)};
        }
        for (auto& c : choices) candidates.emplace_back(std::move(c.form), std::move(c.pivots));
    } else {
        const StairForm form = stair_decompose(m, n <= limit ? StairMode::Exhaustive : StairMode::Greedy, options.stair);
        if (!form.maximality_certified) diagnostics.push_back("stair form found greedily; maximality is not certified");
        PivotChoiceEnumerator en(form);
        if (en.count() == 0) {
            candidates.emplace_back(form, std::vector<Pivot>{});
        } else if (en.count() <= options.candidate_cap) {
            std::vector<Pivot> pivots;
            while (en.next(pivots)) {
                std::vector<Pivot> copy = pivots;
                StairForm normalized = apply_pivots(form, copy);
                candidates.emplace_back(std::move(normalized), std::move(copy));
            }
        } else {
            diagnostics.push_back("pivot collections exceed the cap; using the maximum pivot weight rule");
            std::vector<Pivot> pivots;
            for (const auto& cand : en.candidates()) {
                const Pivot* best = &cand.front();
                for (const Pivot& p : cand)
                    if (weight(p.orig_row, p.orig_col) > weight(best->orig_row, best->orig_col)) best = &p;
                pivots.push_back(*best);
            }
            StairForm normalized = apply_pivots(form, pivots);
            candidates.emplace_back(std::move(normalized), std::move(pivots));
        }
    }

    CodesignResult best;
    bool have = false;
    for (const auto& [form, pivots] : candidates) {
        CodesignResult r = evaluate(form, pivots, options);
        if (!have || cheaper(r, best)) {
            best = std::move(r);
            have = true;
        }
    }
    best.diagnostics = std::move(diagnostics);
    return best;
}

} // namespace ssco

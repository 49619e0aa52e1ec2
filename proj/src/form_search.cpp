#include "ssco/form_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ssco/errors.hpp"

namespace ssco {

namespace {

/// Block order used for tie-breaks: compare the sorted member lists; when one
/// list extends the other, the longer block comes first.
bool block_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        const int la = __builtin_ctz(a);
        const int lb = __builtin_ctz(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a != 0 && b == 0;
}

} // namespace

FormSearch::FormSearch(const Pattern& p, std::vector<int> row_priority) : p_(p) {
    if (p.rows() > max_rows) throw DimensionError("exhaustive stair search supports at most 20 rows");
    if (p.cols() > 64) throw DimensionError("exhaustive stair search supports at most 64 columns");
    if (row_priority.empty()) {
        row_priority.resize(p.rows());
        std::iota(row_priority.begin(), row_priority.end(), 0);
    }
    for (int r : row_priority) {
        if (p.row_support(r) == 0)
            empty_rows_.push_back(r);
        else
            local_.push_back(r);
    }
    const int m = static_cast<int>(local_.size());
    for (int r : local_) {
        supp_.push_back(p.row_support(r));
        nz_.push_back(p.row_nonzero(r));
    }
    const std::uint32_t full = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    union_.assign(std::size_t{1} << m, 0);
    for (std::uint32_t u = 1; u <= full && u != 0; ++u) union_[u] = union_[u & (u - 1)] | supp_[__builtin_ctz(u)];

    steps_.assign(std::size_t{1} << m, -1);
    steps_[full] = 0;
    for (std::int64_t uu = static_cast<std::int64_t>(full) - 1; uu >= 0; --uu) {
        const auto u = static_cast<std::uint32_t>(uu);
        const std::uint32_t rest = full & ~u;
        int best = -1;
        for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
            const std::uint64_t nw = union_[u | b] & ~union_[u];
            if (!nw) continue;
            const int tail = steps_[u | b];
            if (tail < 0) continue;
            int gain = 0;
            for (std::uint32_t bb = b; bb; bb &= bb - 1)
                if (nz_[__builtin_ctz(bb)] & nw) {
                    gain = 1;
                    break;
                }
            best = std::max(best, tail + gain * 64 + 1);
        }
        steps_[u] = best;
    }
}

int FormSearch::max_pivots() const { return local_.empty() ? 0 : steps_[0] / 64; }

int FormSearch::max_steps() const { return local_.empty() ? 1 : steps_[0] % 64; }

double FormSearch::block_gain(std::uint32_t placed, std::uint32_t block, const PivotWeight* w, int* row,
                              int* col) const {
    const std::uint64_t nw = union_[placed | block] & ~union_[placed];
    double best = -1.0;
    int br = -1, bc = -1;
    for (std::uint32_t bb = block; bb; bb &= bb - 1) {
        const int r = __builtin_ctz(bb);
        for (std::uint64_t cc = nz_[r] & nw; cc; cc &= cc - 1) {
            const int c = __builtin_ctzll(cc);
            const double v = w ? (*w)(local_[r], c) : 0.0;
            const bool lex_first = br < 0 || std::pair(local_[r], c) < std::pair(local_[br], bc);
            if (v > best || (v == best && lex_first)) {
                best = v;
                br = r;
                bc = c;
            }
        }
    }
    if (row) *row = br;
    if (col) *col = bc;
    return best;
}

bool FormSearch::same(const Value& a, const Value& b) const {
    if (a.pivots != b.pivots) return false;
    const double scale = 1.0 + std::max(std::abs(a.weight), std::abs(b.weight));
    return std::abs(a.weight - b.weight) <= 1e-9 * scale;
}

bool FormSearch::better(const Value& a, const Value& b) const {
    if (a.pivots != b.pivots) return a.pivots > b.pivots;
    return !same(a, b) && a.weight > b.weight;
}

std::vector<FormSearch::Value> FormSearch::solve(const PivotWeight* w) const {
    const int m = static_cast<int>(local_.size());
    const std::uint32_t full = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    std::vector<Value> f(std::size_t{1} << m);
    f[full] = {0, 0.0};
    for (std::int64_t uu = static_cast<std::int64_t>(full) - 1; uu >= 0; --uu) {
        const auto u = static_cast<std::uint32_t>(uu);
        const std::uint32_t rest = full & ~u;
        Value best;
        for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
            if (!(union_[u | b] & ~union_[u])) continue;
            const Value& tail = f[u | b];
            if (tail.pivots < 0) continue;
            const double g = block_gain(u, b, w, nullptr, nullptr);
            const Value v{tail.pivots + (g >= 0 ? 1 : 0), tail.weight + std::max(g, 0.0)};
            if (best.pivots < 0 || better(v, best)) best = v;
        }
        f[u] = best;
    }
    return f;
}

StairForm FormSearch::canonical(const std::vector<int>& col_priority) const {
    const int m = static_cast<int>(local_.size());
    const std::uint32_t full = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    std::vector<Transition> path;
    std::uint32_t u = 0;
    while (u != full) {
        const std::uint32_t rest = full & ~u;
        std::uint32_t pick = 0;
        for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
            const std::uint64_t nw = union_[u | b] & ~union_[u];
            if (!nw || steps_[u | b] < 0) continue;
            int gain = 0;
            for (std::uint32_t bb = b; bb; bb &= bb - 1)
                if (nz_[__builtin_ctz(bb)] & nw) gain = 1;
            if (steps_[u | b] + gain * 64 + 1 != steps_[u]) continue;
            if (pick == 0 || block_less(b, pick)) pick = b;
        }
        path.push_back({pick, -1, -1});
        u |= pick;
    }
    return build(path, col_priority).form;
}

FormSearch::Choice FormSearch::build(const std::vector<Transition>& path, const std::vector<int>& col_priority) const {
    std::vector<int> col_rank(p_.cols());
    if (col_priority.empty())
        std::iota(col_rank.begin(), col_rank.end(), 0);
    else
        for (int i = 0; i < p_.cols(); ++i) col_rank.at(col_priority.at(i)) = i;
    auto ordered = [&](std::uint64_t mask) {
        std::vector<int> cols;
        for (int c = 0; c < p_.cols(); ++c)
            if (mask >> c & 1) cols.push_back(c);
        std::sort(cols.begin(), cols.end(), [&](int a, int b) { return col_rank[a] < col_rank[b]; });
        return cols;
    };

    Choice out;
    StairForm& s = out.form;
    s.base = p_;
    s.maximality_certified = true;
    std::uint32_t u = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const std::uint32_t b = path[i].block;
        int height = 0;
        for (std::uint32_t bb = b; bb; bb &= bb - 1) {
            s.row_perm.push_back(local_[__builtin_ctz(bb)]);
            ++height;
        }
        if (i + 1 == path.size()) {
            s.row_perm.insert(s.row_perm.end(), empty_rows_.begin(), empty_rows_.end());
            height += static_cast<int>(empty_rows_.size());
        }
        for (int c : ordered(union_[u | b] & ~union_[u])) s.col_perm.push_back(c);
        u |= b;
        s.steps.push_back({height, __builtin_popcountll(union_[u])});
        if (path[i].pivot_row >= 0)
            out.pivots.push_back({0, 0, local_[path[i].pivot_row], path[i].pivot_col, static_cast<int>(i)});
    }
    if (path.empty()) {
        s.row_perm = empty_rows_;
        s.steps.push_back({p_.rows(), 0});
    }
    const std::uint64_t all = p_.cols() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p_.cols()) - 1;
    for (int c : ordered(all & ~union_[u])) s.col_perm.push_back(c);
    if (!out.pivots.empty()) s = apply_pivots(s, out.pivots);
    return out;
}

FormSearch::Choice FormSearch::best_weighted(const PivotWeight& w, const std::vector<int>& col_priority) const {
    const std::vector<Value> f = solve(&w);
    const int m = static_cast<int>(local_.size());
    const std::uint32_t full = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    std::vector<Transition> path;
    std::uint32_t u = 0;
    while (u != full) {
        const std::uint32_t rest = full & ~u;
        Transition pick;
        for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
            if (!(union_[u | b] & ~union_[u]) || f[u | b].pivots < 0) continue;
            int r = -1, c = -1;
            const double g = block_gain(u, b, &w, &r, &c);
            const Value v{f[u | b].pivots + (g >= 0 ? 1 : 0), f[u | b].weight + std::max(g, 0.0)};
            if (!same(v, f[u])) continue;
            if (pick.block == 0 || block_less(b, pick.block)) pick = {b, r, c};
        }
        path.push_back(pick);
        u |= pick.block;
    }
    Choice out = build(path, col_priority);
    for (const Pivot& pv : out.pivots) out.weight += w(pv.orig_row, pv.orig_col);
    return out;
}

std::vector<FormSearch::Choice> FormSearch::optimal_choices(const PivotWeight* w, bool distinguish_cols,
                                                            std::size_t cap, bool* truncated,
                                                            const std::vector<int>& col_priority) const {
    const std::vector<Value> f = solve(w);
    const int m = static_cast<int>(local_.size());
    const std::uint32_t full = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    using Key = std::pair<std::uint32_t, std::uint64_t>;
    struct Item {
        Key key;
        Transition step;
    };
    std::unordered_map<std::uint32_t, std::vector<Item>> memo;
    bool cut = false;

    std::function<const std::vector<Item>&(std::uint32_t)> collect = [&](std::uint32_t u) -> const std::vector<Item>& {
        auto found = memo.find(u);
        if (found != memo.end()) return found->second;
        std::vector<Item> items;
        if (u == full) {
            items.push_back({{0, 0}, {}});
            return memo.emplace(u, std::move(items)).first->second;
        }
        std::set<Key> seen;
        const std::uint32_t rest = full & ~u;
        for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
            const std::uint64_t nw = union_[u | b] & ~union_[u];
            if (!nw || f[u | b].pivots < 0) continue;
            const double g = block_gain(u, b, w, nullptr, nullptr);
            const Value v{f[u | b].pivots + (g >= 0 ? 1 : 0), f[u | b].weight + std::max(g, 0.0)};
            if (!same(v, f[u])) continue;

            std::vector<std::pair<int, int>> cells;
            if (g >= 0) {
                for (std::uint32_t bb = b; bb; bb &= bb - 1) {
                    const int r = __builtin_ctz(bb);
                    for (std::uint64_t cc = nz_[r] & nw; cc; cc &= cc - 1) {
                        const int c = __builtin_ctzll(cc);
                        const double cw = w ? (*w)(local_[r], c) : 0.0;
                        if (!same({1, cw}, {1, g})) continue;
                        if (!distinguish_cols && !cells.empty() && cells.back().first == r) continue;
                        cells.emplace_back(r, c);
                    }
                }
            } else {
                cells.emplace_back(-1, -1);
            }
            const std::vector<Item>& tail = collect(u | b);
            for (auto [r, c] : cells) {
                for (const Item& t : tail) {
                    Key key = t.key;
                    if (r >= 0) {
                        key.first |= std::uint32_t{1} << r;
                        if (distinguish_cols) key.second |= std::uint64_t{1} << c;
                    }
                    if (!seen.insert(key).second) continue;
                    if (items.size() >= cap) {
                        cut = true;
                        break;
                    }
                    items.push_back({key, {b, r, c}});
                }
            }
        }
        return memo.emplace(u, std::move(items)).first->second;
    };

    const std::vector<Item> roots = collect(0);
    std::vector<Choice> out;
    for (const Item& root : roots) {
        std::vector<Transition> path;
        std::uint32_t u = 0;
        Key key = root.key;
        while (u != full) {
            const auto& items = memo.at(u);
            auto it = std::find_if(items.begin(), items.end(), [&](const Item& i) { return i.key == key; });
            if (it == items.end()) break;
            path.push_back(it->step);
            if (it->step.pivot_row >= 0) {
                key.first &= ~(std::uint32_t{1} << it->step.pivot_row);
                if (distinguish_cols) key.second &= ~(std::uint64_t{1} << it->step.pivot_col);
            }
            u |= it->step.block;
        }
        if (u != full) continue;
        Choice c = build(path, col_priority);
        for (const Pivot& pv : c.pivots) c.weight += w ? (*w)(pv.orig_row, pv.orig_col) : 0.0;
        out.push_back(std::move(c));
    }
    auto sort_key = [](const Choice& c) {
        std::vector<int> rows, cols;
        for (const Pivot& pv : c.pivots) {
            rows.push_back(pv.orig_row);
            cols.push_back(pv.orig_col);
        }
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        return std::pair(rows, cols);
    };
    std::stable_sort(out.begin(), out.end(), [&](const Choice& a, const Choice& b) { return sort_key(a) < sort_key(b); });
    if (truncated) *truncated = cut;
    return out;
}

} // namespace ssco

#include "ssco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "ssco/errors.hpp"
#include "ssco/placement.hpp"
#include "ssco/stair.hpp"
#include "ssco/trials.hpp"

namespace ssco {

void OracleConfig::validate() const {
    if (trials < 1) throw Error("trials must be at least 1");
    if (!(rank_rel_tol > 0 && rank_rel_tol <= 1e-3)) throw Error("rank_rel_tol must lie in (0, 1e-3]");
    for (double v : nonzero_grid)
        if (v == 0) throw Error("the Nonzero grid must exclude 0");
    if (std::find(free_grid.begin(), free_grid.end(), 0.0) == free_grid.end())
        throw Error("the Free grid must include 0");
}

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::AllPassed: return "AllPassed";
    case Outcome::CounterexampleFound: return "CounterexampleFound";
    case Outcome::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

double controllability_ratio(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, cd lambda) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd x(n, n + b.cols());
    x << pencil_at(e, a, lambda), b.cast<cd>();
    return rank_ratio(x, n);
}

bool r_controllable(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol,
                    cd* witness) {
    for (const cd& lambda : pencil_eigenvalues(e, a)) {
        if (controllability_ratio(e, a, b, lambda) < tol) {
            if (witness) *witness = lambda;
            return false;
        }
    }
    return true;
}

bool r_observable(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& c, double tol,
                  cd* witness) {
    return r_controllable(e.transpose(), a.transpose(), c.transpose(), tol, witness);
}

namespace {

enum class Cls { Zero, Must, Any };

Cls pencil_class(Entry e, Entry a, bool lambda_zero) {
    if (lambda_zero || e == Entry::Zero) return a == Entry::Zero ? Cls::Zero : a == Entry::Nonzero ? Cls::Must : Cls::Any;
    if (e == Entry::Nonzero && a == Entry::Zero) return Cls::Must;
    return Cls::Any;
}

Cls entry_class(Entry b) { return b == Entry::Zero ? Cls::Zero : b == Entry::Nonzero ? Cls::Must : Cls::Any; }

double draw(Cls c, Rng& rng, const SampleConfig& cfg, double must_min) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
    switch (c) {
    case Cls::Zero: return 0.0;
    case Cls::Must: return sign * (must_min + (cfg.max_magnitude - must_min) * u01(rng));
    case Cls::Any:
        if (u01(rng) < cfg.free_zero_probability) return 0.0;
        return sign * cfg.max_magnitude * u01(rng);
    }
    return 0.0;
}

/// Draws a value conforming to a single pattern cell.
double draw_entry(Entry p, Rng& rng, const SampleConfig& cfg) { return draw(entry_class(p), rng, cfg, cfg.min_magnitude); }

/// Builds a realization whose [A - lambda0 E | B] has a left null vector supported
/// on the rows that peeling of the lambda0 class pattern cannot remove.
bool adversarial_realization(const PencilPattern& pencil, const Pattern& bp, cd lambda0, Rng& rng,
                             const SampleConfig& cfg, Realization& out) {
    const int n = pencil.n();
    const int q = bp.cols();
    const double l0 = lambda0.real();
    const bool zero = l0 == 0.0;
    std::vector<std::vector<Cls>> cls(n, std::vector<Cls>(n + q));
    Pattern proxy(n, n + q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n + q; ++j) {
            cls[i][j] = j < n ? pencil_class(pencil.e(i, j), pencil.a(i, j), zero) : entry_class(bp(i, j - n));
            proxy(i, j) = cls[i][j] == Cls::Zero ? Entry::Zero : cls[i][j] == Cls::Must ? Entry::Nonzero : Entry::Free;
        }
    const std::vector<int> stuck = ramp_uncovered(proxy);
    if (stuck.empty()) return false;
    std::vector<char> in_s(n, 0);
    for (int r : stuck) in_s[r] = 1;

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int r : stuck) y(r) = (u01(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * u01(rng));

    const double must_min = cfg.min_magnitude * std::max(1.0, std::abs(l0));
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n + q);
    for (int j = 0; j < n + q; ++j) {
        std::vector<int> live;
        for (int r = 0; r < n; ++r) {
            if (!in_s[r]) v(r, j) = draw(cls[r][j], rng, cfg, must_min);
            else if (cls[r][j] != Cls::Zero) live.push_back(r);
        }
        if (live.empty()) continue;
        int bal = live.back();
        for (int r : live)
            if (cls[r][j] == Cls::Any) bal = r;
        bool ok = false;
        for (int attempt = 0; attempt < 32 && !ok; ++attempt) {
            double acc = 0.0;
            for (int r : live) {
                if (r == bal) continue;
                v(r, j) = draw(cls[r][j], rng, cfg, must_min);
                acc += y(r) * v(r, j);
            }
            const double val = -acc / y(bal);
            if (std::abs(val) > cfg.max_magnitude) continue;
            if (cls[bal][j] == Cls::Must && std::abs(val) < must_min) continue;
            v(bal, j) = val;
            ok = true;
        }
        if (!ok) return false;
    }

    Realization r;
    r.e = Eigen::MatrixXd::Zero(n, n);
    r.a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Entry ep = pencil.e(i, j), ap = pencil.a(i, j);
            if (zero) {
                r.e(i, j) = draw_entry(ep, rng, cfg);
                r.a(i, j) = v(i, j);
                continue;
            }
            if (ap == Entry::Zero) {
                const double ev = -v(i, j) / l0;
                if (ep == Entry::Zero && ev != 0) return false;
                if (ep == Entry::Nonzero && std::abs(ev) < cfg.min_magnitude) return false;
                r.e(i, j) = ev;
                continue;
            }
            bool ok = false;
            for (int attempt = 0; attempt < 32 && !ok; ++attempt) {
                const double ev = draw_entry(ep, rng, cfg);
                const double av = v(i, j) + l0 * ev;
                if (ap == Entry::Nonzero && std::abs(av) < cfg.min_magnitude) continue;
                r.e(i, j) = ev;
                r.a(i, j) = av;
                ok = true;
            }
            if (!ok) return false;
        }
    r.b = v.rightCols(q);
    r.c = Eigen::MatrixXd(0, n);
    r.regular = is_regular_pencil(r.e, r.a);
    if (!r.regular) return false;
    out = std::move(r);
    return true;
}

/// Mixed-radix enumeration of the value grid over every non-Zero cell of E, A and B.
struct Grid {
    struct Cell {
        int mat;  ///< 0 = E, 1 = A, 2 = B
        int r, c;
        const std::vector<double>* values;
    };
    std::vector<Cell> cells;
    std::size_t total = 1;
    bool overflow = false;

    Grid(const PencilPattern& pencil, const Pattern& b, const OracleConfig& cfg) {
        auto add = [&](int mat, const Pattern& p) {
            for (int r = 0; r < p.rows(); ++r)
                for (int c = 0; c < p.cols(); ++c) {
                    if (p(r, c) == Entry::Zero) continue;
                    const auto* vals = p(r, c) == Entry::Nonzero ? &cfg.nonzero_grid : &cfg.free_grid;
                    cells.push_back({mat, r, c, vals});
                    if (total > cfg.grid_cap) overflow = true;
                    else total *= vals->size();
                }
        };
        add(0, pencil.e);
        add(1, pencil.a);
        add(2, b);
        if (total > cfg.grid_cap) overflow = true;
    }

    Realization point(std::size_t index, int n, int q) const {
        Realization r;
        r.e = Eigen::MatrixXd::Zero(n, n);
        r.a = Eigen::MatrixXd::Zero(n, n);
        r.b = Eigen::MatrixXd::Zero(n, q);
        r.c = Eigen::MatrixXd(0, n);
        for (const Cell& cell : cells) {
            const std::size_t k = cell.values->size();
            const double v = (*cell.values)[index % k];
            index /= k;
            (cell.mat == 0 ? r.e : cell.mat == 1 ? r.a : r.b)(cell.r, cell.c) = v;
        }
        r.regular = is_regular_pencil(r.e, r.a);
        return r;
    }
};

/// One constructive attempt: lambda0 alternates between 0 and a random real value.
bool adversarial_attempt(const PencilPattern& pencil, const Pattern& bp, std::uint64_t seed, std::int64_t t,
                         const SampleConfig& cfg, Realization& out, cd& lambda) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> u(1.0, 3.0);
    lambda = t % 2 == 0 ? cd(0.0, 0.0) : cd((t % 4 == 1 ? 1.0 : -1.0) * u(rng), 0.0);
    return adversarial_realization(pencil, bp, lambda, rng, cfg, out);
}

bool controllability_failure(const Realization& r, double tol, cd* lambda) {
    if (!r.regular) return false;
    return !r_controllable(r.e, r.a, r.b, tol, lambda);
}

Counterexample make_controllability(const Realization& r, cd lambda, double tol, const char* phase, std::int64_t trial) {
    Counterexample cx;
    cx.kind = "controllability";
    cx.phase = phase;
    cx.trial = trial;
    cx.realization = r;
    cx.lambda = lambda;
    cx.tolerance = tol;
    cx.ratio = controllability_ratio(r.e, r.a, r.b, lambda);
    return cx;
}

} // namespace

OracleVerdict falsify_sssc(const PencilPattern& pencil, const Pattern& b, const OracleConfig& config) {
    config.validate();
    pencil.validate();
    if (b.rows() != pencil.n()) throw DimensionError("B must have n rows");
    const int n = pencil.n();
    const double tol = config.rank_rel_tol;
    OracleVerdict verdict;

    // Phase 1: random realizations with Free cells sometimes zeroed.
    const std::uint64_t random_seed = derive_seed(config.seed, 1);
    auto random_real = [&](std::int64_t t) {
        return sample_realization(pencil, derive_seed(random_seed, static_cast<std::uint64_t>(t)), config.sample, &b);
    };
    bool reachable = true;
    try {
        random_real(0);
    } catch (const RegularityUnreachable&) {
        reachable = false;
        verdict.notes.push_back("no regular realization was drawn; random phase skipped");
    }
    if (reachable) {
        const std::int64_t hit = parallel_first_failure(
            config.trials, [&](std::int64_t t) { return controllability_failure(random_real(t), tol, nullptr); },
            config.threads);
        verdict.trials_run += hit < 0 ? config.trials : hit + 1;
        if (hit >= 0) {
            const Realization r = random_real(hit);
            cd lambda;
            controllability_failure(r, tol, &lambda);
            verdict.outcome = Outcome::CounterexampleFound;
            verdict.counterexample = make_controllability(r, lambda, tol, "random", hit);
            return verdict;
        }
    }

    // Phase 2: constructive left null vectors at lambda0 = 0 and at random real lambda0.
    const std::uint64_t adv_seed = derive_seed(config.seed, 2);
    auto adversarial = [&](std::int64_t t, Realization& out, cd& lambda) {
        if (!adversarial_attempt(pencil, b, adv_seed, t, config.sample, out, lambda)) return false;
        return controllability_ratio(out.e, out.a, out.b, lambda) < tol;
    };
    const std::int64_t adv_hit = parallel_first_failure(
        config.adversarial_attempts,
        [&](std::int64_t t) {
            Realization r;
            cd l;
            return adversarial(t, r, l);
        },
        config.threads);
    verdict.trials_run += adv_hit < 0 ? config.adversarial_attempts : adv_hit + 1;
    if (adv_hit >= 0) {
        Realization r;
        cd lambda;
        adversarial(adv_hit, r, lambda);
        verdict.outcome = Outcome::CounterexampleFound;
        verdict.counterexample = make_controllability(r, lambda, tol, "adversarial", adv_hit);
        return verdict;
    }

    // Phase 3: exhaustive value grid on small instances.
    if (n <= config.grid_max_n) {
        const Grid grid(pencil, b, config);
        if (grid.overflow) {
            verdict.notes.push_back("value grid exceeds the cap; grid phase skipped");
        } else {
            const auto total = static_cast<std::int64_t>(grid.total);
            const std::int64_t hit = parallel_first_failure(
                total,
                [&](std::int64_t t) {
                    return controllability_failure(grid.point(static_cast<std::size_t>(t), n, b.cols()), tol, nullptr);
                },
                config.threads);
            verdict.trials_run += hit < 0 ? total : hit + 1;
            if (hit >= 0) {
                const Realization r = grid.point(static_cast<std::size_t>(hit), n, b.cols());
                cd lambda;
                controllability_failure(r, tol, &lambda);
                verdict.outcome = Outcome::CounterexampleFound;
                verdict.counterexample = make_controllability(r, lambda, tol, "grid", hit);
                return verdict;
            }
            verdict.notes.push_back("exhaustive grid of " + std::to_string(total) + " points checked");
        }
    }
    verdict.outcome = Outcome::BudgetExhausted;
    verdict.notes.push_back("no counterexample found; sampling cannot prove controllability for the whole class");
    return verdict;
}

namespace {

/// Sensors whose data still reaches an actuator outside the subset.
std::vector<int> retained_sensors(const std::vector<char>& sensor_alive, const std::vector<char>& actuator_alive,
                                  const std::vector<std::pair<int, int>>& channels, const std::vector<char>& in_subset) {
    std::vector<char> keep(sensor_alive.size(), 0);
    for (auto [act, sen] : channels)
        if (actuator_alive[act] && sensor_alive[sen] && !in_subset[act]) keep[sen] = 1;
    std::vector<int> out;
    for (std::size_t s = 0; s < keep.size(); ++s)
        if (keep[s]) out.push_back(static_cast<int>(s));
    return out;
}

/// [[A - lambda E, B(:, subset)], [C(sensors, :), 0]].
Eigen::MatrixXcd bordered(const Eigen::MatrixXcd& m, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c,
                          const std::vector<int>& subset, const std::vector<int>& sensors) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n + sensors.size(), n + subset.size());
    x.topLeftCorner(n, n) = m;
    for (std::size_t j = 0; j < subset.size(); ++j) x.block(0, n + j, n, 1) = b.col(subset[j]).cast<cd>();
    for (std::size_t i = 0; i < sensors.size(); ++i) x.block(n + i, 0, 1, n) = c.row(sensors[i]).cast<cd>();
    return x;
}

/// Bordered rank tests of one realization, memoized per eigenvalue and (subset, sensors).
class ModeTester {
public:
    ModeTester(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c,
               double tol)
        : b_(b), c_(c), tol_(tol) {
        for (const cd& lambda : pencil_eigenvalues(e, a)) points_.push_back({lambda, pencil_at(e, a, lambda), {}});
    }

    /// Fixed modes (at most one per eigenvalue) with the given actuators, sensors and
    /// channels alive; stops after the first when first_only is set.
    std::vector<FixedMode> search(const std::vector<char>& actuator_alive, const std::vector<char>& sensor_alive,
                                  const std::vector<std::pair<int, int>>& channels, bool first_only) {
        std::vector<FixedMode> modes;
        const int p = static_cast<int>(actuator_alive.size());
        std::vector<int> alive;
        for (int i = 0; i < p; ++i)
            if (actuator_alive[i]) alive.push_back(i);
        for (Point& pt : points_) {
            std::optional<FixedMode> found;
            std::vector<int> subset;
            std::vector<char> in_subset(p, 0);
            std::function<void(std::size_t)> dfs = [&](std::size_t start) {
                if (!subset.empty() && ratio(pt, subset, {}) >= tol_) return;  // supersets stay full rank
                const std::vector<int> sensors = retained_sensors(sensor_alive, actuator_alive, channels, in_subset);
                if (ratio(pt, {}, sensors) < tol_) {
                    const double r = ratio(pt, subset, sensors);
                    if (r < tol_) {
                        found = FixedMode{pt.lambda, subset, sensors, r};
                        return;
                    }
                }
                for (std::size_t k = start; k < alive.size() && !found; ++k) {
                    subset.push_back(alive[k]);
                    in_subset[alive[k]] = 1;
                    dfs(k + 1);
                    in_subset[alive[k]] = 0;
                    subset.pop_back();
                }
            };
            dfs(0);
            if (found) {
                modes.push_back(*found);
                if (first_only) break;
            }
        }
        return modes;
    }

private:
    struct Point {
        cd lambda;
        Eigen::MatrixXcd m;
        std::map<std::pair<std::vector<int>, std::vector<int>>, double> memo;
    };

    double ratio(Point& pt, const std::vector<int>& subset, const std::vector<int>& sensors) {
        auto key = std::make_pair(subset, sensors);
        const auto it = pt.memo.find(key);
        if (it != pt.memo.end()) return it->second;
        const double r = rank_ratio(bordered(pt.m, b_, c_, subset, sensors), static_cast<int>(pt.m.rows()));
        pt.memo.emplace(std::move(key), r);
        return r;
    }

    const Eigen::MatrixXd& b_;
    const Eigen::MatrixXd& c_;
    double tol_;
    std::vector<Point> points_;
};

void check_channels(int p, int m, const std::vector<std::pair<int, int>>& channels) {
    for (auto [act, sen] : channels)
        if (act < 0 || act >= p || sen < 0 || sen >= m) throw DimensionError("channel outside the design");
}

} // namespace

std::vector<FixedMode> fixed_modes(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const Eigen::MatrixXd& c, const std::vector<std::pair<int, int>>& channels,
                                   double tol) {
    const int n = static_cast<int>(a.rows());
    const int p = static_cast<int>(b.cols());
    const int m = static_cast<int>(c.rows());
    if (b.rows() != n || c.cols() != n) throw DimensionError("B and C must match the state dimension");
    if (p > 16) throw SubsetBudgetExceeded("more than 16 actuators; use sampled verification");
    check_channels(p, m, channels);
    ModeTester tester(e, a, b, c, tol);
    return tester.search(std::vector<char>(p, 1), std::vector<char>(m, 1), channels, false);
}

void apply_scenario(const Scenario& s, Eigen::MatrixXd& b, Eigen::MatrixXd& c,
                    std::vector<std::pair<int, int>>& channels) {
    const int p = static_cast<int>(b.cols());
    const int m = static_cast<int>(c.rows());
    std::vector<int> act_map(p, -1), sen_map(m, -1);
    std::vector<char> drop_a(p, 0), drop_s(m, 0);
    for (int a : s.actuators) drop_a.at(a) = 1;
    for (int x : s.sensors) drop_s.at(x) = 1;
    std::vector<int> keep_a, keep_s;
    for (int a = 0; a < p; ++a)
        if (!drop_a[a]) {
            act_map[a] = static_cast<int>(keep_a.size());
            keep_a.push_back(a);
        }
    for (int x = 0; x < m; ++x)
        if (!drop_s[x]) {
            sen_map[x] = static_cast<int>(keep_s.size());
            keep_s.push_back(x);
        }
    Eigen::MatrixXd nb(b.rows(), keep_a.size()), nc(keep_s.size(), c.cols());
    for (std::size_t j = 0; j < keep_a.size(); ++j) nb.col(j) = b.col(keep_a[j]);
    for (std::size_t i = 0; i < keep_s.size(); ++i) nc.row(i) = c.row(keep_s[i]);
    std::vector<std::pair<int, int>> nch;
    for (auto ch : channels) {
        if (std::find(s.channels.begin(), s.channels.end(), ch) != s.channels.end()) continue;
        if (act_map.at(ch.first) < 0 || sen_map.at(ch.second) < 0) continue;
        nch.emplace_back(act_map[ch.first], sen_map[ch.second]);
    }
    b = std::move(nb);
    c = std::move(nc);
    channels = std::move(nch);
}

std::vector<Scenario> strike_scenarios(int actuators, int sensors, const std::vector<std::pair<int, int>>& channels,
                                       int max_strikes, std::size_t cap, std::uint64_t seed, bool* sampled) {
    const int total = actuators + sensors + static_cast<int>(channels.size());
    auto to_scenario = [&](const std::vector<int>& items) {
        Scenario s;
        for (int it : items) {
            if (it < actuators) s.actuators.push_back(it);
            else if (it < actuators + sensors) s.sensors.push_back(it - actuators);
            else s.channels.push_back(channels[it - actuators - sensors]);
        }
        return s;
    };
    const int depth = std::min(std::max(max_strikes, 0), total);
    // Count the scenarios; stop once the cap is passed.
    double count = 0, binom = 1;
    for (int j = 0; j <= depth; ++j) {
        if (j > 0) binom = binom * (total - j + 1) / j;
        count += binom;
    }
    std::vector<Scenario> out;
    if (count <= static_cast<double>(cap)) {
        if (sampled) *sampled = false;
        std::vector<int> items;
        std::function<void(int)> rec = [&](int start) {
            out.push_back(to_scenario(items));
            if (static_cast<int>(items.size()) == depth) return;
            for (int i = start; i < total; ++i) {
                items.push_back(i);
                rec(i + 1);
                items.pop_back();
            }
        };
        rec(0);
        std::stable_sort(out.begin(), out.end(), [](const Scenario& x, const Scenario& y) {
            const auto sx = x.actuators.size() + x.sensors.size() + x.channels.size();
            const auto sy = y.actuators.size() + y.sensors.size() + y.channels.size();
            return sx < sy;
        });
        return out;
    }
    if (sampled) *sampled = true;
    Rng rng(seed);
    out.push_back(Scenario{});
    std::uniform_int_distribution<int> size_dist(1, depth);
    while (out.size() < cap) {
        const int size = size_dist(rng);
        std::vector<int> pool(total);
        for (int i = 0; i < total; ++i) pool[i] = i;
        std::vector<int> items;
        for (int j = 0; j < size; ++j) {
            std::uniform_int_distribution<int> pick(j, total - 1);
            std::swap(pool[j], pool[pick(rng)]);
            items.push_back(pool[j]);
        }
        std::sort(items.begin(), items.end());
        out.push_back(to_scenario(items));
    }
    return out;
}

OracleVerdict verify_design(const CodesignResult& design, const PencilPattern& pencil, const OracleConfig& config) {
    config.validate();
    pencil.validate();
    const int n = pencil.n();
    const Pattern bp = dedicated_columns(n, design.actuation.indices);
    const Pattern cp = dedicated_rows(n, design.sensing.indices);
    const std::vector<std::pair<int, int>>& channels = design.info.channels;
    const int strikes = config.max_strikes < 0 ? design.actuation.k : config.max_strikes;
    bool sampled = false;
    const std::vector<Scenario> scenarios =
        strike_scenarios(bp.cols(), cp.rows(), channels, strikes, config.strike_cap, derive_seed(config.seed, 7), &sampled);

    OracleVerdict verdict;
    verdict.notes.push_back("sampling-based: " + std::to_string(config.trials) + " realizations x " +
                            std::to_string(scenarios.size()) + " strike scenarios" + (sampled ? " (sampled)" : ""));
    const std::uint64_t base = derive_seed(config.seed, 3);
    auto realize = [&](std::int64_t t) {
        return sample_realization(pencil, derive_seed(base, static_cast<std::uint64_t>(t)), config.sample, &bp, &cp);
    };
    try {
        realize(0);
    } catch (const RegularityUnreachable&) {
        verdict.outcome = Outcome::BudgetExhausted;
        verdict.notes.push_back("no regular realization was drawn");
        return verdict;
    }
    const int p = bp.cols();
    const int m = cp.rows();
    if (p > 16) throw SubsetBudgetExceeded("more than 16 actuators; use sampled verification");
    check_channels(p, m, channels);
    struct Alive {
        std::vector<char> actuators, sensors;
        std::vector<std::pair<int, int>> channels;
    };
    std::vector<Alive> alive;
    for (const Scenario& s : scenarios) {
        Alive a{std::vector<char>(p, 1), std::vector<char>(m, 1), {}};
        for (int i : s.actuators) a.actuators[i] = 0;
        for (int i : s.sensors) a.sensors[i] = 0;
        for (const auto& c : channels)
            if (std::find(s.channels.begin(), s.channels.end(), c) == s.channels.end()) a.channels.push_back(c);
        alive.push_back(std::move(a));
    }
    // Searches one realization over the listed scenarios.
    auto check = [&](const Realization& r, const std::vector<std::size_t>& which, Counterexample* out) {
        ModeTester tester(r.e, r.a, r.b, r.c, config.rank_rel_tol);
        for (std::size_t si : which) {
            const auto modes = tester.search(alive[si].actuators, alive[si].sensors, alive[si].channels, true);
            if (modes.empty()) continue;
            if (out) {
                out->kind = "fixed_mode";
                out->realization = r;
                out->lambda = modes.front().lambda;
                out->ratio = modes.front().ratio;
                out->tolerance = config.rank_rel_tol;
                out->scenario = scenarios[si];
                out->subset = modes.front().subset;
                out->retained_sensors = modes.front().retained_sensors;
                out->channels = alive[si].channels;
            }
            return true;
        }
        return false;
    };
    std::vector<std::size_t> every(scenarios.size());
    for (std::size_t i = 0; i < every.size(); ++i) every[i] = i;

    // Phase 1: random realizations against every scenario.
    const std::int64_t hit = parallel_first_failure(
        config.trials, [&](std::int64_t t) { return check(realize(t), every, nullptr); }, config.threads);
    verdict.trials_run = hit < 0 ? config.trials : hit + 1;
    if (hit >= 0) {
        Counterexample cx;
        check(realize(hit), every, &cx);
        cx.phase = "verify";
        cx.trial = hit;
        verdict.outcome = Outcome::CounterexampleFound;
        verdict.counterexample = std::move(cx);
        return verdict;
    }

    // Phase 2: scenarios whose surviving actuators (all of I) or surviving fed sensors
    // (I empty) lack a ramp certificate get constructive rank-deficient realizations.
    struct Target {
        std::size_t scenario;
        bool observability;
        std::vector<int> states;  ///< actuated or sensed states of the surviving items
        std::vector<int> labels;  ///< their labels
    };
    std::vector<Target> targets;
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        Target act{si, false, {}, {}}, obs{si, true, {}, {}};
        for (int i = 0; i < p; ++i)
            if (alive[si].actuators[i]) {
                act.states.push_back(design.actuation.indices[i]);
                act.labels.push_back(i);
            }
        const std::vector<int> fed =
            retained_sensors(alive[si].sensors, alive[si].actuators, alive[si].channels, std::vector<char>(p, 0));
        for (int s : fed) {
            obs.states.push_back(design.sensing.indices[s]);
            obs.labels.push_back(s);
        }
        if (sssc_check(pencil, dedicated_columns(n, act.states)) != Certificate::Certified) targets.push_back(act);
        if (ssso_check(pencil, dedicated_rows(n, obs.states)) != Certificate::Certified) targets.push_back(obs);
    }
    if (targets.empty() || config.adversarial_attempts == 0) {
        verdict.outcome = Outcome::AllPassed;
        return verdict;
    }
    const std::uint64_t adv_seed = derive_seed(config.seed, 4);
    const std::int64_t attempts = config.adversarial_attempts;
    auto build = [&](std::int64_t idx, Realization& out) {
        const Target& tg = targets[static_cast<std::size_t>(idx / attempts)];
        const std::int64_t t = idx % attempts;
        const PencilPattern pp = tg.observability ? pencil.transpose() : pencil;
        Realization part;
        cd lambda;
        if (!adversarial_attempt(pp, dedicated_columns(n, tg.states), derive_seed(adv_seed, idx / attempts), t,
                                 config.sample, part, lambda))
            return false;
        Rng rng(derive_seed(derive_seed(adv_seed, 1u << 20), static_cast<std::uint64_t>(idx)));
        out.e = tg.observability ? Eigen::MatrixXd(part.e.transpose()) : part.e;
        out.a = tg.observability ? Eigen::MatrixXd(part.a.transpose()) : part.a;
        out.b = sample_matrix(bp, rng, config.sample);
        out.c = sample_matrix(cp, rng, config.sample);
        for (std::size_t j = 0; j < tg.labels.size(); ++j) {
            if (tg.observability)
                out.c.row(tg.labels[j]) = part.b.col(static_cast<Eigen::Index>(j)).transpose();
            else
                out.b.col(tg.labels[j]) = part.b.col(static_cast<Eigen::Index>(j));
        }
        out.regular = true;
        return true;
    };
    const std::int64_t total = attempts * static_cast<std::int64_t>(targets.size());
    const std::int64_t adv_hit = parallel_first_failure(
        total,
        [&](std::int64_t idx) {
            Realization r;
            if (!build(idx, r)) return false;
            return check(r, {targets[static_cast<std::size_t>(idx / attempts)].scenario}, nullptr);
        },
        config.threads);
    verdict.trials_run += adv_hit < 0 ? total : adv_hit + 1;
    if (adv_hit < 0) {
        verdict.outcome = Outcome::AllPassed;
        verdict.notes.push_back(std::to_string(targets.size()) +
                                " scenario checks lack a ramp certificate; constructive search found no fixed mode");
        return verdict;
    }
    Realization r;
    build(adv_hit, r);
    Counterexample cx;
    check(r, {targets[static_cast<std::size_t>(adv_hit / attempts)].scenario}, &cx);
    cx.phase = "adversarial";
    cx.trial = adv_hit;
    verdict.outcome = Outcome::CounterexampleFound;
    verdict.counterexample = std::move(cx);
    return verdict;
}

bool replay_counterexample(const Counterexample& cx, const PencilPattern& pencil, const Pattern* b, const Pattern* c,
                           std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    const Realization& r = cx.realization;
    const double min_mag = 0.0;
    if (r.e.rows() != pencil.n() || r.a.rows() != pencil.n()) return fail("realization dimensions differ from the pencil");
    if (!conforms(r.e, pencil.e, min_mag) || !conforms(r.a, pencil.a, min_mag))
        return fail("E or A does not conform to its pattern");
    if (b && (r.b.rows() != b->rows() || r.b.cols() != b->cols() || !conforms(r.b, *b, min_mag)))
        return fail("B does not conform to its pattern");
    if (c && (r.c.rows() != c->rows() || r.c.cols() != c->cols() || !conforms(r.c, *c, min_mag)))
        return fail("C does not conform to its pattern");
    if (!is_regular_pencil(r.e, r.a)) return fail("pencil is not regular");
    if (cx.kind == "controllability") {
        const double ratio = controllability_ratio(r.e, r.a, r.b, cx.lambda);
        if (!(ratio < cx.tolerance)) return fail("rank[A - lambda E | B] is full at the reported lambda");
        return true;
    }
    if (cx.kind == "fixed_mode") {
        const int p = static_cast<int>(r.b.cols());
        const int m = static_cast<int>(r.c.rows());
        std::vector<char> act_alive(p, 1), sen_alive(m, 1), in_subset(p, 0);
        for (int i : cx.scenario.actuators) {
            if (i < 0 || i >= p) return fail("struck actuator outside the design");
            act_alive[i] = 0;
        }
        for (int i : cx.scenario.sensors) {
            if (i < 0 || i >= m) return fail("struck sensor outside the design");
            sen_alive[i] = 0;
        }
        for (int i : cx.subset) {
            if (i < 0 || i >= p || !act_alive[i]) return fail("subset label outside the surviving design");
            in_subset[i] = 1;
        }
        for (auto [act, sen] : cx.channels)
            if (act < 0 || act >= p || sen < 0 || sen >= m) return fail("channel outside the design");
        if (retained_sensors(sen_alive, act_alive, cx.channels, in_subset) != cx.retained_sensors)
            return fail("retained sensors do not match the channels");
        const Eigen::MatrixXcd x =
            bordered(pencil_at(r.e, r.a, cx.lambda), r.b, r.c, cx.subset, cx.retained_sensors);
        if (!(rank_ratio(x, pencil.n()) < cx.tolerance)) return fail("bordered matrix has full rank at the reported lambda");
        return true;
    }
    return fail("unknown counterexample kind '" + cx.kind + "'");
}

} // namespace ssco

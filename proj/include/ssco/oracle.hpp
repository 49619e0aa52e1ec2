#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ssco/codesign.hpp"
#include "ssco/linalg.hpp"
#include "ssco/pattern.hpp"
#include "ssco/realization.hpp"

namespace ssco {

struct OracleConfig {
    int trials = 200;
    double rank_rel_tol = 1e-8;
    std::vector<double> nonzero_grid{-2.0, -1.0, 1.0, 2.0};
    std::vector<double> free_grid{-1.0, 0.0, 1.0};
    std::uint64_t seed = 1;
    SampleConfig sample;
    int threads = 0;                  ///< 0: SSCO_THREADS or the OpenMP default
    int adversarial_attempts = 200;   ///< constructive attempts in the second phase
    std::size_t grid_cap = 1000000;   ///< largest exhaustive grid
    int grid_max_n = 4;               ///< exhaustive grid only up to this n
    std::size_t strike_cap = 10000;   ///< strike scenarios replayed exhaustively up to this count
    int max_strikes = -1;             ///< -1: the design's k

    /// Throws Error unless the invariants hold.
    void validate() const;
};

enum class Outcome { AllPassed, CounterexampleFound, BudgetExhausted };

/// Items removed from a design before a check.
struct Scenario {
    std::vector<int> actuators;                 ///< actuator labels (columns of B)
    std::vector<int> sensors;                   ///< sensor labels (rows of C)
    std::vector<std::pair<int, int>> channels;  ///< (actuator label, sensor label)
    bool empty() const { return actuators.empty() && sensors.empty() && channels.empty(); }
};

/// Numeric evidence of rank deficiency, re-verifiable from its fields alone.
struct Counterexample {
    std::string kind;   ///< "controllability" or "fixed_mode"
    std::string phase;  ///< random, adversarial, grid or verify
    std::int64_t trial = 0;
    Realization realization;
    cd lambda{0.0, 0.0};
    double ratio = 0.0;  ///< sigma_n / sigma_max after equilibration
    double tolerance = 0.0;
    Scenario scenario;
    // Labels below refer to the full design, before the scenario is applied.
    std::vector<int> subset;                    ///< actuator subset I of the bordered test
    std::vector<int> retained_sensors;          ///< J(I) of the bordered test
    std::vector<std::pair<int, int>> channels;  ///< channels that survive the scenario
};

struct OracleVerdict {
    Outcome outcome = Outcome::BudgetExhausted;
    std::optional<Counterexample> counterexample;
    std::int64_t trials_run = 0;
    std::vector<std::string> notes;
};

/// rank_ratio of [A - lambda E | B] for rank n.
double controllability_ratio(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, cd lambda);

/// rank[A - lambda E | B] = n at every finite eigenvalue. Throws SingularPencil.
bool r_controllable(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                    double rank_rel_tol = 1e-8, cd* witness = nullptr);
/// Transposed test with C.
bool r_observable(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                  double rank_rel_tol = 1e-8, cd* witness = nullptr);

/// Searches for a regular realization of (pencil, b) that is not R-controllable:
/// random sampling, constructive left null vectors, then the exhaustive grid.
OracleVerdict falsify_sssc(const PencilPattern& pencil, const Pattern& b, const OracleConfig& config);

/// A fixed mode with the actuator subset and retained sensors that expose it.
struct FixedMode {
    cd lambda;
    std::vector<int> subset;
    std::vector<int> retained_sensors;
    double ratio = 0.0;
};

/// Fixed modes of (E, A, B, C) under the channel list, by the bordered rank test
/// over actuator subsets. Throws SubsetBudgetExceeded for more than 16 actuators.
std::vector<FixedMode> fixed_modes(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const Eigen::MatrixXd& c, const std::vector<std::pair<int, int>>& channels,
                                   double rank_rel_tol = 1e-8);

/// Samples realizations of a design and checks every strike scenario of size <= k.
OracleVerdict verify_design(const CodesignResult& design, const PencilPattern& pencil, const OracleConfig& config);

/// Re-verifies a stored counterexample against its patterns; returns a reason on failure.
bool replay_counterexample(const Counterexample& cx, const PencilPattern& pencil, const Pattern* b, const Pattern* c,
                           std::string* reason = nullptr);

/// Applies a strike scenario to a design matrix set.
void apply_scenario(const Scenario& s, Eigen::MatrixXd& b, Eigen::MatrixXd& c,
                    std::vector<std::pair<int, int>>& channels);

/// Every strike scenario with at most max_strikes items, or a deterministic sample of cap of them.
std::vector<Scenario> strike_scenarios(int actuators, int sensors, const std::vector<std::pair<int, int>>& channels,
                                       int max_strikes, std::size_t cap, std::uint64_t seed, bool* sampled = nullptr);

const char* to_string(Outcome o);

} // namespace ssco

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssco/pattern.hpp"
#include "ssco/stair.hpp"

namespace ssco {

enum class SolutionKind { Actuation, Sensing };

/// Which stair forms a design may draw its pivots from.
enum class FormScope {
    Pinned,      ///< the single maximal form selected by the stair priorities
    AllMaximal,  ///< every stair form with the maximum pivot count
};

enum class Certificate { Certified, Inconclusive };

/// Placement weights; an empty matrix means every placed cell costs uniform_weight.
struct CostMatrix {
    Eigen::MatrixXd weights;
    double uniform_weight = 1.0;

    bool is_uniform() const { return weights.size() == 0; }
    double at(int r, int c) const { return is_uniform() ? uniform_weight : weights(r, c); }
};

/// Checks a cost matrix against its frame. Throws CostDimensionError on a shape
/// mismatch and Error on negative or non-finite weights; returns warnings.
std::vector<std::string> validate_cost(const CostMatrix& cost, int rows, int cols, SolutionKind kind);

struct PlacementOptions {
    int k = 0;
    FormScope scope = FormScope::AllMaximal;
    StairOptions stair;
    CostMatrix cost;
    std::size_t alternatives_cap = 100000;
};

/// Dedicated actuators (or sensors) with their generating pivot collection.
struct DedicatedSolution {
    SolutionKind kind = SolutionKind::Actuation;
    std::vector<int> indices;   ///< copy-major multiset: base repeated k+1 times
    std::vector<int> base;      ///< sorted base solution
    std::vector<Pivot> pivots;  ///< in the coordinates of form
    double cost = 0.0;
    int k = 0;
    StairForm form;  ///< normalized form of the lambda pattern (transposed for sensing)
    std::vector<std::string> diagnostics;
};

struct PlacementResult {
    DedicatedSolution best;
    std::vector<DedicatedSolution> alternatives;  ///< every optimal base solution (k = 0 view)
    bool truncated = false;
    bool unique = false;
};

/// Base solution of a pivot collection: the rows of form without a pivot.
DedicatedSolution dedicated_actuators(const StairForm& form, const std::vector<Pivot>& pivots);

/// Cost of the materialized B (n x (k+1)n) or C ((k+1)n x n) of a copy-major multiset.
double placement_cost(SolutionKind kind, const std::vector<int>& indices, const CostMatrix& cost);

/// Minimum-cost k-resilient dedicated actuators for the lambda pattern of pencil.
PlacementResult place_actuators(const PencilPattern& pencil, const PlacementOptions& options);
/// Dual sensor placement: actuators of the transposed pencil with the transposed cost.
PlacementResult place_sensors(const PencilPattern& pencil, const PlacementOptions& options);

DedicatedSolution resilient_actuators(const PencilPattern& pencil, int k, const CostMatrix& cost = {});
DedicatedSolution resilient_sensors(const PencilPattern& pencil, int k, const CostMatrix& cost = {});

/// Ramp certificate for [lambda pattern | B].
Certificate sssc_check(const PencilPattern& pencil, const Pattern& b);
/// Ramp certificate for [lambda pattern ; C].
Certificate ssso_check(const PencilPattern& pencil, const Pattern& c);

/// n x (k+1)n input pattern of a solution, zero columns after the effective ones.
Pattern materialize_inputs(const DedicatedSolution& s, int n);
/// (k+1)n x n output pattern of a solution, zero rows after the effective ones.
Pattern materialize_outputs(const DedicatedSolution& s, int n);

/// Row weight of a state for actuation (mean over the row of W^B) or sensing (column mean of W^C).
std::vector<double> state_weights(const CostMatrix& cost, int n, SolutionKind kind);

const char* to_string(SolutionKind k);
const char* to_string(FormScope s);
const char* to_string(Certificate c);

} // namespace ssco

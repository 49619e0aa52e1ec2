#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ssco/pattern.hpp"
#include "ssco/placement.hpp"
#include "ssco/stair.hpp"

namespace ssco {

/// One sensor-to-actuator channel between index-mates.
struct IndexMate {
    int actuator = 0;        ///< effective actuator label (column of B in the (k+1)n frame)
    int sensor = 0;          ///< effective sensor label (row of C in the (k+1)n frame)
    int actuator_state = 0;  ///< state driven by the actuator
    int sensor_state = 0;    ///< state read by the sensor
    std::pair<int, int> diagonal_cell{0, 0};  ///< (row, col) position in the stair form
    double channel_cost = 0.0;
    bool operator==(const IndexMate&) const = default;
};

/// Binary sensor-to-actuator availability pattern with the mates that produced it.
struct InformationPattern {
    int p = 0;  ///< effective actuators
    int m = 0;  ///< effective sensors
    std::vector<std::pair<int, int>> channels;  ///< (actuator label, sensor label)
    std::vector<IndexMate> mates;

    /// frame x frame pattern with Nonzero at every channel.
    Pattern materialize(int frame) const;
};

struct CodesignOptions {
    int k = 0;
    FormScope scope = FormScope::AllMaximal;
    StairOptions stair;
    CostMatrix wb;  ///< n x (k+1)n
    CostMatrix wc;  ///< (k+1)n x n
    CostMatrix wk;  ///< (k+1)n x (k+1)n, indexed (actuator label, sensor label)
    std::size_t candidate_cap = 20000;
};

struct CodesignResult {
    DedicatedSolution actuation;
    DedicatedSolution sensing;
    InformationPattern info;
    double total_cost = 0.0;
    std::vector<std::string> diagnostics;
};

/// Pairs the effective actuators and sensors of one pivot collection. Throws
/// MismatchedPivotChoice when the two solutions come from different collections.
std::vector<IndexMate> index_mates(const StairForm& form, const DedicatedSolution& actuators,
                                   const DedicatedSolution& sensors, const CostMatrix& wk = {},
                                   const StairOptions& order = {});

/// Minimum-cost k-resilient actuation, sensing and information pattern.
CodesignResult codesign(const PencilPattern& pencil, const CodesignOptions& options);

struct NecessaryConditions {
    Certificate sssc = Certificate::Inconclusive;
    Certificate ssso = Certificate::Inconclusive;
    bool holds() const { return sssc == Certificate::Certified && ssso == Certificate::Certified; }
};

/// Ramp certificates for controllability with B and observability with C.
NecessaryConditions necessary_conditions(const PencilPattern& pencil, const Pattern& b, const Pattern& c);

/// Recomputes the design cost from the materialized matrices.
double design_cost(const CodesignResult& r, const CostMatrix& wb, const CostMatrix& wc, const CostMatrix& wk);

} // namespace ssco

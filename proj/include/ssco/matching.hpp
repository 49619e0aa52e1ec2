#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ssco {

/// Minimum-cost perfect matching of a square cost matrix (Hungarian method with
/// potentials). assignment[row] = column. Returns the total cost.
double min_cost_assignment(const Eigen::MatrixXd& cost, std::vector<int>& assignment);

/// Among all minimum-cost perfect matchings, the one whose assignment vector is
/// lexicographically smallest. Costs within tol of the optimum count as equal.
double lexicographic_min_assignment(const Eigen::MatrixXd& cost, std::vector<int>& assignment, double tol = 1e-9);

} // namespace ssco

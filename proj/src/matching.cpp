#include "ssco/matching.hpp"

#include <cmath>
#include <limits>

#include "ssco/errors.hpp"

namespace ssco {

double min_cost_assignment(const Eigen::MatrixXd& cost, std::vector<int>& assignment) {
    if (cost.rows() != cost.cols()) throw DimensionError("assignment cost matrix must be square");
    const int n = static_cast<int>(cost.rows());
    assignment.assign(n, -1);
    if (n == 0) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) total += cost(i, assignment[i]);
    return total;
}

namespace {

Eigen::MatrixXd minor_without(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

} // namespace

double lexicographic_min_assignment(const Eigen::MatrixXd& cost, std::vector<int>& assignment, double tol) {
    std::vector<int> scratch;
    const double target = min_cost_assignment(cost, scratch);
    const int n = static_cast<int>(cost.rows());
    assignment.assign(n, -1);
    std::vector<char> col_used(n, 0);
    double fixed = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> rest_rows;
        for (int r = i + 1; r < n; ++r) rest_rows.push_back(r);
        for (int c = 0; c < n; ++c) {
            if (col_used[c]) continue;
            std::vector<int> rest_cols;
            for (int cc = 0; cc < n; ++cc)
                if (!col_used[cc] && cc != c) rest_cols.push_back(cc);
            const double rest = min_cost_assignment(minor_without(cost, rest_rows, rest_cols), scratch);
            const double total = fixed + cost(i, c) + rest;
            if (std::abs(total - target) <= tol * (1.0 + std::abs(target))) {
                assignment[i] = c;
                col_used[c] = 1;
                fixed += cost(i, c);
                break;
            }
        }
    }
    return fixed;
}

} // namespace ssco

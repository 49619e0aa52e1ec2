#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ssco {

using cd = std::complex<double>;

/// Scales rows and columns by powers of two so their largest magnitudes sit
/// near one. Exact in floating point, so ranks are preserved.
Eigen::MatrixXcd equilibrate(const Eigen::MatrixXcd& m);

/// Singular values (descending) of a complex matrix.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// The r-th largest singular value (1-based), or 0 when r exceeds min(rows, cols).
double sigma(const Eigen::MatrixXcd& m, int r);

/// Numeric rank evidence: sigma_r / sigma_1 of m after power-of-two equilibration.
/// When that ratio is small, the matrix is rescaled (again by powers of two, so the
/// exact rank is unchanged) by the magnitudes of its r-th singular vector and the
/// ratio is recomputed; the largest value seen is returned. The rescaling removes
/// the grading of nearly null vectors that equilibration alone leaves behind.
double rank_ratio(const Eigen::MatrixXcd& m, int r);

/// Finite generalized eigenvalues of (E, A), the roots of det(A - lambda E).
/// Roots closer than 1e-6 are merged and reported once. Roots that chain within
/// 1e-3 (1 + |lambda|) of each other are also reported through their centroid,
/// which is where a multiple root lies. Throws SingularPencil when the pencil is
/// not regular.
std::vector<cd> pencil_eigenvalues(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a);

/// A - lambda E as a complex matrix. Parts below 1e-13 (|A| + (|lambda| + s) |E|),
/// in max norm with s = |A|_F / |E|_F, are rounding residue of lambda and are set
/// to zero, so that the equilibration in rank_ratio cannot magnify them.
Eigen::MatrixXcd pencil_at(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, cd lambda);

} // namespace ssco

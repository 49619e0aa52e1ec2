#include "ssco/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ssco/errors.hpp"
#include "ssco/realization.hpp"

namespace ssco {

Eigen::MatrixXcd equilibrate(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd out = m;
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            const double mx = out.row(r).cwiseAbs().maxCoeff();
            if (mx > 0) out.row(r) *= std::ldexp(1.0, -std::ilogb(mx));
        }
        for (Eigen::Index c = 0; c < out.cols(); ++c) {
            const double mx = out.col(c).cwiseAbs().maxCoeff();
            if (mx > 0) out.col(c) *= std::ldexp(1.0, -std::ilogb(mx));
        }
    }
    return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

double sigma(const Eigen::MatrixXcd& m, int r) {
    if (r <= 0) return 0.0;
    const Eigen::VectorXd s = singular_values(m);
    return r <= s.size() ? s(r - 1) : 0.0;
}

namespace {

constexpr double kRebalanceBelow = 1e-3;
constexpr int kRebalanceSteps = 2;

double pow2_floor(double x) { return std::ldexp(1.0, std::ilogb(x)); }

template <class Mat>
void equilibrate_rows(Mat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const double mx = m.row(r).cwiseAbs().maxCoeff();
        if (mx > 0) m.row(r) *= 1.0 / pow2_floor(mx);
    }
}

template <class Mat>
void equilibrate_cols(Mat& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double mx = m.col(c).cwiseAbs().maxCoeff();
        if (mx > 0) m.col(c) *= 1.0 / pow2_floor(mx);
    }
}

/// Power-of-two weights from a singular vector, floored so no weight vanishes.
Eigen::VectorXd vector_weights(const Eigen::VectorXd& mags) {
    const double mx = mags.maxCoeff();
    Eigen::VectorXd w(mags.size());
    for (Eigen::Index i = 0; i < mags.size(); ++i) w(i) = pow2_floor(std::max(mags(i), std::ldexp(mx, -60)));
    return w;
}

template <class Mat>
double ratio_of(Mat m, int r) {
    for (int sweep = 0; sweep < 3; ++sweep) {
        equilibrate_rows(m);
        equilibrate_cols(m);
    }
    auto ratio = [r](const Eigen::VectorXd& s) { return s(0) > 0 ? s(r - 1) / s(0) : 0.0; };
    double best = ratio(Eigen::JacobiSVD<Mat>(m).singularValues());
    for (int step = 0; step < kRebalanceSteps && best < kRebalanceBelow; ++step) {
        Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (m.rows() >= m.cols()) {
            const Eigen::VectorXd w = vector_weights(svd.matrixV().col(r - 1).cwiseAbs());
            for (Eigen::Index c = 0; c < m.cols(); ++c) m.col(c) *= w(c);
            equilibrate_rows(m);
        } else {
            const Eigen::VectorXd w = vector_weights(svd.matrixU().col(r - 1).cwiseAbs());
            for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) *= w(i);
            equilibrate_cols(m);
        }
        best = std::max(best, ratio(Eigen::JacobiSVD<Mat>(m).singularValues()));
    }
    return best;
}

} // namespace

double rank_ratio(const Eigen::MatrixXcd& m, int r) {
    if (r <= 0) return 1.0;
    if (r > std::min(m.rows(), m.cols())) return 0.0;
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) return ratio_of<Eigen::MatrixXd>(m.real(), r);
    return ratio_of<Eigen::MatrixXcd>(m, r);
}

Eigen::MatrixXcd pencil_at(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a, cd lambda) {
    Eigen::MatrixXcd m = a.cast<cd>() - lambda * e.cast<cd>();
    if (m.size() == 0) return m;
    // Eigenvalues carry an absolute error relative to the pencil scale |A| / |E|
    // (taken as 1 when A vanishes), as computed by pencil_eigenvalues.
    const double ne = e.norm(), na = a.norm();
    const double scale = ne > 0 && na > 0 ? na / ne : 1.0;
    const double floor = 1e-13 * (a.cwiseAbs().maxCoeff() + (std::abs(lambda) + scale) * e.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j).real()) <= floor) m(i, j).real(0.0);
            if (std::abs(m(i, j).imag()) <= floor) m(i, j).imag(0.0);
        }
    return m;
}

namespace {

cd det_at(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& se, cd z) {
    const Eigen::MatrixXcd m = a - z * se;
    return m.partialPivLu().determinant();
}

/// Newton refinement on log det: z += 1 / tr((A - z sE)^{-1} sE).
cd polish(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& se, cd z) {
    double best = std::abs(det_at(a, se, z));
    for (int it = 0; it < 8 && best > 0; ++it) {
        const Eigen::MatrixXcd m = a - z * se;
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
        if (!lu.isInvertible()) break;
        const cd tr = lu.solve(se).trace();
        if (std::abs(tr) == 0) break;
        const cd next = z + 1.0 / tr;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
        if (std::abs(next - z) > 0.5 * (1.0 + std::abs(z))) break;
        const double d = std::abs(det_at(a, se, next));
        if (d > best) break;
        best = d;
        const bool converged = std::abs(next - z) <= 1e-15 * (1.0 + std::abs(z));
        z = next;
        if (converged) break;
    }
    return z;
}

} // namespace

std::vector<cd> pencil_eigenvalues(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a) {
    if (e.rows() != a.rows() || e.cols() != a.cols() || a.rows() != a.cols())
        throw DimensionError("pencil matrices must be square and of equal size");
    if (!is_regular_pencil(e, a)) throw SingularPencil("det(A - lambda E) vanishes identically");
    const int n = static_cast<int>(a.rows());
    const double ne = e.norm();
    if (n == 0 || ne == 0) return {};
    const double na = a.norm();
    const double s = na > 0 ? na / ne : 1.0;
    const Eigen::MatrixXcd ac = a.cast<cd>();
    const Eigen::MatrixXcd se = (s * e).cast<cd>();

    // Coefficients of p(mu) = det(A - mu sE) by interpolation at the (n+1)-th roots of unity.
    const int pts = n + 1;
    std::vector<cd> values(pts), roots(pts);
    for (int k = 0; k < pts; ++k) {
        roots[k] = std::polar(1.0, 2.0 * M_PI * k / pts);
        values[k] = det_at(ac, se, roots[k]);
    }
    std::vector<cd> coeff(pts);
    for (int j = 0; j < pts; ++j) {
        cd acc = 0;
        for (int k = 0; k < pts; ++k) acc += values[k] * std::conj(std::pow(roots[k], j));
        coeff[j] = acc / static_cast<double>(pts);
    }
    double mx = 0;
    for (const cd& c : coeff) mx = std::max(mx, std::abs(c));
    int degree = n;
    while (degree > 0 && std::abs(coeff[degree]) <= 1e-11 * mx) --degree;
    if (degree == 0) return {};

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeff[i] / coeff[degree];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<cd> mus(solver.eigenvalues().data(), solver.eigenvalues().data() + degree);

    std::vector<cd> lambdas;
    for (const cd& mu : mus) lambdas.push_back(polish(ac, se, mu) * s);
    std::sort(lambdas.begin(), lambdas.end(),
              [](const cd& x, const cd& y) { return std::pair(x.real(), x.imag()) < std::pair(y.real(), y.imag()); });

    // Merge clusters within the absolute tolerance.
    std::vector<cd> merged;
    std::vector<int> weight;
    std::vector<char> used(lambdas.size(), 0);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (used[i]) continue;
        cd sum = lambdas[i];
        int cnt = 1;
        used[i] = 1;
        for (std::size_t j = i + 1; j < lambdas.size(); ++j)
            if (!used[j] && std::abs(lambdas[j] - lambdas[i]) <= 1e-6) {
                sum += lambdas[j];
                ++cnt;
                used[j] = 1;
            }
        merged.push_back(sum / static_cast<double>(cnt));
        weight.push_back(cnt);
    }

    // A root of multiplicity m comes out as m simple roots spread by about eps^(1/m),
    // while their centroid stays accurate; wider clusters add their centroid.
    const std::size_t distinct = merged.size();
    std::vector<int> cluster(distinct, -1);
    int clusters = 0;
    for (std::size_t i = 0; i < distinct; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = clusters;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < distinct; ++v)
                if (cluster[v] < 0 && std::abs(merged[v] - merged[u]) <= 1e-3 * (1.0 + std::abs(merged[u]))) {
                    cluster[v] = clusters;
                    stack.push_back(v);
                }
        }
        ++clusters;
    }
    for (int c = 0; c < clusters; ++c) {
        cd sum = 0;
        int cnt = 0, members = 0;
        for (std::size_t i = 0; i < distinct; ++i)
            if (cluster[i] == c) {
                sum += merged[i] * static_cast<double>(weight[i]);
                cnt += weight[i];
                ++members;
            }
        if (members > 1) merged.push_back(sum / static_cast<double>(cnt));
    }
    for (cd& z : merged)
        if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z))) z = {z.real(), 0.0};
    return merged;
}

} // namespace ssco

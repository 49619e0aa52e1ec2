#include "ssco/realization.hpp"

#include <cmath>
#include <complex>

#include "ssco/errors.hpp"

namespace ssco {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Eigen::MatrixXd sample_matrix(const Pattern& p, Rng& rng, const SampleConfig& cfg) {
    std::uniform_real_distribution<double> magnitude(cfg.min_magnitude, cfg.max_magnitude);
    std::uniform_real_distribution<double> any(-cfg.max_magnitude, cfg.max_magnitude);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p.rows(), p.cols());
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.cols(); ++c) {
            switch (p(r, c)) {
            case Entry::Zero: break;
            case Entry::Nonzero: {
                const double v = magnitude(rng);
                m(r, c) = unit(rng) < 0.5 ? -v : v;
                break;
            }
            case Entry::Free:
                m(r, c) = unit(rng) < cfg.free_zero_probability ? 0.0 : any(rng);
                break;
            }
        }
    }
    return m;
}

Eigen::MatrixXd sample_realization(const Pattern& p, std::uint64_t seed, const SampleConfig& cfg) {
    Rng rng(seed);
    return sample_matrix(p, rng, cfg);
}

Realization sample_realization(const PencilPattern& pencil, std::uint64_t seed, const SampleConfig& cfg,
                               const Pattern* b, const Pattern* c) {
    pencil.validate();
    const int n = pencil.n();
    if (b && b->rows() != n) throw DimensionError("B pattern must have n rows");
    if (c && c->cols() != n) throw DimensionError("C pattern must have n columns");
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        Realization r;
        r.e = sample_matrix(pencil.e, rng, cfg);
        r.a = sample_matrix(pencil.a, rng, cfg);
        r.b = b ? sample_matrix(*b, rng, cfg) : Eigen::MatrixXd(n, 0);
        r.c = c ? sample_matrix(*c, rng, cfg) : Eigen::MatrixXd(0, n);
        if (is_regular_pencil(r.e, r.a)) {
            r.regular = true;
            return r;
        }
    }
    throw RegularityUnreachable("no regular pencil drawn in " + std::to_string(cfg.max_retries) + " attempts");
}

bool conforms(const Eigen::MatrixXd& m, const Pattern& p, double min_magnitude) {
    if (m.rows() != p.rows() || m.cols() != p.cols()) return false;
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.cols(); ++c) {
            const double v = m(r, c);
            if (!std::isfinite(v)) return false;
            if (p(r, c) == Entry::Zero && v != 0.0) return false;
            if (p(r, c) == Entry::Nonzero && std::abs(v) < min_magnitude) return false;
        }
    }
    return true;
}

bool is_regular_pencil(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return true;
    const double na = a.norm();
    const double ne = e.norm();
    const double radius = ne > 0.0 && na > 0.0 ? na / ne : 1.0;
    constexpr double kPi = 3.14159265358979323846;
    for (Eigen::Index j = 0; j <= n; ++j) {
        const double theta = 2.0 * kPi * (static_cast<double>(j) + 0.3819660112501051) / static_cast<double>(n + 1);
        const std::complex<double> lambda = std::polar(radius * (1.0 + 0.1 * static_cast<double>(j)), theta);
        const Eigen::MatrixXcd m = a.cast<std::complex<double>>() - lambda * e.cast<std::complex<double>>();
        double hadamard = 1.0;
        bool zero_column = false;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double cn = m.col(k).norm();
            if (cn == 0.0) zero_column = true;
            hadamard *= cn;
        }
        if (zero_column) continue;
        const double det = std::abs(Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant());
        if (det > 1e-13 * hadamard) return true;
    }
    return false;
}

} // namespace ssco

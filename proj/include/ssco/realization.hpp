#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "ssco/pattern.hpp"

namespace ssco {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// How numeric values are drawn for each pattern class.
struct SampleConfig {
    double min_magnitude = 0.1;          ///< Nonzero cells satisfy |v| >= min_magnitude
    double max_magnitude = 10.0;         ///< all values lie in [-max, max]
    double free_zero_probability = 0.3;  ///< chance that a Free cell is exactly 0
    int max_retries = 100;               ///< resampling budget for regularity
};

/// Numeric matrices drawn from a pattern class.
struct Realization {
    Eigen::MatrixXd e;
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;  ///< n x 0 when absent
    Eigen::MatrixXd c;  ///< 0 x n when absent
    bool regular = false;
};

/// Draws one matrix conforming to p.
Eigen::MatrixXd sample_matrix(const Pattern& p, Rng& rng, const SampleConfig& cfg);

/// Draws a single pattern realization, deterministic in seed.
Eigen::MatrixXd sample_realization(const Pattern& p, std::uint64_t seed, const SampleConfig& cfg = {});

/// Draws a regular pencil (and optional B, C), retrying up to cfg.max_retries times.
/// Throws RegularityUnreachable when every draw is singular.
Realization sample_realization(const PencilPattern& pencil, std::uint64_t seed, const SampleConfig& cfg = {},
                               const Pattern* b = nullptr, const Pattern* c = nullptr);

/// True when every cell of m respects the corresponding pattern cell.
bool conforms(const Eigen::MatrixXd& m, const Pattern& p, double min_magnitude);

/// Regularity certificate: det(A - lambda E) is nonzero at one of n+1 sample points,
/// judged against the Hadamard bound of A - lambda E.
bool is_regular_pencil(const Eigen::MatrixXd& e, const Eigen::MatrixXd& a);

} // namespace ssco

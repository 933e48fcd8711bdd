#pragma once

#include "edgetest/report.hpp"
#include "edgetest/sample_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgetest {

using Rng = std::mt19937_64;

/// Independent generator for a named sub-stream of a master seed, e.g.
/// make_rng(seed, {tag, repetition, grid_index}).
[[nodiscard]] Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

enum class Distribution { Gaussian, Laplace };

[[nodiscard]] std::string_view to_string(Distribution d) noexcept;
[[nodiscard]] Distribution parse_distribution(std::string_view name);

/// Smallest eigenvalue accepted by random_correlation before redrawing.
inline constexpr double kCorrelationConditioningFloor = 1e-3;
inline constexpr int kCorrelationMaxAttempts = 100;

/// Normalized Gram matrix S_ij = v_i.v_j / (|v_i| |v_j|) of p random vectors
/// with i.i.d. standard normal entries of length latent_dim (p when 0).
/// Redrawn while the smallest eigenvalue is below the conditioning floor;
/// throws GenerationFailure after kCorrelationMaxAttempts draws.
[[nodiscard]] Eigen::MatrixXd random_correlation(Index p, Rng& rng, Index latent_dim = 0);

/// Block-diagonal correlation with `blocks` contiguous, near-equal blocks.
/// Entries of the precision matrix across blocks are exactly zero.
struct BlockCorrelation {
    Eigen::MatrixXd sigma;
    std::vector<Index> block_of;  // block label per variate

    [[nodiscard]] bool is_null_edge(Index i, Index j) const { return block_of[i] != block_of[j]; }
};

/// latent_per_variate scales each block's latent dimension with its size;
/// 0 means latent dimension equal to the block size.
[[nodiscard]] BlockCorrelation block_random_correlation(Index p, Index blocks, Rng& rng,
                                                        Index latent_per_variate);

/// n i.i.d. rows L z with L L^T = sigma and z standard normal.
/// Throws NotSpdError when the Cholesky factorization fails.
[[nodiscard]] SampleMatrix sample_gaussian(const Eigen::MatrixXd& sigma, Index n, Rng& rng);

/// n i.i.d. rows from the elliptical power-exponential law with density
/// proportional to exp(-(x^T sigma^{-1} x)^{1/2} / 2) up to scale: a
/// uniform direction times a Gamma(p, 2) radius, rescaled by the radial
/// second moment 4p(p+1) so the covariance equals sigma.
[[nodiscard]] SampleMatrix sample_laplace(const Eigen::MatrixXd& sigma, Index n, Rng& rng);

[[nodiscard]] SampleMatrix sample(Distribution d, const Eigen::MatrixXd& sigma, Index n, Rng& rng);

/// Parameters shared by the experiment drivers.
struct ExperimentSpec {
    Distribution distribution = Distribution::Gaussian;
    Index p = 6;
    std::vector<Index> n_grid{100000};
    Index repetitions = 100;
    std::vector<double> delta_grid{0.05};
    std::uint64_t seed = 1;
    double effect_threshold = 0.5;
    double mu = 1.0;
    /// Latent dimension per variate used to draw correlation matrices; the
    /// vectors behind a block of size s have length s * latent_per_variate.
    /// 0 selects length equal to the block size.
    Index latent_per_variate = 5;
    /// Number of independent blocks in the false-positive experiment.
    Index null_blocks = 3;

    /// Throws ConfigError unless the grid is strictly increasing, the
    /// repetition count is positive and p >= 2.
    void validate() const;
    [[nodiscard]] Index latent_dim(Index variates) const;
};

/// Threshold sweep: t_eig and t_trace (plus their epsilons) per n at the
/// first delta of the grid, averaged over repetitions on one fixed sigma.
[[nodiscard]] ExperimentReport run_threshold_experiment(const ExperimentSpec& spec);

/// Null-edge rejection rates of both bounds and of the partial-correlation
/// test for each delta, on block-diagonal sigma (cross-block edges are the
/// nulls). Also reports how often |theta_hat_ij - theta_ij| > t over the
/// upper triangle.
[[nodiscard]] ExperimentReport run_fpr_experiment(const ExperimentSpec& spec);

/// Detected fraction of true edges per n (paired across n within each
/// repetition), overall and restricted to |theta_ij| > effect_threshold,
/// plus a histogram of |theta_ij|.
[[nodiscard]] ExperimentReport run_power_experiment(const ExperimentSpec& spec);

/// Per-eigenvalue containment of 1/alpha_k in [1/(a_k + eps), 1/(a_k - eps)]
/// on one fixed sigma.
[[nodiscard]] ExperimentReport run_weyl_experiment(const ExperimentSpec& spec);

struct WeylInterval {
    double lower;
    double upper;  // +infinity when eps >= alpha_hat

    [[nodiscard]] bool contains(double v) const noexcept { return lower <= v && v <= upper; }
    [[nodiscard]] double width() const noexcept { return upper - lower; }
};

[[nodiscard]] WeylInterval weyl_interval(double alpha_hat, double eps);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

/// `count` points from lo to hi inclusive, evenly spaced.
[[nodiscard]] std::vector<Index> linear_grid(Index lo, Index hi, Index count);

}  // namespace edgetest

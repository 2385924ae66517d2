#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zoomsync/control.hpp"

namespace zoomsync
{

/**
 * Search settings for the small-dimension passification heuristic.
 *
 * Candidates are P = P0 + s * Q T Q^T where P0 = C^T C / (C B) is the
 * rank-one particular solution of P B = C^T, the columns of Q span the
 * orthogonal complement of B, s = ||P0|| and T is symmetric.  The
 * n(n-1)/2 free entries of T are scanned over a coarse grid, then the best
 * grid points seed a Nelder-Mead refinement.
 */
struct PassificationSearchOptions
{
    std::vector<double> grid_values{0.0,  -1e-3, 1e-3, -1e-2, 1e-2, -1e-1, 1e-1, -1.0,
                                    1.0,  -10.0, 10.0, -1e2,  1e2,  -1e3,  1e3};
    std::size_t max_grid_points = 20000;  ///< sampled (fixed seed) above this
    std::size_t refine_starts = 4;
    int max_refine_iterations = 600;
    std::uint64_t seed = 20080601;
    PassificationTolerances tolerances{};
};

/// Largest supported state dimension.
inline constexpr Eigen::Index kMaxPassificationDim = 4;

/**
 * Affine parameterization of the symmetric matrices satisfying P B = C^T.
 * Only defined when C B > 0, since B^T P B = C B must be positive for P > 0.
 */
class PassificationFamily
{
public:
    PassificationFamily(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                        const Eigen::RowVectorXd& C, double K, double mu);

    Eigen::Index free_parameters() const { return free_; }
    Eigen::MatrixXd matrix(std::span<const double> theta) const;

    /// Negative iff P(theta) is (numerically) a strict certificate; smaller is better.
    double objective(std::span<const double> theta) const;

private:
    Eigen::MatrixXd A_K_;
    Eigen::MatrixXd P0_;
    Eigen::MatrixXd Q_;
    double scale_;
    double mu_;
    double a_norm_;
    Eigen::Index free_;
};

/// Grid candidates (row per point, theta coordinates) used by the coarse scan.
std::vector<std::vector<double>> passification_grid(Eigen::Index free_parameters,
                                                    const PassificationSearchOptions& opts);

/// OpenMP kernel: objective value for every grid candidate.
std::vector<double> scan_grid(const PassificationFamily& family,
                              const std::vector<std::vector<double>>& grid);

/// Serial reference of scan_grid, kept for testing and benchmarking.
std::vector<double> scan_grid_serial(const PassificationFamily& family,
                                     const std::vector<std::vector<double>>& grid);

/**
 * Looks for P certifying P > 0, P B = C^T, P A_K + A_K^T P + mu P <= 0.
 * Returns std::nullopt when nothing is found at the searched resolution.
 * Throws std::invalid_argument for n > kMaxPassificationDim or mu < 0.
 */
std::optional<Eigen::MatrixXd> find_passifying_P(const Eigen::MatrixXd& A,
                                                 const Eigen::VectorXd& B,
                                                 const Eigen::RowVectorXd& C, double K, double mu,
                                                 const PassificationSearchOptions& opts = {});

struct PassifyingGain
{
    double K;
    double mu;
    Eigen::MatrixXd P;
};

/// Tries each (K, mu) pair in order (gains outer, rates inner); first success wins.
std::optional<PassifyingGain> search_passifying_gain(const Eigen::MatrixXd& A,
                                                     const Eigen::VectorXd& B,
                                                     const Eigen::RowVectorXd& C,
                                                     std::span<const double> gains,
                                                     std::span<const double> rates,
                                                     const PassificationSearchOptions& opts = {});

} // namespace zoomsync

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "zoomsync/codec.hpp"
#include "zoomsync/lurie.hpp"

namespace zoomsync
{

/// Ratio between the admissible and the rate-optimal sampling interval for the binary coder.
inline constexpr double kOptimalBeta = 1.688;

struct SimConfig
{
    LurieSystem system;
    CodecConfig codec;
    double K = 1.0;
    Eigen::VectorXd x0;
    Eigen::VectorXd z0;
    double t_fin = 1000.0;
    int substeps = 10;      ///< integration steps per sampling interval
    int store_every = 0;    ///< keep every n-th grid point; 0 selects 1 up to 100 s, else 10

    void validate() const;
    int effective_store_every() const;
};

/// Coder parameters from which a per-run CodecConfig is derived for a target error level.
struct CodecDesign
{
    double M0 = 5.0;
    double L_y = 45.0;          ///< output-rate bound used to pick Ts
    double beta = kOptimalBeta;
    double zoom_rate = 0.1;     ///< rho = exp(-zoom_rate * Ts)
};

/// Ts from optimal_sampling, M_inf = Delta / 2, rho = exp(-zoom_rate * Ts).
CodecConfig codec_for_delta(double Delta, const CodecDesign& design);

/// Per-sampling-interval record at full resolution.
struct SampleRecord
{
    double t;
    double M;
    double ybar;
    Bit bit;
    bool saturated;
    double max_abs_delta_y;  ///< over the closed interval [t_k, t_{k+1}]
    double max_norm_e;       ///< over the grid points of the interval
};

/// Accuracy statistics accumulated over every integration grid point.
struct RunMetrics
{
    double window_start = 0.0;
    double max_abs_y1 = 0.0;
    double max_norm_x = 0.0;
    double window_max_abs_delta_y = 0.0;
    double window_max_norm_e = 0.0;
    std::size_t window_points = 0;
};

/**
 * Sampled closed-loop history.  Row series share one time grid, possibly
 * decimated; `samples` and `metrics` always reflect the full grid.
 */
struct Trace
{
    Eigen::Index dim = 0;
    double Ts = 0.0;
    std::vector<double> t;
    std::vector<double> x;   ///< row-major, dim entries per row
    std::vector<double> z;
    std::vector<double> y1;
    std::vector<double> ybar1;
    std::vector<double> y2;
    std::vector<double> u;
    std::vector<double> delta_y;
    std::vector<double> M;
    std::vector<SampleRecord> samples;
    std::size_t saturation_count = 0;
    RunMetrics metrics;
    bool diverged = false;
    double divergence_time = std::numeric_limits<double>::quiet_NaN();

    std::size_t rows() const { return t.size(); }
    Eigen::Map<const Eigen::VectorXd> x_at(std::size_t row) const;
    Eigen::Map<const Eigen::VectorXd> z_at(std::size_t row) const;
    std::vector<Bit> bits() const;
    std::vector<double> decoded() const;
};

/**
 * Runs master, coder, ideal channel, decoder, zero-order hold, controller
 * and slave.  Deterministic.  Divergence ends the run early with
 * `diverged` set and the partial history kept.
 */
Trace simulate(const SimConfig& cfg);

/// max |C f(x(t))| along the autonomous master trajectory on a grid of step h.
double estimate_Ly(const LurieSystem& system, const Eigen::VectorXd& x0, double t_fin, double h);

/// Supremum Delta / L_y of sampling intervals keeping |delta_y| within Delta.
double sampling_bound(double Delta, double L_y);

/// Rate-optimal binary-coder interval Delta / (beta L_y).
double optimal_sampling(double Delta, double L_y, double beta = kOptimalBeta);

/// One bit per sample.
double bit_rate(double Ts);

} // namespace zoomsync

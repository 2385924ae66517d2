#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "zoomsync/simloop.hpp"

namespace zoomsync
{

// Accuracy indexes over the steady-state window [0.8 t_fin, t_fin], normalized by the
// peak over the whole run.  The Trace overloads read the stored rows; the RunMetrics
// overloads use the full-grid streaming statistics.  Both throw std::domain_error when
// the window is empty or the normalizer is zero.
double relative_transmission_error(const Trace& trace, double t_fin);
double normalized_sync_error(const Trace& trace, double t_fin);
double relative_transmission_error(const RunMetrics& metrics);
double normalized_sync_error(const RunMetrics& metrics);

struct RatePoint
{
    double R;
    double Q;
};

/// Closed-form least squares for Q = G / R: G = sum(Q/R) / sum(1/R^2) over points with R > 0.
double fit_inverse_law(std::span<const RatePoint> points);

/// Residual sum of squares of Q = G / R.
double inverse_law_rss(std::span<const RatePoint> points, double G);

enum class PointStatus
{
    Ok,
    Diverged,
    Failed,
};

std::string_view to_string(PointStatus status);

struct SweepPoint
{
    double Delta;
    double Ts;
    double R;
    double Q_y;
    double Q;
    PointStatus flag;
};

struct GainPoint
{
    double K;
    double Q;
    PointStatus flag;
};

/// For each Delta: derive the codec from `design`, simulate, score.  Sorted by R.
std::vector<SweepPoint> run_delta_sweep(const SimConfig& base, const CodecDesign& design,
                                        std::span<const double> deltas);
std::vector<SweepPoint> run_delta_sweep_serial(const SimConfig& base, const CodecDesign& design,
                                               std::span<const double> deltas);

/// Keeps the base codec, varies K.  Order follows `gains`.
std::vector<GainPoint> run_gain_sweep(const SimConfig& base, std::span<const double> gains);
std::vector<GainPoint> run_gain_sweep_serial(const SimConfig& base, std::span<const double> gains);

struct SweepFit
{
    double G_y;
    double G;
    double rss_y;
    double rss;
    std::size_t points_used;
};

/// Fits both inverse laws on the unflagged points.  Throws std::domain_error if none remain.
SweepFit fit_sweep(std::span<const SweepPoint> points);

/**
 * End of the last sampling interval whose peak ||e|| exceeds `factor` times the
 * steady-state level (peak ||e|| over the steady-state window).  0 if ||e|| never does.
 */
double transient_time(const Trace& trace, double factor = 3.0);

/// Sampling intervals starting at or after `after` where max |delta_y| > M[k] + L_y Ts.
std::size_t transmission_bound_violations(const Trace& trace, double L_y, double after);

} // namespace zoomsync

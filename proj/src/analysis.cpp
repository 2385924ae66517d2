#include "zoomsync/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace zoomsync
{

namespace
{

struct WindowPeaks
{
    double window_peak = 0.0;
    double overall_peak = 0.0;
    std::size_t window_points = 0;
};

template <class WindowValue, class OverallValue>
WindowPeaks window_peaks(const Trace& trace, double t_fin, WindowValue window_value,
                         OverallValue overall_value)
{
    WindowPeaks peaks;
    const double start = 0.8 * t_fin;
    for (std::size_t i = 0; i < trace.rows(); ++i)
    {
        const double t = trace.t[i];
        if (t > t_fin)
            break;
        peaks.overall_peak = std::max(peaks.overall_peak, overall_value(i));
        if (t >= start)
        {
            peaks.window_peak = std::max(peaks.window_peak, window_value(i));
            ++peaks.window_points;
        }
    }
    return peaks;
}

double ratio(double num, double den, std::size_t window_points)
{
    if (window_points == 0)
        throw std::domain_error("accuracy index: steady-state window is empty");
    if (!(den > 0.0))
        throw std::domain_error("accuracy index: normalizing peak is zero");
    return num / den;
}

} // namespace

double relative_transmission_error(const Trace& trace, double t_fin)
{
    const auto peaks = window_peaks(
        trace, t_fin, [&](std::size_t i) { return std::abs(trace.delta_y[i]); },
        [&](std::size_t i) { return std::abs(trace.y1[i]); });
    return ratio(peaks.window_peak, peaks.overall_peak, peaks.window_points);
}

double normalized_sync_error(const Trace& trace, double t_fin)
{
    const auto peaks = window_peaks(
        trace, t_fin, [&](std::size_t i) { return (trace.z_at(i) - trace.x_at(i)).norm(); },
        [&](std::size_t i) { return trace.x_at(i).norm(); });
    return ratio(peaks.window_peak, peaks.overall_peak, peaks.window_points);
}

double relative_transmission_error(const RunMetrics& metrics)
{
    return ratio(metrics.window_max_abs_delta_y, metrics.max_abs_y1, metrics.window_points);
}

double normalized_sync_error(const RunMetrics& metrics)
{
    return ratio(metrics.window_max_norm_e, metrics.max_norm_x, metrics.window_points);
}

double fit_inverse_law(std::span<const RatePoint> points)
{
    double num = 0.0;
    double den = 0.0;
    for (const auto& p : points)
    {
        if (!(p.R > 0.0))
            continue;
        num += p.Q / p.R;
        den += 1.0 / (p.R * p.R);
    }
    if (!(den > 0.0))
        throw std::domain_error("fit_inverse_law: no point with positive rate");
    return num / den;
}

double inverse_law_rss(std::span<const RatePoint> points, double G)
{
    double rss = 0.0;
    for (const auto& p : points)
    {
        if (!(p.R > 0.0))
            continue;
        const double r = p.Q - G / p.R;
        rss += r * r;
    }
    return rss;
}

std::string_view to_string(PointStatus status)
{
    switch (status)
    {
    case PointStatus::Ok:
        return "ok";
    case PointStatus::Diverged:
        return "diverged";
    case PointStatus::Failed:
        return "failed";
    }
    return "unknown";
}

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SimConfig sweep_config(const SimConfig& base)
{
    SimConfig cfg = base;
    // Sweeps only need the streaming metrics.
    cfg.store_every = std::numeric_limits<int>::max();
    return cfg;
}

SweepPoint delta_point(const SimConfig& base, const CodecDesign& design, double Delta)
{
    SweepPoint point{Delta, kNaN, kNaN, kNaN, kNaN, PointStatus::Failed};
    try
    {
        SimConfig cfg = sweep_config(base);
        cfg.codec = codec_for_delta(Delta, design);
        point.Ts = cfg.codec.Ts;
        point.R = bit_rate(cfg.codec.Ts);
        const Trace trace = simulate(cfg);
        if (trace.diverged)
        {
            point.flag = PointStatus::Diverged;
            return point;
        }
        point.Q_y = relative_transmission_error(trace.metrics);
        point.Q = normalized_sync_error(trace.metrics);
        point.flag = PointStatus::Ok;
    }
    catch (const std::exception&)
    {
        point.flag = PointStatus::Failed;
    }
    return point;
}

GainPoint gain_point(const SimConfig& base, double K)
{
    GainPoint point{K, kNaN, PointStatus::Failed};
    try
    {
        SimConfig cfg = sweep_config(base);
        cfg.K = K;
        const Trace trace = simulate(cfg);
        if (trace.diverged)
        {
            point.flag = PointStatus::Diverged;
            return point;
        }
        point.Q = normalized_sync_error(trace.metrics);
        point.flag = PointStatus::Ok;
    }
    catch (const std::exception&)
    {
        point.flag = PointStatus::Failed;
    }
    return point;
}

void sort_by_rate(std::vector<SweepPoint>& points)
{
    std::stable_sort(points.begin(), points.end(),
                     [](const SweepPoint& a, const SweepPoint& b) { return a.R < b.R; });
}

void check_positive(std::span<const double> values, const char* what)
{
    if (values.empty())
        throw std::invalid_argument(std::string(what) + ": empty list");
    for (double v : values)
        if (!(v > 0.0))
            throw std::invalid_argument(std::string(what) + ": values must be positive");
}

} // namespace

std::vector<SweepPoint> run_delta_sweep(const SimConfig& base, const CodecDesign& design,
                                        std::span<const double> deltas)
{
    check_positive(deltas, "run_delta_sweep");
    std::vector<SweepPoint> points(deltas.size());
    const auto count = static_cast<std::int64_t>(deltas.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i)
    {
        const auto idx = static_cast<std::size_t>(i);
        points[idx] = delta_point(base, design, deltas[idx]);
    }
    sort_by_rate(points);
    return points;
}

std::vector<SweepPoint> run_delta_sweep_serial(const SimConfig& base, const CodecDesign& design,
                                               std::span<const double> deltas)
{
    check_positive(deltas, "run_delta_sweep");
    std::vector<SweepPoint> points;
    points.reserve(deltas.size());
    for (double Delta : deltas)
        points.push_back(delta_point(base, design, Delta));
    sort_by_rate(points);
    return points;
}

std::vector<GainPoint> run_gain_sweep(const SimConfig& base, std::span<const double> gains)
{
    if (gains.empty())
        throw std::invalid_argument("run_gain_sweep: empty list");
    std::vector<GainPoint> points(gains.size());
    const auto count = static_cast<std::int64_t>(gains.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i)
    {
        const auto idx = static_cast<std::size_t>(i);
        points[idx] = gain_point(base, gains[idx]);
    }
    return points;
}

std::vector<GainPoint> run_gain_sweep_serial(const SimConfig& base, std::span<const double> gains)
{
    if (gains.empty())
        throw std::invalid_argument("run_gain_sweep: empty list");
    std::vector<GainPoint> points;
    points.reserve(gains.size());
    for (double K : gains)
        points.push_back(gain_point(base, K));
    return points;
}

SweepFit fit_sweep(std::span<const SweepPoint> points)
{
    std::vector<RatePoint> qy, q;
    for (const auto& p : points)
    {
        if (p.flag != PointStatus::Ok)
            continue;
        qy.push_back({p.R, p.Q_y});
        q.push_back({p.R, p.Q});
    }
    if (qy.empty())
        throw std::domain_error("fit_sweep: no usable sweep points");
    SweepFit fit{};
    fit.G_y = fit_inverse_law(qy);
    fit.G = fit_inverse_law(q);
    fit.rss_y = inverse_law_rss(qy, fit.G_y);
    fit.rss = inverse_law_rss(q, fit.G);
    fit.points_used = qy.size();
    return fit;
}

double transient_time(const Trace& trace, double factor)
{
    const double level = trace.metrics.window_max_norm_e;
    if (trace.metrics.window_points == 0)
        throw std::domain_error("transient_time: steady-state window is empty");
    double end = 0.0;
    for (const auto& s : trace.samples)
        if (s.max_norm_e > factor * level)
            end = s.t + trace.Ts;
    return end;
}

std::size_t transmission_bound_violations(const Trace& trace, double L_y, double after)
{
    std::size_t count = 0;
    for (const auto& s : trace.samples)
        if (s.t >= after && s.max_abs_delta_y > s.M + L_y * trace.Ts)
            ++count;
    return count;
}

} // namespace zoomsync

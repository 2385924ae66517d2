#include "zoomsync/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zoomsync/control.hpp"
#include "zoomsync/integrator.hpp"

namespace zoomsync
{

void SimConfig::validate() const
{
    codec.validate();
    if (!(t_fin > 0.0) || !std::isfinite(t_fin))
        throw std::invalid_argument("simulation: t_fin must be positive");
    if (t_fin < codec.Ts)
        throw std::invalid_argument("simulation: t_fin is shorter than one sampling interval");
    if (substeps < 1)
        throw std::invalid_argument("simulation: substeps must be at least 1");
    if (store_every < 0)
        throw std::invalid_argument("simulation: store_every must be non-negative");
    if (x0.size() != system.dim() || z0.size() != system.dim())
        throw std::invalid_argument("simulation: initial states must match the system dimension");
    if (!x0.allFinite() || !z0.allFinite() || !std::isfinite(K))
        throw std::invalid_argument("simulation: non-finite initial state or gain");
}

int SimConfig::effective_store_every() const
{
    if (store_every > 0)
        return store_every;
    return t_fin <= 100.0 ? 1 : 10;
}

CodecConfig codec_for_delta(double Delta, const CodecDesign& design)
{
    const double Ts = optimal_sampling(Delta, design.L_y, design.beta);
    return CodecConfig{design.M0, Delta / 2.0, std::exp(-design.zoom_rate * Ts), Ts};
}

Eigen::Map<const Eigen::VectorXd> Trace::x_at(std::size_t row) const
{
    return {x.data() + row * static_cast<std::size_t>(dim), dim};
}

Eigen::Map<const Eigen::VectorXd> Trace::z_at(std::size_t row) const
{
    return {z.data() + row * static_cast<std::size_t>(dim), dim};
}

std::vector<Bit> Trace::bits() const
{
    std::vector<Bit> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.bit);
    return out;
}

std::vector<double> Trace::decoded() const
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.ybar);
    return out;
}

Trace simulate(const SimConfig& cfg)
{
    cfg.validate();
    const auto& sys = cfg.system;
    const auto n = sys.dim();
    const double Ts = cfg.codec.Ts;
    const int m = cfg.substeps;
    const double h = Ts / m;
    const int keep = cfg.effective_store_every();
    const auto intervals = static_cast<std::uint64_t>(std::floor(cfg.t_fin / Ts + 1e-9));

    Trace trace;
    trace.dim = n;
    trace.Ts = Ts;
    trace.metrics.window_start = 0.8 * cfg.t_fin;
    trace.samples.reserve(intervals);
    const auto expected_rows = intervals * static_cast<std::uint64_t>(m) / static_cast<std::uint64_t>(keep) + 1;
    for (auto* v : {&trace.t, &trace.y1, &trace.ybar1, &trace.y2, &trace.u, &trace.delta_y, &trace.M})
        v->reserve(expected_rows);
    trace.x.reserve(expected_rows * static_cast<std::size_t>(n));
    trace.z.reserve(expected_rows * static_cast<std::size_t>(n));

    Eigen::VectorXd x = cfg.x0;
    Eigen::VectorXd z = cfg.z0;
    Rk4Stepper master_stepper(n), slave_stepper(n);
    CodecState coder, decoder;
    auto& metrics = trace.metrics;
    std::uint64_t grid_index = 0;

    auto master = [&sys](const Eigen::VectorXd& s, Eigen::VectorXd& ds) { master_rhs(sys, s, ds); };

    try
    {
        for (std::uint64_t k = 0; k < intervals; ++k)
        {
            const double t_k = static_cast<double>(k) * Ts;
            const double M = range_at(k, cfg.codec);

            const auto sent = coder_step(coder, cfg.codec, sys.output(x));
            coder = sent.next;
            const auto received = decoder_step(decoder, cfg.codec, sent.bit);
            decoder = received.next;
            const double ybar = received.ybar;
            if (sent.saturated)
                ++trace.saturation_count;

            SampleRecord record{t_k, M, ybar, sent.bit, sent.saturated, 0.0, 0.0};
            auto slave = [&sys, ybar, K = cfg.K](const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
                slave_rhs(sys, s, control_law(sys.output(s) - ybar, K), ds);
            };

            for (int j = 0; j < m; ++j)
            {
                const double t = t_k + j * h;
                const double y1 = sys.output(x);
                const double y2 = sys.output(z);
                const double dy = y1 - ybar;
                const double e_norm = (z - x).norm();

                record.max_abs_delta_y = std::max(record.max_abs_delta_y, std::abs(dy));
                record.max_norm_e = std::max(record.max_norm_e, e_norm);
                metrics.max_abs_y1 = std::max(metrics.max_abs_y1, std::abs(y1));
                metrics.max_norm_x = std::max(metrics.max_norm_x, x.norm());
                if (t >= metrics.window_start && t <= cfg.t_fin)
                {
                    metrics.window_max_abs_delta_y = std::max(metrics.window_max_abs_delta_y, std::abs(dy));
                    metrics.window_max_norm_e = std::max(metrics.window_max_norm_e, e_norm);
                    ++metrics.window_points;
                }

                if (grid_index % static_cast<std::uint64_t>(keep) == 0)
                {
                    trace.t.push_back(t);
                    trace.x.insert(trace.x.end(), x.data(), x.data() + n);
                    trace.z.insert(trace.z.end(), z.data(), z.data() + n);
                    trace.y1.push_back(y1);
                    trace.ybar1.push_back(ybar);
                    trace.y2.push_back(y2);
                    trace.u.push_back(control_law(y2 - ybar, cfg.K));
                    trace.delta_y.push_back(dy);
                    trace.M.push_back(M);
                }
                ++grid_index;

                const double t_next = t_k + (j + 1) * h;
                master_stepper.step(master, x, h, t_next);
                slave_stepper.step(slave, z, h, t_next);
            }

            // Right end of the closed interval, before the next sample replaces ybar.
            record.max_abs_delta_y = std::max(record.max_abs_delta_y, std::abs(sys.output(x) - ybar));
            record.max_norm_e = std::max(record.max_norm_e, (z - x).norm());
            trace.samples.push_back(record);
        }
    }
    catch (const DivergenceError& err)
    {
        trace.diverged = true;
        trace.divergence_time = err.time();
    }
    return trace;
}

double estimate_Ly(const LurieSystem& system, const Eigen::VectorXd& x0, double t_fin, double h)
{
    if (!(t_fin > 0.0) || !(h > 0.0))
        throw std::invalid_argument("estimate_Ly: t_fin and h must be positive");
    if (x0.size() != system.dim())
        throw std::invalid_argument("estimate_Ly: initial state has wrong dimension");

    const auto steps = static_cast<std::uint64_t>(std::llround(t_fin / h));
    Eigen::VectorXd x = x0;
    Eigen::VectorXd dx(system.dim());
    Rk4Stepper stepper(system.dim());
    auto rhs = [&system](const Eigen::VectorXd& s, Eigen::VectorXd& ds) { master_rhs(system, s, ds); };

    double peak = 0.0;
    for (std::uint64_t i = 0;; ++i)
    {
        master_rhs(system, x, dx);
        peak = std::max(peak, std::abs(system.C().dot(dx)));
        if (i == steps)
            break;
        stepper.step(rhs, x, h, static_cast<double>(i + 1) * h);
    }
    return peak;
}

double sampling_bound(double Delta, double L_y)
{
    if (!(Delta > 0.0) || !(L_y > 0.0))
        throw std::invalid_argument("sampling_bound: Delta and L_y must be positive");
    return Delta / L_y;
}

double optimal_sampling(double Delta, double L_y, double beta)
{
    if (!(Delta > 0.0) || !(L_y > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("optimal_sampling: Delta, L_y and beta must be positive");
    return Delta / (beta * L_y);
}

double bit_rate(double Ts)
{
    if (!(Ts > 0.0))
        throw std::invalid_argument("bit_rate: Ts must be positive");
    return 1.0 / Ts;
}

} // namespace zoomsync

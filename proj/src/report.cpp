#include "zoomsync/report.hpp"

#include <cstdio>
#include <ostream>

namespace zoomsync
{

std::string format_csv_number(double v)
{
    char buf[40];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

namespace
{

std::string format_short(double v)
{
    char buf[40];
    const int len = std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

void write_descending(std::ostream& out, const Polynomial& p)
{
    for (int i = p.degree(); i >= 0; --i)
        out << format_short(p.coefficient(i)) << (i > 0 ? ", " : "");
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& P)
{
    for (Eigen::Index i = 0; i < P.rows(); ++i)
    {
        out << "  [";
        for (Eigen::Index j = 0; j < P.cols(); ++j)
            out << format_csv_number(P(i, j)) << (j + 1 < P.cols() ? ", " : "");
        out << "]\n";
    }
}

} // namespace

void write_trace_csv(std::ostream& out, const Trace& trace)
{
    out << 't';
    for (Eigen::Index i = 1; i <= trace.dim; ++i)
        out << ",x" << i;
    for (Eigen::Index i = 1; i <= trace.dim; ++i)
        out << ",z" << i;
    out << ",y1,ybar1,y2,u,delta_y,M\n";

    const auto n = static_cast<std::size_t>(trace.dim);
    for (std::size_t r = 0; r < trace.rows(); ++r)
    {
        out << format_csv_number(trace.t[r]);
        for (std::size_t i = 0; i < n; ++i)
            out << ',' << format_csv_number(trace.x[r * n + i]);
        for (std::size_t i = 0; i < n; ++i)
            out << ',' << format_csv_number(trace.z[r * n + i]);
        out << ',' << format_csv_number(trace.y1[r]) << ',' << format_csv_number(trace.ybar1[r])
            << ',' << format_csv_number(trace.y2[r]) << ',' << format_csv_number(trace.u[r]) << ','
            << format_csv_number(trace.delta_y[r]) << ',' << format_csv_number(trace.M[r]) << '\n';
    }
}

void write_samples_csv(std::ostream& out, const Trace& trace)
{
    out << "k,t,M,ybar,bit,saturated,max_abs_delta_y,max_norm_e\n";
    for (std::size_t k = 0; k < trace.samples.size(); ++k)
    {
        const auto& s = trace.samples[k];
        out << k << ',' << format_csv_number(s.t) << ',' << format_csv_number(s.M) << ','
            << format_csv_number(s.ybar) << ',' << (s.bit == Bit::Plus ? '1' : '0') << ','
            << (s.saturated ? 1 : 0) << ',' << format_csv_number(s.max_abs_delta_y) << ','
            << format_csv_number(s.max_norm_e) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points)
{
    out << "delta,Ts,R,Qy,Q,flag\n";
    for (const auto& p : points)
        out << format_csv_number(p.Delta) << ',' << format_csv_number(p.Ts) << ','
            << format_csv_number(p.R) << ',' << format_csv_number(p.Q_y) << ','
            << format_csv_number(p.Q) << ',' << to_string(p.flag) << '\n';
}

void write_gain_csv(std::ostream& out, std::span<const GainPoint> points)
{
    out << "K,Q,flag\n";
    for (const auto& p : points)
        out << format_csv_number(p.K) << ',' << format_csv_number(p.Q) << ',' << to_string(p.flag)
            << '\n';
}

void write_fit_summary(std::ostream& out, const SweepFit& fit, std::span<const SweepPoint> points)
{
    out << "G_y = " << format_csv_number(fit.G_y) << '\n';
    out << "G = " << format_csv_number(fit.G) << '\n';
    out << "rss_y = " << format_csv_number(fit.rss_y) << '\n';
    out << "rss = " << format_csv_number(fit.rss) << '\n';
    out << "points_used = " << fit.points_used << '\n';
    out << "points_flagged = " << points.size() - fit.points_used << '\n';
    out << "# residuals: R, Qy - G_y/R, Q - G/R\n";
    for (const auto& p : points)
    {
        if (p.flag != PointStatus::Ok)
            continue;
        out << "residual = " << format_csv_number(p.R) << ", "
            << format_csv_number(p.Q_y - fit.G_y / p.R) << ", "
            << format_csv_number(p.Q - fit.G / p.R) << '\n';
    }
}

SystemAnalysis analyze_system(const LurieSystem& system, double K, double Delta,
                              std::span<const double> gains, std::span<const double> rates,
                              const PassificationSearchOptions& opts)
{
    SystemAnalysis a;
    a.transfer = transfer_function(system.A(), system.B(), system.C());
    a.hmp = is_hyper_minimum_phase(system.A(), system.B(), system.C());
    a.L_phi = system.lipschitz();
    a.K = K;
    a.Delta = Delta;

    const double configured[] = {K};
    a.at_gain = search_passifying_gain(system.A(), system.B(), system.C(), configured, rates, opts);
    if (a.at_gain)
        a.Ce_plus = error_gain_bound(a.at_gain->P, K, a.L_phi, a.at_gain->mu);
    a.searched = search_passifying_gain(system.A(), system.B(), system.C(), gains, rates, opts);
    return a;
}

void write_analysis_report(std::ostream& out, const SystemAnalysis& a)
{
    out << "HMP: " << (a.hmp ? "true" : "false") << '\n';
    out << "b (descending powers): ";
    write_descending(out, a.transfer.numerator);
    out << '\n';
    out << "a (descending powers): ";
    write_descending(out, a.transfer.denominator);
    out << '\n';
    out << "L_phi: " << format_short(a.L_phi) << '\n';
    out << "K: " << format_short(a.K) << '\n';
    if (a.at_gain)
    {
        out << "passification at K: feasible, mu = " << format_short(a.at_gain->mu) << '\n';
        out << "P:\n";
        write_matrix(out, a.at_gain->P);
        out << "C_e+: " << format_csv_number(*a.Ce_plus) << '\n';
        out << "C_e+ * Delta: " << format_csv_number(*a.Ce_plus * a.Delta) << " (Delta = "
            << format_short(a.Delta) << ")\n";
    }
    else
    {
        out << "passification at K: not found\n";
    }
    if (a.searched)
        out << "gain search: feasible at K = " << format_short(a.searched->K)
            << ", mu = " << format_short(a.searched->mu) << '\n';
    else
        out << "gain search: infeasible at every searched gain\n";
}

} // namespace zoomsync

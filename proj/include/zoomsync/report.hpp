#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "zoomsync/analysis.hpp"
#include "zoomsync/control.hpp"
#include "zoomsync/passification.hpp"
#include "zoomsync/simloop.hpp"

namespace zoomsync
{

/// 17 significant digits, '.' decimal separator.
std::string format_csv_number(double v);

/// Header t,x1..xn,z1..zn,y1,ybar1,y2,u,delta_y,M; one row per stored grid point.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Per-sampling-interval records: k,t,M,ybar,bit,saturated,max_abs_delta_y,max_norm_e.
void write_samples_csv(std::ostream& out, const Trace& trace);

/// Header delta,Ts,R,Qy,Q,flag.
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

/// Header K,Q,flag.
void write_gain_csv(std::ostream& out, std::span<const GainPoint> points);

void write_fit_summary(std::ostream& out, const SweepFit& fit, std::span<const SweepPoint> points);

struct SystemAnalysis
{
    TransferFunction transfer;
    bool hmp = false;
    double L_phi = 0.0;
    double K = 0.0;                         ///< configured controller gain
    double Delta = 0.0;
    std::optional<PassifyingGain> at_gain;  ///< certificate for the configured K
    std::optional<PassifyingGain> searched; ///< first certificate over the gain grid
    std::optional<double> Ce_plus;          ///< bound for the configured K, if certified

    bool feasible() const { return hmp && (at_gain || searched); }
};

/**
 * Transfer function, HMP verdict and passification search.  For the
 * configured gain the rates are tried in the given order; the first
 * certificate defines C_e+.
 */
SystemAnalysis analyze_system(const LurieSystem& system, double K, double Delta,
                              std::span<const double> gains, std::span<const double> rates,
                              const PassificationSearchOptions& opts = {});

void write_analysis_report(std::ostream& out, const SystemAnalysis& analysis);

} // namespace zoomsync

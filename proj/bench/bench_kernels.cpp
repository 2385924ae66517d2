// Compares the OpenMP kernels with their serial references:
//   - delta sweep over the Chua loop (one simulation per point)
//   - passification grid scan
// Usage: bench_kernels [t_fin=100] [repeats=3]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "zoomsync/analysis.hpp"
#include "zoomsync/config.hpp"
#include "zoomsync/passification.hpp"

using namespace zoomsync;

namespace
{

template <class F>
double best_of(int repeats, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < repeats; ++r)
    {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical)
{
    std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms << " ms, speedup "
              << serial_ms / parallel_ms << "x, results " << (identical ? "identical" : "DIFFER")
              << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    const double t_fin = argc > 1 ? std::atof(argv[1]) : 100.0;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    std::cout << "threads: " << omp_get_max_threads() << ", t_fin = " << t_fin << " s\n";

    RunConfig cfg = parse_config_text("");
    cfg.t_fin = t_fin;
    const auto base = make_sim_config(cfg);

    std::vector<SweepPoint> serial, parallel;
    const double s_ms = best_of(repeats, [&] { serial = run_delta_sweep_serial(base, cfg.design, cfg.deltas); });
    const double p_ms = best_of(repeats, [&] { parallel = run_delta_sweep(base, cfg.design, cfg.deltas); });
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].Q_y == parallel[i].Q_y && serial[i].Q == parallel[i].Q;
    report("delta sweep", s_ms, p_ms, same);

    const auto system = make_system(cfg);
    const PassificationFamily family(system.A(), system.B(), system.C(), cfg.K, 0.1);
    const auto grid = passification_grid(family.free_parameters(), {});
    std::vector<double> gs, gp;
    const double gs_ms = best_of(repeats, [&] { gs = scan_grid_serial(family, grid); });
    const double gp_ms = best_of(repeats, [&] { gp = scan_grid(family, grid); });
    report("passification grid (" + std::to_string(grid.size()) + " points)", gs_ms, gp_ms, gs == gp);
    return same && gs == gp ? 0 : 1;
}

// zoomsync: master-slave synchronization over a binary zooming coder/decoder channel.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "zoomsync/analysis.hpp"
#include "zoomsync/config.hpp"
#include "zoomsync/integrator.hpp"
#include "zoomsync/report.hpp"

namespace fs = std::filesystem;
using namespace zoomsync;

namespace
{

enum ExitCode
{
    kSuccess = 0,
    kInternal = 1,
    kConfigError = 2,
    kDivergence = 3,
    kInfeasible = 4,
    kIoError = 5,
};

class IoError : public std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct CommonOptions
{
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config_path, "Configuration file (key = value)");
    cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--set", opts.overrides, "Override, e.g. --set codec.Delta=0.5")->take_all();
    cmd->add_option("--jobs", opts.jobs, "Worker threads for sweeps (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
}

RunConfig load(const CommonOptions& opts)
{
    RunConfig cfg = opts.config_path.empty() ? parse_config_text("")
                                             : parse_config_file(opts.config_path);
    for (const auto& o : opts.overrides)
        apply_override(cfg, o);
    return cfg;
}

class Outputs
{
public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec)
            throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    template <class Writer>
    void write(const std::string& name, const std::string& description, Writer&& writer)
    {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open " + path.string());
        writer(out);
        out.flush();
        if (!out)
            throw IoError("failed writing " + path.string());
        std::cout << "wrote " << path.string() << " (" << description << ")\n";
    }

private:
    fs::path dir_;
};

void write_effective(Outputs& outputs, const RunConfig& cfg)
{
    outputs.write("effective_config.cfg", "resolved configuration",
                  [&](std::ostream& o) { o << echo_config(cfg); });
}

int cmd_simulate(const RunConfig& cfg, Outputs& outputs)
{
    const auto sim = make_sim_config(cfg);
    const auto trace = simulate(sim);
    write_effective(outputs, cfg);
    outputs.write("trace.csv", "state, output, control and transmission-error histories",
                  [&](std::ostream& o) { write_trace_csv(o, trace); });
    outputs.write("samples.csv", "per-sample coder range, decoded output and bits",
                  [&](std::ostream& o) { write_samples_csv(o, trace); });
    outputs.write("bits.txt", "bit transcript", [&](std::ostream& o) {
        const auto bits = trace.bits();
        write_bit_transcript(o, bits);
    });
    if (trace.diverged)
    {
        std::cerr << "error: simulation diverged at t = " << trace.divergence_time << " s\n";
        return kDivergence;
    }
    outputs.write("run_summary.txt", "accuracy indexes", [&](std::ostream& o) {
        o << "Ts = " << format_csv_number(sim.codec.Ts) << '\n';
        o << "R = " << format_csv_number(bit_rate(sim.codec.Ts)) << '\n';
        o << "Qy = " << format_csv_number(relative_transmission_error(trace.metrics)) << '\n';
        o << "Q = " << format_csv_number(normalized_sync_error(trace.metrics)) << '\n';
        o << "transient_time = " << format_csv_number(transient_time(trace)) << '\n';
        o << "saturations = " << trace.saturation_count << '\n';
        o << "bound_violations_after_50s = "
          << transmission_bound_violations(trace, cfg.design.L_y, 50.0) << '\n';
    });
    return kSuccess;
}

int cmd_sweep_delta(const RunConfig& cfg, Outputs& outputs)
{
    const auto base = make_sim_config(cfg);
    const auto points = run_delta_sweep(base, cfg.design, cfg.deltas);
    write_effective(outputs, cfg);
    outputs.write("sweep_delta.csv", "Qy and Q versus bit rate",
                  [&](std::ostream& o) { write_sweep_csv(o, points); });
    bool all_ok = true;
    for (const auto& p : points)
        all_ok = all_ok && p.flag == PointStatus::Ok;
    try
    {
        const auto fit = fit_sweep(points);
        outputs.write("fit_summary.txt", "inverse-law fits G_y, G",
                      [&](std::ostream& o) { write_fit_summary(o, fit, points); });
        std::cout << "G_y = " << fit.G_y << ", G = " << fit.G << '\n';
    }
    catch (const std::domain_error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kDivergence;
    }
    return all_ok ? kSuccess : kDivergence;
}

int cmd_sweep_gain(const RunConfig& cfg, Outputs& outputs)
{
    const auto base = make_sim_config(cfg);
    const auto points = run_gain_sweep(base, cfg.gains);
    write_effective(outputs, cfg);
    outputs.write("sweep_gain.csv", "Q versus controller gain",
                  [&](std::ostream& o) { write_gain_csv(o, points); });
    for (const auto& p : points)
        if (p.flag != PointStatus::Ok)
            return kDivergence;
    return kSuccess;
}

int cmd_analyze(const RunConfig& cfg, Outputs& outputs)
{
    const auto system = make_system(cfg);
    const auto analysis =
        analyze_system(system, cfg.K, cfg.Delta, cfg.passify_gains, cfg.passify_rates);
    write_effective(outputs, cfg);
    outputs.write("analysis_report.txt", "HMP verdict, transfer function, passification",
                  [&](std::ostream& o) { write_analysis_report(o, analysis); });
    std::cout << "HMP: " << (analysis.hmp ? "true" : "false") << '\n';
    return analysis.feasible() ? kSuccess : kInfeasible;
}

int cmd_estimate_ly(const RunConfig& cfg, Outputs& outputs)
{
    const auto sim = make_sim_config(cfg);
    const double L_y = estimate_Ly(sim.system, sim.x0, cfg.ly_t_fin, cfg.ly_h);
    write_effective(outputs, cfg);
    outputs.write("ly_estimate.txt", "output-rate bound",
                  [&](std::ostream& o) { o << "L_y = " << format_csv_number(L_y) << '\n'; });
    std::cout << "L_y = " << L_y << '\n';
    return kSuccess;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Controlled master-slave synchronization over a rate-limited binary channel"};
    app.require_subcommand(1);

    struct Command
    {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&, Outputs&);
    };
    const Command commands[] = {
        {"simulate", "Single closed-loop run: traces, samples, bit transcript", cmd_simulate},
        {"sweep-delta", "Transmission-error sweep and inverse-law fits", cmd_sweep_delta},
        {"sweep-gain", "Controller-gain sweep at fixed Delta", cmd_sweep_gain},
        {"analyze-system", "Transfer function, HMP test, passification, C_e+", cmd_analyze},
        {"estimate-ly", "Estimate the output-rate bound L_y", cmd_estimate_ly},
    };

    CommonOptions opts;
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands)
    {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, opts);
        subs.emplace_back(sub, &c);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kSuccess : kConfigError;
    }

    try
    {
        if (opts.jobs > 0)
            omp_set_num_threads(opts.jobs);
        const RunConfig cfg = load(opts);
        Outputs outputs(opts.out_dir);
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed())
                return cmd->run(cfg, outputs);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const IoError& e)
    {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIoError;
    }
    catch (const DivergenceError& e)
    {
        std::cerr << "error: divergence at t = " << e.time() << " s\n";
        return kDivergence;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zoomsync/lurie.hpp"
#include "zoomsync/simloop.hpp"

namespace zoomsync
{

/// Parse or validation failure; `where()` names the source line or override.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/**
 * Fully resolved experiment description.  Defaults reproduce the Chua
 * experiment: p = 10, q = 15.6, m0 = 0.33, m1 = 0.945, K = 1, M0 = 5,
 * x(0) = 0.3 (all components), z(0) = 0, t_fin = 1000 s.
 *
 * File format: one `section.key = value` per line, `#` starts a comment,
 * lists are comma separated.
 */
struct RunConfig
{
    ChuaParams chua{};
    CodecDesign design{};
    double Delta = 1.0;
    double K = 1.0;
    std::vector<double> x0{0.3};  ///< a single value is broadcast to every component
    std::vector<double> z0{0.0};
    double t_fin = 1000.0;
    int substeps = 10;
    int store_every = 0;
    std::vector<double> deltas{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6,
                               1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
    std::vector<double> gains{1.0, 2.0, 5.0, 10.0};
    double ly_t_fin = 1000.0;
    double ly_h = 1e-3;
    std::vector<double> passify_gains{1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
    std::vector<double> passify_rates{1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.001};

    /// Source of each explicitly set key, for error messages.
    std::map<std::string, std::string, std::less<>> origins;
};

/// Parses and validates; any error aborts with ConfigError (no partial result).
RunConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");
RunConfig parse_config_file(const std::filesystem::path& path);

/// Applies one `key=value` override, then revalidates.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Throws ConfigError on any constraint violation.
void validate(const RunConfig& cfg);

/// Parseable dump of every key (round-trips exactly) plus derived quantities as comments.
std::string echo_config(const RunConfig& cfg);

/// All known keys, in echo order.
std::vector<std::string> config_keys();

LurieSystem make_system(const RunConfig& cfg);
CodecConfig make_codec(const RunConfig& cfg);
SimConfig make_sim_config(const RunConfig& cfg);

} // namespace zoomsync

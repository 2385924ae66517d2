#include "zoomsync/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace zoomsync
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_list(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i > 0)
            out += ", ";
        out += format_number(values[i]);
    }
    return out;
}

double parse_double(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("expected a real number, got '" + std::string(text) + "'");
    return v;
}

int parse_int(std::string_view text)
{
    text = trim(text);
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    while (true)
    {
        const auto comma = text.find(',');
        out.push_back(parse_double(text.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

struct Binding
{
    std::string key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

Binding real(std::string key, double RunConfig::*field)
{
    return {std::move(key), [field](RunConfig& c, std::string_view v) { c.*field = parse_double(v); },
            [field](const RunConfig& c) { return format_number(c.*field); }};
}

template <class Outer>
Binding nested(std::string key, Outer RunConfig::*outer, double Outer::*field)
{
    return {std::move(key),
            [outer, field](RunConfig& c, std::string_view v) { (c.*outer).*field = parse_double(v); },
            [outer, field](const RunConfig& c) { return format_number((c.*outer).*field); }};
}

Binding integer(std::string key, int RunConfig::*field)
{
    return {std::move(key), [field](RunConfig& c, std::string_view v) { c.*field = parse_int(v); },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Binding list(std::string key, std::vector<double> RunConfig::*field)
{
    return {std::move(key), [field](RunConfig& c, std::string_view v) { c.*field = parse_list(v); },
            [field](const RunConfig& c) { return format_list(c.*field); }};
}

const std::vector<Binding>& bindings()
{
    static const std::vector<Binding> table{
        nested("system.p", &RunConfig::chua, &ChuaParams::p),
        nested("system.q", &RunConfig::chua, &ChuaParams::q),
        nested("system.m0", &RunConfig::chua, &ChuaParams::m0),
        nested("system.m1", &RunConfig::chua, &ChuaParams::m1),
        nested("codec.M0", &RunConfig::design, &CodecDesign::M0),
        real("codec.Delta", &RunConfig::Delta),
        nested("codec.L_y", &RunConfig::design, &CodecDesign::L_y),
        nested("codec.beta", &RunConfig::design, &CodecDesign::beta),
        nested("codec.zoom_rate", &RunConfig::design, &CodecDesign::zoom_rate),
        real("control.K", &RunConfig::K),
        list("init.x0", &RunConfig::x0),
        list("init.z0", &RunConfig::z0),
        real("run.t_fin", &RunConfig::t_fin),
        integer("run.substeps", &RunConfig::substeps),
        integer("run.store_every", &RunConfig::store_every),
        list("sweep.deltas", &RunConfig::deltas),
        list("sweep.gains", &RunConfig::gains),
        real("ly.t_fin", &RunConfig::ly_t_fin),
        real("ly.h", &RunConfig::ly_h),
        list("passify.gains", &RunConfig::passify_gains),
        list("passify.rates", &RunConfig::passify_rates),
    };
    return table;
}

void assign(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where)
{
    for (const auto& b : bindings())
    {
        if (b.key != key)
            continue;
        try
        {
            b.set(cfg, value);
        }
        catch (const std::exception& e)
        {
            throw ConfigError(where, std::string(key) + ": " + e.what());
        }
        cfg.origins.insert_or_assign(std::string(key), where);
        return;
    }
    throw ConfigError(where, "unknown key '" + std::string(key) + "'");
}

void split_assignment(std::string_view line, std::string_view& key, std::string_view& value,
                      const std::string& where)
{
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError(where, "expected 'key = value'");
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    if (key.empty())
        throw ConfigError(where, "missing key");
    if (value.empty())
        throw ConfigError(where, std::string(key) + ": missing value");
}

} // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto& b : bindings())
        keys.push_back(b.key);
    return keys;
}

void validate(const RunConfig& cfg)
{
    auto fail = [&cfg](std::string_view key, const std::string& message) {
        const auto it = cfg.origins.find(key);
        const std::string where = it != cfg.origins.end() ? it->second : std::string("default");
        throw ConfigError(where, std::string(key) + ": " + message);
    };
    auto positive = [&](std::string_view key, double v) {
        if (!(v > 0.0) || !std::isfinite(v))
            fail(key, "must be positive");
    };
    auto all_positive = [&](std::string_view key, const std::vector<double>& values) {
        if (values.empty())
            fail(key, "must not be empty");
        for (double v : values)
            positive(key, v);
    };
    auto state = [&](std::string_view key, const std::vector<double>& values) {
        if (values.size() != 1 && values.size() != 3)
            fail(key, "expects 1 or 3 components");
        for (double v : values)
            if (!std::isfinite(v))
                fail(key, "must be finite");
    };

    positive("system.p", cfg.chua.p);
    positive("system.q", cfg.chua.q);
    if (!std::isfinite(cfg.chua.m0))
        fail("system.m0", "must be finite");
    if (!std::isfinite(cfg.chua.m1))
        fail("system.m1", "must be finite");
    positive("codec.Delta", cfg.Delta);
    positive("codec.M0", cfg.design.M0);
    if (cfg.design.M0 < cfg.Delta / 2.0)
        fail("codec.M0", "must be at least codec.Delta / 2");
    positive("codec.L_y", cfg.design.L_y);
    positive("codec.beta", cfg.design.beta);
    if (!(cfg.design.zoom_rate >= 0.0) || !std::isfinite(cfg.design.zoom_rate))
        fail("codec.zoom_rate", "must be non-negative");
    if (!std::isfinite(cfg.K))
        fail("control.K", "must be finite");
    state("init.x0", cfg.x0);
    state("init.z0", cfg.z0);
    positive("run.t_fin", cfg.t_fin);
    if (cfg.substeps < 1)
        fail("run.substeps", "must be at least 1");
    if (cfg.store_every < 0)
        fail("run.store_every", "must be non-negative");
    all_positive("sweep.deltas", cfg.deltas);
    for (double Delta : cfg.deltas)
        if (cfg.design.M0 < Delta / 2.0)
            fail("sweep.deltas", "every Delta / 2 must be at most codec.M0");
    all_positive("sweep.gains", cfg.gains);
    positive("ly.t_fin", cfg.ly_t_fin);
    positive("ly.h", cfg.ly_h);
    if (cfg.passify_gains.empty())
        fail("passify.gains", "must not be empty");
    all_positive("passify.rates", cfg.passify_rates);
}

RunConfig parse_config_text(std::string_view text, std::string_view origin)
{
    RunConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        std::string_view key, value;
        split_assignment(line, key, value, where);
        assign(cfg, key, value, where);
    }
    validate(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path.string(), "cannot open configuration file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void apply_override(RunConfig& cfg, std::string_view assignment)
{
    const std::string where = "--set " + std::string(assignment);
    std::string_view key, value;
    split_assignment(trim(assignment), key, value, where);
    assign(cfg, key, value, where);
    validate(cfg);
}

std::string echo_config(const RunConfig& cfg)
{
    std::ostringstream out;
    out << "# effective configuration (defaults + overrides)\n";
    for (const auto& b : bindings())
        out << b.key << " = " << b.get(cfg) << '\n';

    const auto codec = make_codec(cfg);
    out << "# derived: codec.Ts = " << format_number(codec.Ts) << " s\n";
    out << "# derived: codec.M_inf = " << format_number(codec.M_inf) << '\n';
    out << "# derived: codec.rho = " << format_number(codec.rho) << '\n';
    out << "# derived: R = " << format_number(bit_rate(codec.Ts)) << " bit/s\n";
    out << "# derived: L_phi = " << format_number(chua_lipschitz(cfg.chua)) << '\n';
    return out.str();
}

LurieSystem make_system(const RunConfig& cfg)
{
    return chua_system(cfg.chua);
}

CodecConfig make_codec(const RunConfig& cfg)
{
    return codec_for_delta(cfg.Delta, cfg.design);
}

namespace
{

Eigen::VectorXd broadcast(const std::vector<double>& values, Eigen::Index n)
{
    if (values.size() == 1)
        return Eigen::VectorXd::Constant(n, values.front());
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = values[i];
    return v;
}

} // namespace

SimConfig make_sim_config(const RunConfig& cfg)
{
    auto system = make_system(cfg);
    const auto n = system.dim();
    return SimConfig{std::move(system),  make_codec(cfg),       cfg.K,
                     broadcast(cfg.x0, n), broadcast(cfg.z0, n), cfg.t_fin,
                     cfg.substeps,       cfg.store_every};
}

} // namespace zoomsync

#include "catch_amalgamated.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "zoomsync/config.hpp"

using namespace zoomsync;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("empty text gives the default experiment", "[config]")
{
    const auto cfg = parse_config_text("");
    CHECK(cfg.chua.p == 10.0);
    CHECK(cfg.chua.q == 15.6);
    CHECK(cfg.chua.m0 == 0.33);
    CHECK(cfg.chua.m1 == 0.945);
    CHECK(cfg.design.M0 == 5.0);
    CHECK(cfg.design.L_y == 45.0);
    CHECK(cfg.K == 1.0);
    CHECK(cfg.t_fin == 1000.0);
    CHECK(cfg.deltas.size() == 15);

    const auto sim = make_sim_config(cfg);
    CHECK(sim.x0 == Eigen::VectorXd::Constant(3, 0.3));
    CHECK(sim.z0 == Eigen::VectorXd::Zero(3));
    CHECK(sim.codec.Ts == optimal_sampling(1.0, 45.0));
    CHECK(sim.codec.M_inf == 0.5);
    CHECK(make_system(cfg).lipschitz() == chua_lipschitz(ChuaParams{}));
}

TEST_CASE("parsing values, lists and comments", "[config]")
{
    const auto cfg = parse_config_text(R"(
# experiment
system.p = 9.5
codec.Delta = 0.25   # finer
control.K=2
init.x0 = 0.1, -0.2, 0.3
sweep.gains = 1,2
run.substeps = 20
)");
    CHECK(cfg.chua.p == 9.5);
    CHECK(cfg.Delta == 0.25);
    CHECK(cfg.K == 2.0);
    CHECK(cfg.x0 == std::vector<double>{0.1, -0.2, 0.3});
    CHECK(cfg.gains == std::vector<double>{1.0, 2.0});
    CHECK(cfg.substeps == 20);
    CHECK(make_sim_config(cfg).x0 == Eigen::Vector3d(0.1, -0.2, 0.3));
}

TEST_CASE("echo round-trips exactly", "[config]")
{
    auto cfg = parse_config_text("codec.Delta = 0.1\nsystem.q = 14.87\ninit.z0 = 0.1,0.2,0.30000000000000004\n");
    const auto text = echo_config(cfg);
    const auto again = parse_config_text(text);
    CHECK(echo_config(again) == text);
    CHECK(again.Delta == 0.1);
    CHECK(again.chua.q == 14.87);
    CHECK(again.z0[2] == 0.30000000000000004);
    for (const auto& key : config_keys())
        CHECK_THAT(text, ContainsSubstring(key + " = "));
}

TEST_CASE("echo lists derived quantities as comments", "[config]")
{
    const auto text = echo_config(parse_config_text(""));
    CHECK_THAT(text, ContainsSubstring("# derived:"));
    CHECK_THAT(text, ContainsSubstring("0.013164823591363877"));
    CHECK_THAT(text, ContainsSubstring("L_phi = 2.2"));
}

TEST_CASE("errors carry the line number", "[config]")
{
    try
    {
        parse_config_text("control.K = 1\nrun.t_fin = -5\n", "exp.cfg");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.where() == "exp.cfg:2");
        CHECK_THAT(e.what(), ContainsSubstring("run.t_fin"));
    }
    CHECK_THROWS_WITH(parse_config_text("codec.bogus = 1\n", "a"), ContainsSubstring("a:1"));
    CHECK_THROWS_WITH(parse_config_text("\n\ncontrol.K = abc\n", "a"), ContainsSubstring("a:3"));
    CHECK_THROWS_AS(parse_config_text("control.K 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("run.substeps = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("init.x0 = 1, 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("codec.Delta = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("sweep.deltas = \n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("system.p = nan\n"), ConfigError);
}

TEST_CASE("overrides", "[config]")
{
    auto cfg = parse_config_text("");
    apply_override(cfg, "control.K=5");
    CHECK(cfg.K == 5.0);
    apply_override(cfg, "sweep.deltas = 0.5,1");
    CHECK(cfg.deltas == std::vector<double>{0.5, 1.0});
    CHECK_THROWS_AS(apply_override(cfg, "control.K"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "run.t_fin=-1"), ConfigError);
    CHECK_THROWS_WITH(apply_override(cfg, "nope.key=1"), ContainsSubstring("nope.key"));
}

TEST_CASE("config files", "[config]")
{
    const auto path = std::filesystem::temp_directory_path() / "zoomsync_test_config.cfg";
    {
        std::ofstream out(path);
        out << "control.K = 3\n";
    }
    CHECK(parse_config_file(path).K == 3.0);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(parse_config_file(path), ConfigError);
}

#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace
{

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("zoomsync_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

int run(const std::string& args)
{
    const std::string cmd = std::string(ZOOMSYNC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("analyze-system reports the Chua verdict", "[cli]")
{
    const auto out = scratch("analyze");
    REQUIRE(run("analyze-system --out " + out.string()) == 0);
    const auto report = slurp(out / "analysis_report.txt");
    CHECK_THAT(report, ContainsSubstring("HMP: true"));
    CHECK_THAT(report, ContainsSubstring("10, 10, 156"));
    CHECK_THAT(report, ContainsSubstring("1, 11, 15.6, 156"));
    CHECK_THAT(report, ContainsSubstring("C_e+"));
    CHECK(fs::exists(out / "effective_config.cfg"));
    fs::remove_all(out);
}

TEST_CASE("simulate reruns byte-identically from the echoed configuration", "[cli]")
{
    const auto first = scratch("sim_a");
    const auto second = scratch("sim_b");
    REQUIRE(run("simulate --out " + first.string() + " --set run.t_fin=20 --set codec.Delta=0.7") == 0);
    for (const char* f : {"trace.csv", "samples.csv", "bits.txt", "run_summary.txt", "effective_config.cfg"})
        REQUIRE(fs::exists(first / f));
    REQUIRE(run("simulate --config " + (first / "effective_config.cfg").string() + " --out " +
                second.string()) == 0);
    for (const char* f : {"trace.csv", "samples.csv", "bits.txt", "run_summary.txt", "effective_config.cfg"})
        CHECK(slurp(first / f) == slurp(second / f));

    const auto trace = slurp(first / "trace.csv");
    CHECK(trace.rfind("t,x1,x2,x3,z1,z2,z3,y1,ybar1,y2,u,delta_y,M\n", 0) == 0);
    CHECK_THAT(slurp(first / "run_summary.txt"), ContainsSubstring("Q = "));
    fs::remove_all(first);
    fs::remove_all(second);
}

TEST_CASE("sweep-delta writes the table and the fits", "[cli]")
{
    const auto out = scratch("sweep");
    REQUIRE(run("sweep-delta --out " + out.string() + " --set run.t_fin=20 --set sweep.deltas=0.5,1,2 --jobs 2") == 0);
    const auto csv = slurp(out / "sweep_delta.csv");
    CHECK(csv.rfind("delta,Ts,R,Qy,Q,flag\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK_THAT(slurp(out / "fit_summary.txt"), ContainsSubstring("G_y = "));
    fs::remove_all(out);
}

TEST_CASE("sweep-gain writes one row per gain", "[cli]")
{
    const auto out = scratch("gain");
    REQUIRE(run("sweep-gain --out " + out.string() + " --set run.t_fin=20 --set sweep.gains=1,5") == 0);
    const auto csv = slurp(out / "sweep_gain.csv");
    CHECK(csv.rfind("K,Q,flag\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    fs::remove_all(out);
}

TEST_CASE("exit codes", "[cli]")
{
    const auto out = scratch("codes");
    CHECK(run("") == 2);
    CHECK(run("simulate --bogus-flag") == 2);
    CHECK(run("simulate --out " + out.string() + " --set run.t_fin=-1") == 2);
    CHECK(run("simulate --out " + out.string() + " --set no.such=1") == 2);
    CHECK(run("simulate --config " + (out / "missing.cfg").string()) == 2);
    CHECK(run("analyze-system --out " + out.string() + " --set control.K=-100 --set passify.gains=-100") == 4);
    CHECK(run("simulate --out /dev/null/x --set run.t_fin=1") == 5);
    fs::remove_all(out);
}

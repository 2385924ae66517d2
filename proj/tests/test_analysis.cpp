#include "catch_amalgamated.hpp"

#include <cmath>
#include <vector>

#include "zoomsync/analysis.hpp"

using namespace zoomsync;
using Catch::Approx;

namespace
{

SimConfig chua_config(double t_fin, double K = 1.0)
{
    const auto sys = chua_system(ChuaParams{});
    return SimConfig{sys, codec_for_delta(1.0, CodecDesign{}), K,
                     Eigen::VectorXd::Constant(3, 0.3), Eigen::VectorXd::Zero(3), t_fin};
}

// One-dimensional trace with t = 0, 1, ..., n - 1.
Trace synthetic(const std::vector<double>& y1, const std::vector<double>& dy,
                const std::vector<double>& x, const std::vector<double>& z)
{
    Trace tr;
    tr.dim = 1;
    tr.Ts = 1.0;
    for (std::size_t i = 0; i < y1.size(); ++i)
        tr.t.push_back(static_cast<double>(i));
    tr.y1 = y1;
    tr.delta_y = dy;
    tr.x = x;
    tr.z = z;
    return tr;
}

} // namespace

TEST_CASE("accuracy indexes on a synthetic trace", "[analysis]")
{
    // window for t_fin = 10 is t in [8, 10]
    const std::vector<double> y1{0, 4, -8, 1, 1, 1, 1, 1, 2, -2, 1};
    const std::vector<double> dy{5, 5, 5, 5, 5, 5, 5, 5, 0.5, -1.0, 0.25};
    const std::vector<double> x{1, 2, 3, -10, 0, 0, 0, 0, 5, 5, 5};
    const std::vector<double> z{1, 2, 3, -10, 0, 0, 0, 0, 5, 7, 4};
    const auto tr = synthetic(y1, dy, x, z);
    CHECK(relative_transmission_error(tr, 10.0) == Approx(1.0 / 8.0));
    CHECK(normalized_sync_error(tr, 10.0) == Approx(2.0 / 10.0));
    // rows past t_fin are ignored
    CHECK(relative_transmission_error(tr, 9.0) == Approx(1.0 / 8.0));
    CHECK_THROWS_AS(relative_transmission_error(tr, 0.5), std::domain_error);
}

TEST_CASE("accuracy indexes reject degenerate input", "[analysis]")
{
    const auto zero = synthetic({0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0});
    CHECK_THROWS_AS(relative_transmission_error(zero, 2.0), std::domain_error);
    CHECK_THROWS_AS(normalized_sync_error(zero, 2.0), std::domain_error);
    CHECK_THROWS_AS(relative_transmission_error(RunMetrics{}), std::domain_error);
    RunMetrics m;
    m.window_points = 3;
    m.max_abs_y1 = 2.0;
    m.window_max_abs_delta_y = 0.5;
    CHECK(relative_transmission_error(m) == 0.25);
    CHECK_THROWS_AS(normalized_sync_error(m), std::domain_error);
}

TEST_CASE("inverse-law fit", "[analysis]")
{
    const std::vector<RatePoint> exact{{10.0, 0.5}, {20.0, 0.25}, {50.0, 0.1}, {100.0, 0.05}};
    CHECK(fit_inverse_law(exact) == Approx(5.0).epsilon(1e-12));
    CHECK(inverse_law_rss(exact, 5.0) < 1e-24);

    // G = sum(Q/R) / sum(1/R^2) = (0.1 + 0.01) / (0.01 + 0.0025)
    const std::vector<RatePoint> two{{10.0, 1.0}, {20.0, 0.2}};
    CHECK(fit_inverse_law(two) == Approx(8.8).epsilon(1e-14));
    CHECK(inverse_law_rss(two, 8.8) == Approx(std::pow(1.0 - 0.88, 2) + std::pow(0.2 - 0.44, 2)));

    // non-positive rates are skipped
    const std::vector<RatePoint> with_bad{{10.0, 1.0}, {20.0, 0.2}, {0.0, 100.0}, {-5.0, 3.0}};
    CHECK(fit_inverse_law(with_bad) == fit_inverse_law(two));
    const std::vector<RatePoint> none{{0.0, 1.0}, {-1.0, 1.0}};
    CHECK_THROWS_AS(fit_inverse_law(none), std::domain_error);
}

TEST_CASE("inverse-law fit is scale equivariant and minimizes the residual", "[analysis][property]")
{
    const std::vector<RatePoint> pts{{12.0, 0.9}, {30.0, 0.3}, {75.0, 0.2}, {140.0, 0.04}, {380.0, 0.03}};
    const double G = fit_inverse_law(pts);
    for (double s : {0.1, 3.0, 1000.0})
    {
        std::vector<RatePoint> scaled = pts;
        for (auto& p : scaled)
            p.Q *= s;
        REQUIRE(fit_inverse_law(scaled) == Approx(s * G).epsilon(1e-13));
    }
    const double best = inverse_law_rss(pts, G);
    for (double d : {-1e-3, 1e-3, -0.5, 0.5})
        REQUIRE(inverse_law_rss(pts, G + d) > best);
}

TEST_CASE("streaming metrics match the stored rows", "[analysis]")
{
    auto cfg = chua_config(60.0);
    cfg.store_every = 1;
    const auto full = simulate(cfg);
    REQUIRE_FALSE(full.diverged);
    CHECK(relative_transmission_error(full, 60.0) == relative_transmission_error(full.metrics));
    CHECK(normalized_sync_error(full, 60.0) == normalized_sync_error(full.metrics));

    cfg.store_every = 10;
    const auto coarse = simulate(cfg);
    CHECK(normalized_sync_error(coarse, 60.0) ==
          Approx(normalized_sync_error(coarse.metrics)).epsilon(0.1));
}

TEST_CASE("parallel and serial delta sweeps agree", "[analysis][parallel]")
{
    const auto cfg = chua_config(40.0);
    const std::vector<double> deltas{2.0, 0.5, 1.0, 4000.0};
    const auto par = run_delta_sweep(cfg, CodecDesign{}, deltas);
    const auto ser = run_delta_sweep_serial(cfg, CodecDesign{}, deltas);
    REQUIRE(par.size() == 4);
    REQUIRE(ser.size() == 4);
    for (std::size_t i = 0; i < par.size(); ++i)
    {
        CHECK(par[i].Delta == ser[i].Delta);
        CHECK(par[i].flag == ser[i].flag);
        if (par[i].flag == PointStatus::Ok)
        {
            CHECK(par[i].Q_y == ser[i].Q_y);
            CHECK(par[i].Q == ser[i].Q);
        }
    }
    // ordered by rate whatever the flag; the run is shorter than Ts for Delta = 4000
    CHECK(par[0].Delta == 4000.0);
    CHECK(par[0].flag == PointStatus::Failed);
    CHECK(par[0].R == Approx(75.96 / 4000.0).epsilon(1e-3));
    CHECK(par[1].Delta == 2.0);
    CHECK(par[2].Delta == 1.0);
    CHECK(par[2].Ts == Approx(0.013164823591363877).epsilon(1e-14));
    CHECK(par[2].R == Approx(75.96).margin(0.005));
    CHECK(par[3].Delta == 0.5);

    const auto fit = fit_sweep(par);
    CHECK(fit.points_used == 3);
    CHECK(std::isfinite(fit.G_y));
    CHECK(std::isfinite(fit.G));
}

TEST_CASE("fit_sweep needs an unflagged point", "[analysis]")
{
    const std::vector<SweepPoint> pts{{1.0, 0.01, 100.0, 0.1, 0.1, PointStatus::Failed},
                                      {2.0, 0.02, 50.0, 0.1, 0.1, PointStatus::Diverged}};
    CHECK_THROWS_AS(fit_sweep(pts), std::domain_error);
    CHECK(to_string(PointStatus::Ok) == "ok");
    CHECK(to_string(PointStatus::Diverged) == "diverged");
    CHECK(to_string(PointStatus::Failed) == "failed");
}

TEST_CASE("gain sweeps", "[analysis][parallel]")
{
    const auto cfg = chua_config(40.0);
    const std::vector<double> gains{0.0, 1.0, 5.0};
    const auto par = run_gain_sweep(cfg, gains);
    const auto ser = run_gain_sweep_serial(cfg, gains);
    REQUIRE(par.size() == 3);
    for (std::size_t i = 0; i < par.size(); ++i)
    {
        CHECK(par[i].K == gains[i]);
        CHECK(par[i].flag == PointStatus::Ok);
        CHECK(par[i].Q == ser[i].Q);
    }
    // without feedback the slave never locks on
    CHECK(par[0].Q > 0.3);
    CHECK(par[1].Q < 0.2);
    CHECK(par[2].Q < 0.2);
}

TEST_CASE("transient time and bound violations on a synthetic trace", "[analysis]")
{
    Trace tr;
    tr.Ts = 0.5;
    tr.metrics.window_points = 10;
    tr.metrics.window_max_norm_e = 1.0;
    const double e[] = {10.0, 8.0, 2.9, 3.5, 1.0, 0.5, 3.0, 0.9};
    for (int k = 0; k < 8; ++k)
        tr.samples.push_back(SampleRecord{0.5 * k, 1.0, 0.0, Bit::Plus, false, 1.0 + 0.01 * k, e[k]});
    CHECK(transient_time(tr) == 2.0);         // interval starting at 1.5
    CHECK(transient_time(tr, 20.0) == 0.0);
    CHECK(transient_time(tr, 0.95) == 3.5);

    // bound is M + L_y Ts = 1 + 0.1 * 0.5
    CHECK(transmission_bound_violations(tr, 0.1, 0.0) == 2);
    CHECK(transmission_bound_violations(tr, 0.1, 3.2) == 1);
    CHECK(transmission_bound_violations(tr, 1.0, 0.0) == 0);

    tr.metrics.window_points = 0;
    CHECK_THROWS_AS(transient_time(tr), std::domain_error);
}

#include "zoomsync/passification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace zoomsync
{

PassificationFamily::PassificationFamily(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                                         const Eigen::RowVectorXd& C, double K, double mu)
    : A_K_(closed_loop_matrix(A, B, C, K)), mu_(mu), a_norm_(A_K_.norm())
{
    const auto n = A.rows();
    const double cb = C.dot(B);
    if (!(cb > 0.0))
        throw std::invalid_argument("PassificationFamily: requires C B > 0");
    P0_ = C.transpose() * C / cb;
    scale_ = P0_.norm();

    // Complete B / |B| to an orthonormal basis; the trailing columns span B-perp.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
    const Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    Q_ = full.rightCols(n - 1);
    free_ = (n - 1) * n / 2;
}

Eigen::MatrixXd PassificationFamily::matrix(std::span<const double> theta) const
{
    const auto m = Q_.cols();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j)
        {
            T(i, j) = theta[idx];
            T(j, i) = theta[idx];
            ++idx;
        }
    Eigen::MatrixXd P = P0_ + scale_ * (Q_ * T * Q_.transpose());
    return 0.5 * (P + P.transpose());
}

double PassificationFamily::objective(std::span<const double> theta) const
{
    const Eigen::MatrixXd P = matrix(theta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(P, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    if (!(lmax > 0.0) || !std::isfinite(lmax))
        return std::numeric_limits<double>::infinity();
    const double lyap = lyapunov_margin(A_K_, P, mu_) / (lmax * (2.0 * a_norm_ + std::abs(mu_)));
    const double definite = 1e-8 - lmin / lmax;
    return std::max(lyap, definite);
}

std::vector<std::vector<double>> passification_grid(Eigen::Index free_parameters,
                                                    const PassificationSearchOptions& opts)
{
    const auto d = static_cast<std::size_t>(free_parameters);
    const std::size_t g = opts.grid_values.size();
    if (g == 0)
        throw std::invalid_argument("passification_grid: empty grid");

    double full = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        full *= static_cast<double>(g);

    auto point_from_index = [&](std::uint64_t index) {
        std::vector<double> theta(d);
        for (std::size_t i = 0; i < d; ++i)
        {
            theta[i] = opts.grid_values[index % g];
            index /= g;
        }
        return theta;
    };

    std::vector<std::vector<double>> grid;
    if (full <= static_cast<double>(opts.max_grid_points))
    {
        const auto count = static_cast<std::uint64_t>(full);
        grid.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
            grid.push_back(point_from_index(i));
    }
    else
    {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, g - 1);
        grid.reserve(opts.max_grid_points);
        grid.emplace_back(d, 0.0);
        while (grid.size() < opts.max_grid_points)
        {
            std::vector<double> theta(d);
            for (auto& v : theta)
                v = opts.grid_values[pick(rng)];
            grid.push_back(std::move(theta));
        }
    }
    return grid;
}

std::vector<double> scan_grid(const PassificationFamily& family,
                              const std::vector<std::vector<double>>& grid)
{
    std::vector<double> values(grid.size());
    const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
        values[static_cast<std::size_t>(i)] = family.objective(grid[static_cast<std::size_t>(i)]);
    return values;
}

std::vector<double> scan_grid_serial(const PassificationFamily& family,
                                     const std::vector<std::vector<double>>& grid)
{
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = family.objective(grid[i]);
    return values;
}

namespace
{

// Nelder-Mead on a nonsmooth objective; stops early once `done` accepts a vertex.
template <class Objective, class Done>
std::vector<double> nelder_mead(const Objective& f, std::vector<double> start, int max_iter,
                                const Done& done)
{
    const std::size_t d = start.size();
    std::vector<std::vector<double>> simplex(d + 1, start);
    for (std::size_t i = 0; i < d; ++i)
    {
        const double step = std::max(0.25 * std::abs(start[i]), 0.05);
        simplex[i + 1][i] += step;
    }
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        values[i] = f(simplex[i]);

    std::vector<std::size_t> order(d + 1);
    auto combine = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                       double t) {
        std::vector<double> out(d);
        for (std::size_t i = 0; i < d; ++i)
            out[i] = centroid[i] + t * (worst[i] - centroid[i]);
        return out;
    };

    for (int iter = 0; iter < max_iter; ++iter)
    {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const auto best = order.front();
        const auto worst = order.back();
        if (done(simplex[best], values[best]))
            return simplex[best];
        if (std::abs(values[worst] - values[best]) < 1e-15)
            break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i)
                centroid[i] += simplex[order[k]][i] / static_cast<double>(d);

        const auto second_worst = order[d - 1];
        auto reflected = combine(centroid, simplex[worst], -1.0);
        const double fr = f(reflected);
        if (fr < values[best])
        {
            auto expanded = combine(centroid, simplex[worst], -2.0);
            const double fe = f(expanded);
            if (fe < fr)
            {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            }
            else
            {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second_worst])
        {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
            continue;
        }
        auto contracted = combine(centroid, simplex[worst], 0.5);
        const double fc = f(contracted);
        if (fc < values[worst])
        {
            simplex[worst] = std::move(contracted);
            values[worst] = fc;
            continue;
        }
        for (std::size_t k = 1; k <= d; ++k)
        {
            auto& v = simplex[order[k]];
            for (std::size_t i = 0; i < d; ++i)
                v[i] = simplex[best][i] + 0.5 * (v[i] - simplex[best][i]);
            values[order[k]] = f(v);
        }
    }
    const auto it = std::min_element(values.begin(), values.end());
    return simplex[static_cast<std::size_t>(it - values.begin())];
}

} // namespace

std::optional<Eigen::MatrixXd> find_passifying_P(const Eigen::MatrixXd& A,
                                                 const Eigen::VectorXd& B,
                                                 const Eigen::RowVectorXd& C, double K, double mu,
                                                 const PassificationSearchOptions& opts)
{
    const auto n = A.rows();
    if (n < 1 || A.cols() != n || B.size() != n || C.size() != n)
        throw std::invalid_argument("find_passifying_P: inconsistent dimensions");
    if (n > kMaxPassificationDim)
        throw std::invalid_argument("find_passifying_P: dimension above search limit");
    if (mu < 0.0)
        throw std::invalid_argument("find_passifying_P: mu must be non-negative");
    if (!(C.dot(B) > 0.0))
        return std::nullopt;

    const PassificationFamily family(A, B, C, K, mu);
    auto certifies = [&](const Eigen::MatrixXd& P) {
        return verify_passification(A, B, C, K, P, mu, opts.tolerances);
    };

    if (family.free_parameters() == 0)
    {
        Eigen::MatrixXd P = family.matrix({});
        if (certifies(P))
            return P;
        return std::nullopt;
    }

    const auto grid = passification_grid(family.free_parameters(), opts);
    const auto values = scan_grid(family, grid);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto starts = std::min(opts.refine_starts, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          return values[a] < values[b] || (values[a] == values[b] && a < b);
                      });

    auto f = [&](const std::vector<double>& theta) { return family.objective(theta); };
    auto done = [&](const std::vector<double>& theta, double value) {
        return value < 0.0 && certifies(family.matrix(theta));
    };

    for (std::size_t s = 0; s < starts; ++s)
    {
        const auto& start = grid[order[s]];
        if (done(start, values[order[s]]))
            return family.matrix(start);
        const auto theta = nelder_mead(f, start, opts.max_refine_iterations, done);
        Eigen::MatrixXd P = family.matrix(theta);
        if (certifies(P))
            return P;
    }
    return std::nullopt;
}

std::optional<PassifyingGain> search_passifying_gain(const Eigen::MatrixXd& A,
                                                     const Eigen::VectorXd& B,
                                                     const Eigen::RowVectorXd& C,
                                                     std::span<const double> gains,
                                                     std::span<const double> rates,
                                                     const PassificationSearchOptions& opts)
{
    for (double K : gains)
        for (double mu : rates)
            if (auto P = find_passifying_P(A, B, C, K, mu, opts))
                return PassifyingGain{K, mu, std::move(*P)};
    return std::nullopt;
}

} // namespace zoomsync

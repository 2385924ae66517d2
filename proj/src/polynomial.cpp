#include "zoomsync/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace zoomsync
{

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending))
{
    double scale = 0.0;
    for (double c : coeffs_)
    {
        if (!std::isfinite(c))
            throw std::invalid_argument("Polynomial: non-finite coefficient");
        scale = std::max(scale, std::abs(c));
    }
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kZeroThreshold * scale)
        coeffs_.pop_back();
}

double Polynomial::coefficient(int power) const
{
    if (power < 0 || power > degree())
        return 0.0;
    return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

bool is_hurwitz(const Polynomial& p)
{
    if (p.is_zero())
        throw std::invalid_argument("is_hurwitz: zero polynomial");
    const int n = p.degree();
    if (n == 0)
        return true;

    // Descending coefficients, normalized to a positive leading term.
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    const double sign = p.leading() > 0.0 ? 1.0 : -1.0;
    double scale = 0.0;
    for (int i = 0; i <= n; ++i)
    {
        a[static_cast<std::size_t>(i)] = sign * p.coefficient(n - i);
        scale = std::max(scale, std::abs(a[static_cast<std::size_t>(i)]));
    }

    const std::size_t width = static_cast<std::size_t>(n) / 2 + 1;
    std::vector<double> upper(width, 0.0), lower(width, 0.0);
    for (std::size_t j = 0; j < width; ++j)
    {
        if (2 * j <= static_cast<std::size_t>(n))
            upper[j] = a[2 * j];
        if (2 * j + 1 <= static_cast<std::size_t>(n))
            lower[j] = a[2 * j + 1];
    }

    const double pivot_floor = 1e-13 * scale;
    if (!(upper[0] > pivot_floor))
        return false;
    for (int row = 1; row <= n; ++row)
    {
        if (!(lower[0] > pivot_floor))
            return false;
        std::vector<double> next(width, 0.0);
        for (std::size_t j = 0; j + 1 < width; ++j)
            next[j] = (lower[0] * upper[j + 1] - upper[0] * lower[j + 1]) / lower[0];
        upper = std::move(lower);
        lower = std::move(next);
    }
    return true;
}

} // namespace zoomsync

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace zoomsync
{

/**
 * Real polynomial with coefficients in ascending powers.  Trailing
 * coefficients whose magnitude is at most kZeroThreshold times the largest
 * coefficient are dropped, so degree() reflects the numerically significant
 * leading term.
 */
class Polynomial
{
public:
    static constexpr double kZeroThreshold = 1e-10;

    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    double coefficient(int power) const;
    double leading() const { return coeffs_.back(); }
    std::span<const double> coefficients() const { return coeffs_; }

    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> x) const;

private:
    std::vector<double> coeffs_;
};

/**
 * Routh stability test: true iff every root lies in the open left
 * half-plane.  A zero pivot in the first column is treated as failure, so
 * boundary cases count as non-Hurwitz.  Throws std::invalid_argument for the
 * zero polynomial.  A nonzero constant has no roots and is Hurwitz.
 */
bool is_hurwitz(const Polynomial& p);

} // namespace zoomsync

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace zoomsync
{

/// Scalar output nonlinearity acting in the span of the control input.
using Nonlinearity = std::function<double(double)>;

/**
 * Single-input single-output system in Lurie form:
 *
 *   dx/dt = A x + B phi(C x) [+ B u]
 *
 * The master runs without input; the slave receives the control u through
 * the same column B.  Immutable after construction.
 */
class LurieSystem
{
public:
    LurieSystem(Eigen::MatrixXd A, Eigen::VectorXd B, Eigen::RowVectorXd C, Nonlinearity phi,
                double lipschitz);

    Eigen::Index dim() const { return A_.rows(); }
    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& B() const { return B_; }
    const Eigen::RowVectorXd& C() const { return C_; }
    double phi(double y) const { return phi_(y); }
    double lipschitz() const { return lipschitz_; }

    double output(const Eigen::VectorXd& x) const { return C_.dot(x); }

    /// Copy of this system with the output row scaled by `factor`.
    LurieSystem with_output_scaled(double factor) const;

private:
    Eigen::MatrixXd A_;
    Eigen::VectorXd B_;
    Eigen::RowVectorXd C_;
    Nonlinearity phi_;
    double lipschitz_;
};

struct ChuaParams
{
    double p = 10.0;
    double q = 15.6;
    double m0 = 0.33;
    double m1 = 0.945;
};

/// Piecewise-linear Chua characteristic m0*y + m1*(|y+1| - |y-1|).
double chua_phi(double y, const ChuaParams& params);

/// Slope bound of chua_phi: max(|m0|, |m0 + 2 m1|).
double chua_lipschitz(const ChuaParams& params);

/// Chua circuit in Lurie form with y = x1; throws std::invalid_argument unless p, q > 0.
LurieSystem chua_system(const ChuaParams& params);

// In-place right-hand sides; `dx` must already have the system dimension.
void master_rhs(const LurieSystem& sys, const Eigen::VectorXd& x, Eigen::VectorXd& dx);
void slave_rhs(const LurieSystem& sys, const Eigen::VectorXd& z, double u, Eigen::VectorXd& dz);

Eigen::VectorXd master_rhs(const LurieSystem& sys, const Eigen::VectorXd& x);
Eigen::VectorXd slave_rhs(const LurieSystem& sys, const Eigen::VectorXd& z, double u);

} // namespace zoomsync

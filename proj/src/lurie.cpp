#include "zoomsync/lurie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace zoomsync
{

LurieSystem::LurieSystem(Eigen::MatrixXd A, Eigen::VectorXd B, Eigen::RowVectorXd C,
                         Nonlinearity phi, double lipschitz)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), phi_(std::move(phi)),
      lipschitz_(lipschitz)
{
    const auto n = A_.rows();
    if (n < 1 || A_.cols() != n)
        throw std::invalid_argument("LurieSystem: A must be square with n >= 1");
    if (B_.size() != n || C_.size() != n)
        throw std::invalid_argument("LurieSystem: B and C must have the state dimension");
    if (!phi_)
        throw std::invalid_argument("LurieSystem: nonlinearity is empty");
    if (!(lipschitz_ > 0.0) || !std::isfinite(lipschitz_))
        throw std::invalid_argument("LurieSystem: Lipschitz constant must be positive");
}

LurieSystem LurieSystem::with_output_scaled(double factor) const
{
    return LurieSystem(A_, B_, C_ * factor, phi_, lipschitz_);
}

double chua_phi(double y, const ChuaParams& params)
{
    return params.m0 * y + params.m1 * (std::abs(y + 1.0) - std::abs(y - 1.0));
}

double chua_lipschitz(const ChuaParams& params)
{
    return std::max(std::abs(params.m0), std::abs(params.m0 + 2.0 * params.m1));
}

LurieSystem chua_system(const ChuaParams& params)
{
    if (!(params.p > 0.0) || !(params.q > 0.0))
        throw std::invalid_argument("chua_system: p and q must be positive");

    const double p = params.p;
    const double q = params.q;
    Eigen::MatrixXd A(3, 3);
    A << -p, p, 0.0,
         1.0, -1.0, 1.0,
         0.0, -q, 0.0;
    Eigen::VectorXd B(3);
    B << p, 0.0, 0.0;
    Eigen::RowVectorXd C(3);
    C << 1.0, 0.0, 0.0;

    return LurieSystem(std::move(A), std::move(B), std::move(C),
                       [params](double y) { return chua_phi(y, params); },
                       chua_lipschitz(params));
}

void master_rhs(const LurieSystem& sys, const Eigen::VectorXd& x, Eigen::VectorXd& dx)
{
    dx.noalias() = sys.A() * x;
    dx += sys.phi(sys.output(x)) * sys.B();
}

void slave_rhs(const LurieSystem& sys, const Eigen::VectorXd& z, double u, Eigen::VectorXd& dz)
{
    dz.noalias() = sys.A() * z;
    dz += (sys.phi(sys.output(z)) + u) * sys.B();
}

Eigen::VectorXd master_rhs(const LurieSystem& sys, const Eigen::VectorXd& x)
{
    Eigen::VectorXd dx(sys.dim());
    master_rhs(sys, x, dx);
    return dx;
}

Eigen::VectorXd slave_rhs(const LurieSystem& sys, const Eigen::VectorXd& z, double u)
{
    Eigen::VectorXd dz(sys.dim());
    slave_rhs(sys, z, u, dz);
    return dz;
}

} // namespace zoomsync

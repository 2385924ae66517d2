#include "zoomsync/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zoomsync
{

namespace
{

void check_dims(const Eigen::MatrixXd& A, const Eigen::VectorXd& B, const Eigen::RowVectorXd& C)
{
    const auto n = A.rows();
    if (n < 1 || A.cols() != n || B.size() != n || C.size() != n)
        throw std::invalid_argument("inconsistent (A, B, C) dimensions");
}

} // namespace

TransferFunction transfer_function(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                                   const Eigen::RowVectorXd& C)
{
    check_dims(A, B, C);
    const auto n = A.rows();
    const auto un = static_cast<std::size_t>(n);

    // adj(sI - A) = sum_{k=1..n} N_k s^{n-k},  N_1 = I,  N_{k+1} = A N_k + a_{n-k} I,
    // with a_{n-k} = -tr(A N_k) / k.
    std::vector<double> den(un + 1, 0.0), num(un, 0.0);
    den[un] = 1.0;
    Eigen::MatrixXd N = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t k = 1; k <= un; ++k)
    {
        num[un - k] = C * N * B;
        const Eigen::MatrixXd AN = A * N;
        const double coeff = -AN.trace() / static_cast<double>(k);
        den[un - k] = coeff;
        N = AN;
        N.diagonal().array() += coeff;
    }
    return TransferFunction{Polynomial(std::move(num)), Polynomial(std::move(den))};
}

bool is_hyper_minimum_phase(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                            const Eigen::RowVectorXd& C)
{
    const auto tf = transfer_function(A, B, C);
    const auto& b = tf.numerator;
    if (b.is_zero() || b.degree() != static_cast<int>(A.rows()) - 1)
        return false;
    for (double c : b.coefficients())
        if (!(c > 0.0))
            return false;
    return is_hurwitz(b);
}

Eigen::MatrixXd closed_loop_matrix(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                                   const Eigen::RowVectorXd& C, double K)
{
    return A - K * B * C;
}

double lyapunov_margin(const Eigen::MatrixXd& A_K, const Eigen::MatrixXd& P, double mu)
{
    const Eigen::MatrixXd L = P * A_K + A_K.transpose() * P + mu * P;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (L + L.transpose()),
                                                       Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
}

bool verify_passification(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                          const Eigen::RowVectorXd& C, double K, const Eigen::MatrixXd& P,
                          double mu, const PassificationTolerances& tol)
{
    check_dims(A, B, C);
    if (P.rows() != A.rows() || P.cols() != A.rows())
        throw std::invalid_argument("verify_passification: P has wrong dimensions");
    const double p_norm = P.norm();
    if ((P - P.transpose()).norm() > tol.symmetry * std::max(p_norm, 1.0))
        throw std::invalid_argument("verify_passification: P is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(P, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    if (!(lmin > tol.definiteness * lmax))
        return false;

    const double residual = (P * B - C.transpose()).norm();
    if (residual > tol.equality * std::max(C.norm(), 1.0))
        return false;

    const Eigen::MatrixXd A_K = closed_loop_matrix(A, B, C, K);
    const double scale = std::max(1.0, lmax * (2.0 * A_K.norm() + std::abs(mu)));
    return lyapunov_margin(A_K, P, mu) <= tol.inequality * scale;
}

double error_gain_bound(const Eigen::MatrixXd& P, double K, double L_phi, double mu)
{
    if (!(mu > 0.0))
        throw std::invalid_argument("error_gain_bound: mu must be positive");
    if (P.rows() != P.cols() || P.rows() == 0)
        throw std::invalid_argument("error_gain_bound: P must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(P, Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues().minCoeff();
    const double lmax = eig.eigenvalues().maxCoeff();
    if (!(lmin > 1e-9 * lmax))
        throw std::invalid_argument("error_gain_bound: P is not positive definite");
    return std::sqrt(lmax / lmin) * (L_phi + std::abs(K)) / mu;
}

} // namespace zoomsync

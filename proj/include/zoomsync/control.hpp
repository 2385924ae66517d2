#pragma once

#include <Eigen/Dense>

#include "zoomsync/polynomial.hpp"

namespace zoomsync
{

/// Static output feedback u = -K * epsilon.
inline double control_law(double epsilon, double K) { return -K * epsilon; }

/// W(s) = C (sI - A)^{-1} B = numerator(s) / denominator(s), denominator monic of degree n.
struct TransferFunction
{
    Polynomial numerator;
    Polynomial denominator;
};

/// Faddeev-LeVerrier recursion; throws std::invalid_argument on dimension mismatch.
TransferFunction transfer_function(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                                   const Eigen::RowVectorXd& C);

/// Numerator of exact degree n-1 with all coefficients positive and Hurwitz.
bool is_hyper_minimum_phase(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                            const Eigen::RowVectorXd& C);

struct PassificationTolerances
{
    double symmetry = 1e-12;        ///< relative, rejects P as non-symmetric above this
    double definiteness = 1e-9;     ///< lambda_min(P) must exceed this times ||P||
    double equality = 1e-8;         ///< relative residual of P B = C^T
    double inequality = 1e-12;      ///< lambda_max(P A_K + A_K^T P + mu P) <= this times scale
};

/// A - B K C
Eigen::MatrixXd closed_loop_matrix(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                                   const Eigen::RowVectorXd& C, double K);

/**
 * Checks the strict passivity certificate
 *
 *   P > 0,   P B = C^T,   P A_K + A_K^T P + mu P <= 0.
 *
 * Throws std::invalid_argument when P is not symmetric or dimensions disagree.
 */
bool verify_passification(const Eigen::MatrixXd& A, const Eigen::VectorXd& B,
                          const Eigen::RowVectorXd& C, double K, const Eigen::MatrixXd& P,
                          double mu, const PassificationTolerances& tol = {});

/// Largest eigenvalue of P A_K + A_K^T P + mu P.
double lyapunov_margin(const Eigen::MatrixXd& A_K, const Eigen::MatrixXd& P, double mu);

/**
 * Upper bound on limsup ||e|| / Delta:
 *
 *   sqrt(lambda_max(P) / lambda_min(P)) * (L_phi + |K|) / mu
 *
 * Throws std::invalid_argument unless P is positive definite and mu > 0.
 */
double error_gain_bound(const Eigen::MatrixXd& P, double K, double L_phi, double mu);

} // namespace zoomsync

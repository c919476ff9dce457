#pragma once

#include <Eigen/Dense>
#include <utility>

#include "gencoord/gen_point.hpp"
#include "gencoord/kernel.hpp"

namespace gencoord {

/// The linear SDE dx/dt = A x + w, x_0 = z, with stationary Gaussian noise.
struct LinearModel {
    Eigen::MatrixXd A;
    Eigen::VectorXd z;
    KernelSpec kernel;
};

/// Truncated-series mean sum_{n=0}^N A^n z t^n / n!.
Eigen::VectorXd linear_mean(const LinearModel& lm, int N, double t);

/// Truncated-series autocovariance
/// sum_{n,m=1}^N (t^n s^m / n! m!) sum_{k,l} A^{n-1-k} (-1)^k kappa^(k+l)(0)
/// (A^{m-1-l})^T.
Eigen::MatrixXd linear_cov(const LinearModel& lm, int N, double t, double s);

/// Convergence radius R / max(1, ||A||_inf, ||A^T||_inf), with ||.||_inf the
/// max row-sum norm max_i sum_j |A_ij|.
double convergence_radius(const Eigen::MatrixXd& A, double R);

/// Gaussian pushforward under the generalized flow:
/// N(mu, Xi) -> N(exp(tD) mu, exp(tD) Xi exp(tD)^T).
std::pair<GenPoint, Eigen::MatrixXd> gaussian_pushforward(const GenPoint& mu0,
                                                          const Eigen::MatrixXd& Xi0,
                                                          double t);

}  // namespace gencoord

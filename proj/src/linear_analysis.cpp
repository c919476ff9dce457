#include "gencoord/linear_analysis.hpp"

#include <cmath>
#include <vector>

namespace gencoord {

namespace {

// A^0 .. A^max, computed once per call.
std::vector<Eigen::MatrixXd> matrix_powers(const Eigen::MatrixXd& A, int max) {
    std::vector<Eigen::MatrixXd> pow;
    pow.reserve(max + 1);
    pow.push_back(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
    for (int n = 1; n <= max; ++n) pow.push_back(pow.back() * A);
    return pow;
}

}  // namespace

Eigen::VectorXd linear_mean(const LinearModel& lm, int N, double t) {
    Eigen::VectorXd acc = lm.z;
    Eigen::VectorXd term = lm.z;
    for (int n = 1; n <= N; ++n) {
        term = (lm.A * term) * (t / n);
        acc += term;
    }
    return acc;
}

Eigen::MatrixXd linear_cov(const LinearModel& lm, int N, double t, double s) {
    const int d = static_cast<int>(lm.A.rows());
    const auto pow = matrix_powers(lm.A, N);

    // kappa^(k+l)(0) for k,l in 0..N-1
    std::vector<double> kd(2 * N - 1);
    for (int j = 0; j < 2 * N - 1; ++j) kd[j] = kernel_deriv_at_zero(lm.kernel, j);

    // factorial-scaled time powers t^n / n!
    std::vector<double> tn(N + 1, 1.0), sm(N + 1, 1.0);
    for (int n = 1; n <= N; ++n) {
        tn[n] = tn[n - 1] * t / n;
        sm[n] = sm[n - 1] * s / n;
    }

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n <= N; ++n) {
        for (int m = 1; m <= N; ++m) {
            Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(d, d);
            for (int k = 0; k < n; ++k) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                for (int l = 0; l < m; ++l) {
                    const double kv = sign * kd[k + l];
                    if (kv == 0.0) continue;
                    inner += kv * pow[n - 1 - k] * pow[m - 1 - l].transpose();
                }
            }
            cov += (tn[n] * sm[m]) * inner;
        }
    }
    return cov;
}

double convergence_radius(const Eigen::MatrixXd& A, double R) {
    if (R <= 0.0) throw InvalidArgument("convergence-radius: R must be positive");
    const double row = A.cwiseAbs().rowwise().sum().maxCoeff();
    const double col = A.cwiseAbs().colwise().sum().maxCoeff();
    const double lambda = std::max({1.0, row, col});
    return R / lambda;
}

std::pair<GenPoint, Eigen::MatrixXd> gaussian_pushforward(const GenPoint& mu0,
                                                          const Eigen::MatrixXd& Xi0,
                                                          double t) {
    const Eigen::Index dim = mu0.flat().size();
    if (Xi0.rows() != dim || Xi0.cols() != dim)
        throw InvalidArgument("invalid-covariance: Xi has wrong shape");
    if (!Xi0.isApprox(Xi0.transpose(), 1e-10))
        throw InvalidArgument("invalid-covariance: Xi must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Xi0);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = std::max(es.eigenvalues().maxCoeff(), 1.0);
    if (lo < -1e-9 * hi)
        throw InvalidArgument("invalid-covariance: Xi must be PSD");

    const Eigen::MatrixXd M = exp_shift_matrix(mu0.order(), t, mu0.base_dim());
    const Eigen::MatrixXd raw = M * Xi0 * M.transpose();
    const Eigen::MatrixXd cov = 0.5 * (raw + raw.transpose());
    return {taylor_eval(mu0, t), cov};
}

}  // namespace gencoord

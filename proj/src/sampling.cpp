#include "gencoord/sampling.hpp"

#include <cmath>
#include <random>

namespace gencoord {

Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& m, double* jitter_used) {
    const Eigen::Index dim = m.rows();
    const double scale = m.trace() / static_cast<double>(dim);
    for (double eps = 0.0; eps <= 1e-6; eps = (eps == 0.0) ? 1e-12 : eps * 100.0) {
        Eigen::MatrixXd cand = m;
        if (eps > 0.0) cand.diagonal().array() += eps * std::max(scale, 1.0);
        Eigen::LLT<Eigen::MatrixXd> llt(cand);
        if (llt.info() == Eigen::Success) {
            if (jitter_used) *jitter_used = eps;
            return llt.matrixL();
        }
    }
    throw NumericalError(
        "numerically-degenerate-covariance: Cholesky failed after maximum jitter");
}

Eigen::MatrixXd jittered_inverse(const Eigen::MatrixXd& m, bool* degraded) {
    double jitter = 0.0;
    const Eigen::MatrixXd L = jittered_cholesky(m, &jitter);
    if (degraded) *degraded = jitter > 0.0;
    const Eigen::Index dim = m.rows();
    Eigen::MatrixXd Linv =
        L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(dim, dim));
    return Linv.transpose() * Linv;
}

std::vector<GenNoise> sample_gen_noise(const GenCov& cov, std::uint64_t seed, int count) {
    if (count < 0) throw InvalidArgument("sample-gen-noise: count must be non-negative");
    const int N = cov.order;
    const int d = cov.base_dim;
    const Eigen::Index dim = cov.matrix.rows();

    Eigen::MatrixXd L;
    if (cov.matrix.isZero(0.0)) {
        L = Eigen::MatrixXd::Zero(dim, dim);  // degenerate: all-zero samples
    } else {
        L = jittered_cholesky(cov.matrix);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<GenNoise> out;
    out.reserve(count);
    for (int s = 0; s < count; ++s) {
        Eigen::VectorXd z(dim);
        for (Eigen::Index i = 0; i < dim; ++i) z(i) = gauss(rng);
        out.push_back(GenNoise::from_flat(d, N - 1, L * z));
    }
    return out;
}

double first_zero_crossing(const std::vector<double>& samples, double dt) {
    const int n = static_cast<int>(samples.size());
    if (n < 8) throw InvalidArgument("first-zero-crossing: series length >= 8 required");
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;

    auto autocov = [&](int lag) {
        double acc = 0.0;
        for (int i = 0; i + lag < n; ++i)
            acc += (samples[i] - mean) * (samples[i + lag] - mean);
        return acc / (n - lag);
    };

    const double c0 = autocov(0);
    if (c0 <= 0.0)
        throw InvalidArgument("zero-variance-series: constant series has no crossing");

    double prev = c0;
    const int max_lag = n - 1;
    for (int k = 1; k <= max_lag; ++k) {
        const double cur = autocov(k);
        if (cur <= 0.0) {
            // linear interpolation between lags k-1 and k
            const double frac = prev / (prev - cur);
            return ((k - 1) + frac) * dt;
        }
        prev = cur;
    }
    return max_lag * dt;
}

std::vector<Eigen::VectorXd> convolved_white_noise(int dim, double sigma, double dt,
                                                   double T, std::uint64_t seed,
                                                   double amplitude) {
    if (sigma <= 0.0 || dt <= 0.0 || T < 0.0)
        throw InvalidArgument("convolved-white-noise: sigma, dt must be positive");
    const int window = static_cast<int>(std::ceil(6.0 * sigma / dt));
    const int n_out = static_cast<int>(std::round(T / dt)) + 1;
    const int n_white = n_out + 2 * window;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double cell_std = std::sqrt(1.0 / dt);
    Eigen::MatrixXd white(dim, n_white);
    for (int j = 0; j < n_white; ++j)
        for (int i = 0; i < dim; ++i) white(i, j) = cell_std * gauss(rng);

    // phi(t) = exp(-t^2 / 2 sigma^2) / (sqrt(2 pi) sigma), truncated kernel
    std::vector<double> phi(2 * window + 1);
    const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * sigma);
    for (int j = -window; j <= window; ++j)
        phi[j + window] = norm * std::exp(-0.5 * (j * dt) * (j * dt) / (sigma * sigma));

    const double amp = std::sqrt(amplitude);
    std::vector<Eigen::VectorXd> out(n_out);
    for (int t = 0; t < n_out; ++t) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
        for (int j = -window; j <= window; ++j)
            acc += phi[j + window] * white.col(t + window + j);
        out[t] = amp * dt * acc;
    }
    return out;
}

}  // namespace gencoord

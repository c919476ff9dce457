#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gencoord/gen_point.hpp"
#include "gencoord/kernel.hpp"

namespace gencoord {

/// Cholesky with diagonal jitter escalation eps * trace/dim, eps in
/// 1e-12 .. 1e-6. Throws NumericalError past the last rung.
/// On return `jitter_used` (if given) holds the jitter that succeeded.
Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& m, double* jitter_used = nullptr);

/// Symmetric inverse via jittered Cholesky; `degraded` is set when any
/// jitter was needed.
Eigen::MatrixXd jittered_inverse(const Eigen::MatrixXd& m, bool* degraded = nullptr);

/// i.i.d. draws w ~ N(0, cov.matrix), deterministic given seed. Each draw is
/// returned as a GenNoise of order N-1 (N stacked d-vectors).
std::vector<GenNoise> sample_gen_noise(const GenCov& cov, std::uint64_t seed, int count);

/// Smallest positive lag (in time units, linearly interpolated) where the
/// empirical autocovariance of a univariate series crosses zero. Returns the
/// maximum available lag if no crossing occurs.
double first_zero_crossing(const std::vector<double>& samples, double dt);

/// White noise convolved with the Gaussian bump phi_sigma, sampled on a grid
/// of step dt covering [0, T]. White noise is realized as i.i.d. N(0, 1/dt)
/// per cell; the convolution is truncated at +-6 sigma with noise
/// pre-generated on [-6 sigma, T + 6 sigma]. The resulting series has
/// autocovariance close to exp(-h^2/4sigma^2) / (2 sqrt(pi) sigma).
std::vector<Eigen::VectorXd> convolved_white_noise(int dim, double sigma, double dt,
                                                   double T, std::uint64_t seed,
                                                   double amplitude = 1.0);

}  // namespace gencoord

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gencoord/gen_flow.hpp"
#include "gencoord/kernel.hpp"

namespace gencoord {

enum class Method { Zigzag, ZigzagLinear, EulerBaseline, LeastAction };

/// A sampled path of the order-0 state. A blow-up (|state| above the bound)
/// truncates the trajectory and records the blow-up time.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    Method method = Method::Zigzag;
    std::uint64_t seed = 0;
    std::optional<double> blow_up_time;
};

constexpr double kDefaultBlowUpBound = 1e6;

/// Solves x^(n+1) = f^(n)(x^(:n)) + w^(n) sequentially from x^(0) = z.
GenPoint zigzag_solve(const ModelSpec& model, const Eigen::VectorXd& z,
                      const GenNoise& w0, FlowMode mode);

/// Samples w0 ~ N(0, Sigma), runs the zigzag solve once, and evaluates the
/// Taylor polynomial at each grid time. One expansion per trajectory.
Trajectory zigzag_trajectory(const ModelSpec& model, const Eigen::VectorXd& z,
                             const KernelSpec& kernel, int N,
                             const std::vector<double>& t_grid, FlowMode mode,
                             std::uint64_t seed,
                             double blow_up_bound = kDefaultBlowUpBound);

/// Same, with the generalized noise supplied by the caller (seed-matched
/// comparisons across modes).
Trajectory zigzag_trajectory_with_noise(const ModelSpec& model,
                                        const Eigen::VectorXd& z, const GenNoise& w0,
                                        const std::vector<double>& t_grid,
                                        FlowMode mode,
                                        double blow_up_bound = kDefaultBlowUpBound);

/// Euler integration of dx/dt = f(x) + w_t with w the Gaussian-convolved
/// white noise baseline, on the grid 0, dt, ..., T.
Trajectory euler_baseline(const ModelSpec& model, const Eigen::VectorXd& z,
                          double sigma, double dt, double T, std::uint64_t seed,
                          double noise_amplitude = 1.0,
                          double blow_up_bound = kDefaultBlowUpBound);

}  // namespace gencoord

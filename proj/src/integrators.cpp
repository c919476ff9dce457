#include "gencoord/integrators.hpp"

#include <cmath>
#include <string>

#include "gencoord/sampling.hpp"

namespace gencoord {

GenPoint zigzag_solve(const ModelSpec& model, const Eigen::VectorXd& z,
                      const GenNoise& w0, FlowMode mode) {
    const int d = model.state_dim;
    if (z.size() != d) throw InvalidArgument("zigzag: initial condition has wrong size");
    if (w0.base_dim() != d) throw InvalidArgument("zigzag: noise base dimension mismatch");
    const int N = w0.order() + 1;

    GenPoint x(d, N);
    x[0] = z;
    for (int n = 0; n < N; ++n) {
        // f^(n) depends only on x^(0..n); evaluate on the filled prefix.
        GenPoint prefix(d, n + 1);
        for (int k = 0; k <= n; ++k) prefix[k] = x[k];
        const GenPoint gf = gen_flow(model, prefix, mode);
        x[n + 1] = gf[n] + w0[n];
        if (!x[n + 1].allFinite())
            throw NumericalError("zigzag-overflow: non-finite value at order " +
                                 std::to_string(n + 1));
    }
    return x;
}

namespace {

Trajectory evaluate_expansion(const GenPoint& x, const std::vector<double>& t_grid,
                              Method method, std::uint64_t seed,
                              double blow_up_bound) {
    Trajectory traj;
    traj.method = method;
    traj.seed = seed;
    for (double t : t_grid) {
        const Eigen::VectorXd state = taylor_eval(x, t)[0];
        if (!state.allFinite() || state.lpNorm<Eigen::Infinity>() > blow_up_bound) {
            traj.blow_up_time = t;
            break;
        }
        traj.times.push_back(t);
        traj.states.push_back(state);
    }
    return traj;
}

}  // namespace

Trajectory zigzag_trajectory_with_noise(const ModelSpec& model,
                                        const Eigen::VectorXd& z, const GenNoise& w0,
                                        const std::vector<double>& t_grid,
                                        FlowMode mode, double blow_up_bound) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw InvalidArgument("zigzag: time grid must start at 0");
    const GenPoint x = zigzag_solve(model, z, w0, mode);
    return evaluate_expansion(
        x, t_grid, mode == FlowMode::Exact ? Method::Zigzag : Method::ZigzagLinear, 0,
        blow_up_bound);
}

Trajectory zigzag_trajectory(const ModelSpec& model, const Eigen::VectorXd& z,
                             const KernelSpec& kernel, int N,
                             const std::vector<double>& t_grid, FlowMode mode,
                             std::uint64_t seed, double blow_up_bound) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw InvalidArgument("zigzag: time grid must start at 0");
    const GenCov cov = build_gen_cov(kernel, N, model.state_dim);
    const GenNoise w0 = sample_gen_noise(cov, seed, 1).front();
    Trajectory traj = zigzag_trajectory_with_noise(model, z, w0, t_grid, mode,
                                                   blow_up_bound);
    traj.seed = seed;
    return traj;
}

Trajectory euler_baseline(const ModelSpec& model, const Eigen::VectorXd& z,
                          double sigma, double dt, double T, std::uint64_t seed,
                          double noise_amplitude, double blow_up_bound) {
    if (dt <= 0.0 || T <= 0.0)
        throw InvalidArgument("euler-baseline: dt > 0 and T > 0 required");
    const auto noise = convolved_white_noise(model.state_dim, sigma, dt, T, seed,
                                             noise_amplitude);
    Trajectory traj;
    traj.method = Method::EulerBaseline;
    traj.seed = seed;
    Eigen::VectorXd x = z;
    const int n_steps = static_cast<int>(noise.size());
    for (int k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > blow_up_bound) {
            traj.blow_up_time = t;
            break;
        }
        traj.times.push_back(t);
        traj.states.push_back(x);
        x += dt * (model.eval_flow(x) + noise[k]);
    }
    return traj;
}

}  // namespace gencoord

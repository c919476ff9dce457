#include "gencoord/least_action.hpp"

#include <cmath>

#include "gencoord/sampling.hpp"

namespace gencoord {

LagrangianContext::LagrangianContext(ModelSpec model, GenCov gen_cov, FlowMode mode)
    : model_(std::move(model)), gen_cov_(std::move(gen_cov)), mode_(mode) {
    if (gen_cov_.base_dim != model_.state_dim)
        throw InvalidArgument("lagrangian: covariance base dimension mismatch");
    try {
        precision_ = jittered_inverse(gen_cov_.matrix);
    } catch (const NumericalError&) {
        throw NumericalError("singular-covariance: generalized covariance not invertible");
    }
}

Eigen::VectorXd LagrangianContext::residual(const GenPoint& x) const {
    return shift_drop(x).flat() - gen_flow(model_, x, mode_).flat();
}

double lagrangian(const LagrangianContext& ctx, const GenPoint& x) {
    const Eigen::VectorXd r = ctx.residual(x);
    return 0.5 * r.dot(ctx.precision() * r);
}

GenPoint lagrangian_grad(const LagrangianContext& ctx, const GenPoint& x) {
    const int N = x.order();
    const int d = x.base_dim();
    const Eigen::VectorXd r = ctx.residual(x);
    const Eigen::MatrixXd Dp = shift_drop_matrix(N, d);
    const Eigen::MatrixXd Jf = gen_jacobian(ctx.model(), x, ctx.mode());
    const Eigen::VectorXd g = (Dp - Jf).transpose() * (ctx.precision() * r);
    return GenPoint::from_flat(d, N, g);
}

DescentResult regularized_descent(const LagrangianContext& ctx,
                                  const Eigen::VectorXd& z, double lambda, double dt,
                                  double T, double blow_up_bound) {
    if (lambda <= 0.0) throw InvalidArgument("least-action: lambda must be positive");
    if (lambda * dt > 0.5)
        throw InvalidArgument("least-action: lambda * dt exceeds the stability guard 0.5");

    const int N = ctx.gen_cov().order;
    const int d = ctx.model().state_dim;
    GenPoint x = zigzag_solve(ctx.model(), z, GenNoise(d, N - 1), ctx.mode());

    DescentResult out;
    out.trajectory.method = Method::LeastAction;
    const int n_steps = static_cast<int>(std::round(T / dt));
    for (int k = 0; k <= n_steps; ++k) {
        const double t = k * dt;
        if (!x.all_finite() || x[0].lpNorm<Eigen::Infinity>() > blow_up_bound) {
            out.trajectory.blow_up_time = t;
            break;
        }
        out.trajectory.times.push_back(t);
        out.trajectory.states.push_back(x[0]);
        out.lagrangian_trace.push_back(lagrangian(ctx, x));
        out.gen_states.push_back(x);
        if (k == n_steps) break;

        const GenPoint grad = lagrangian_grad(ctx, x);
        const Eigen::VectorXd next =
            x.flat() + dt * (shift(x).flat() - lambda * grad.flat());
        x = GenPoint::from_flat(d, N, next);
    }
    return out;
}

}  // namespace gencoord

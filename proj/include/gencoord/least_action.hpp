#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gencoord/integrators.hpp"
#include "gencoord/kernel.hpp"

namespace gencoord {

/// Quadratic-form context for the Lagrangian
/// L(x) = (D'x - f(x))^T (2 Sigma)^{-1} (D'x - f(x)).
class LagrangianContext {
  public:
    LagrangianContext(ModelSpec model, GenCov gen_cov, FlowMode mode);

    const ModelSpec& model() const { return model_; }
    const GenCov& gen_cov() const { return gen_cov_; }
    FlowMode mode() const { return mode_; }
    const Eigen::MatrixXd& precision() const { return precision_; }  // Sigma^{-1}

    Eigen::VectorXd residual(const GenPoint& x) const;  // D'x - f(x), flattened

  private:
    ModelSpec model_;
    GenCov gen_cov_;
    FlowMode mode_;
    Eigen::MatrixXd precision_;
};

double lagrangian(const LagrangianContext& ctx, const GenPoint& x);

/// grad L(x) = (D' - grad f(x))^T Sigma^{-1} (D'x - f(x)).
GenPoint lagrangian_grad(const LagrangianContext& ctx, const GenPoint& x);

struct DescentResult {
    Trajectory trajectory;               // order-0 coordinate over time
    std::vector<double> lagrangian_trace;
    std::vector<GenPoint> gen_states;    // full generalized state per step
};

/// Euler integration of dx/dt = D x - lambda grad L(x) from the least-action
/// initial state (zigzag with zero noise).
DescentResult regularized_descent(const LagrangianContext& ctx,
                                  const Eigen::VectorXd& z, double lambda, double dt,
                                  double T,
                                  double blow_up_bound = kDefaultBlowUpBound);

}  // namespace gencoord

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gencoord/expr.hpp"

namespace gencoord {

enum class Builtin { Linear, LotkaVolterra, Lorenz, Custom };

/// An SDE model: flow f and optional observation map g as expression graphs
/// over elementary operations, with dimensions d, m.
struct ModelSpec {
    int state_dim = 1;
    int obs_dim = 0;
    std::vector<ExprPtr> flow;                     // size state_dim
    std::optional<std::vector<ExprPtr>> obs_map;   // size obs_dim when present
    Builtin builtin = Builtin::Custom;
    Eigen::MatrixXd A;  // linear builtin only

    static ModelSpec linear(const Eigen::MatrixXd& A);
    static ModelSpec lotka_volterra(double alpha, double beta, double gamma,
                                    double delta);
    /// speed * (sigma (y - x), x (rho - z) - y, x y - beta z); speed < 1
    /// slows the attractor so serial derivatives stay numerically tame.
    static ModelSpec lorenz(double sigma = 10.0, double rho = 28.0,
                            double beta = 8.0 / 3.0, double speed = 1.0);
    static ModelSpec custom(int state_dim, std::vector<ExprPtr> flow);

    /// Attaches an observation map, e.g. the sum-of-components map used in
    /// the Lorenz filtering scenario.
    ModelSpec& with_obs(std::vector<ExprPtr> g);
    ModelSpec& with_sum_obs();

    Eigen::VectorXd eval_flow(const Eigen::VectorXd& x) const;
    Eigen::VectorXd eval_obs(const Eigen::VectorXd& x) const;

    /// Jacobians via forward-mode duals; exact for the polynomial expression
    /// language.
    Eigen::MatrixXd flow_jacobian(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd obs_jacobian(const Eigen::VectorXd& x) const;
};

}  // namespace gencoord

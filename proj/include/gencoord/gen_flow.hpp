#pragma once

#include <Eigen/Dense>

#include "gencoord/gen_point.hpp"
#include "gencoord/model.hpp"

namespace gencoord {

enum class FlowMode { Exact, Linear };

/// The generalized flow (f^(0)(x^(:0)), ..., f^(N-1)(x^(:N-1))), computed by
/// propagating truncated-Taylor jets through the flow graph. Returned as a
/// stack of N d-vectors (a GenPoint of order N-1).
GenPoint gen_flow_exact(const ModelSpec& model, const GenPoint& x);

/// Local linear approximation: (f(x^(0)), grad f(x^(0)) x^(1), ...,
/// grad f(x^(0)) x^(N-1)).
GenPoint gen_flow_linear(const ModelSpec& model, const GenPoint& x);

GenPoint gen_flow(const ModelSpec& model, const GenPoint& x, FlowMode mode);

/// Jacobian of the generalized flow w.r.t. the flattened input, Nd x (N+1)d.
/// Linear mode is block-diagonal with grad f(x^(0)) repeated; exact mode
/// differentiates gen_flow_exact by central differences.
Eigen::MatrixXd gen_jacobian(const ModelSpec& model, const GenPoint& x, FlowMode mode);

/// Exact-mode Jacobian by forward jet-of-dual propagation; internal
/// alternative to the finite-difference path, exact for polynomial flows.
Eigen::MatrixXd gen_jacobian_forward(const ModelSpec& model, const GenPoint& x);

/// The generalized likelihood map (g^(0)(x^(:0)), ..., g^(M)(x^(:M))),
/// a stack of M+1 m-vectors.
GenPoint gen_likelihood(const ModelSpec& model, const GenPoint& x, int M, FlowMode mode);

/// Jacobian of the generalized likelihood, (M+1)m x (N+1)d. Linear mode has
/// grad g(x^(0)) on blocks (k,k), k = 0..M, zero right columns.
Eigen::MatrixXd gen_likelihood_jacobian(const ModelSpec& model, const GenPoint& x,
                                        int M, FlowMode mode);

}  // namespace gencoord

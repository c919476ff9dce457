#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "gencoord/gen_flow.hpp"
#include "gencoord/kernel.hpp"

namespace gencoord {

/// Generative model for generalized filtering: prior SDE flow f with process
/// noise covariance Sigma^w (order N), likelihood map g with observation
/// noise covariance Sigma^z (order M+1), descent weight lambda.
struct GenerativeModel {
    ModelSpec model;
    int N = 1;          // state order
    int M = 0;          // observation order, M <= N
    GenCov cov_w;       // Nd x Nd
    GenCov cov_z;       // (M+1)m x (M+1)m
    double lambda = 1.0;
    FlowMode mode = FlowMode::Linear;

    GenerativeModel(ModelSpec model_in, int N_in, int M_in, GenCov cov_w_in,
                    GenCov cov_z_in, double lambda_in = 1.0,
                    FlowMode mode_in = FlowMode::Linear);

    const Eigen::MatrixXd& prec_w() const { return prec_w_; }
    const Eigen::MatrixXd& prec_z() const { return prec_z_; }

  private:
    Eigen::MatrixXd prec_w_;
    Eigen::MatrixXd prec_z_;
};

/// An observation lifted into generalized coordinates: M+1 stacked m-vectors.
struct GenObservation {
    double time = 0.0;
    GenPoint coords;  // order M
};

/// Posterior state at one time step.
struct FilterState {
    double time = 0.0;
    GenPoint mu;             // order N
    Eigen::MatrixXd sigma;   // (N+1)d x (N+1)d
    double free_energy = 0.0;
    bool degraded = false;   // jitter was needed for the Hessian inverse
};

/// Iterated backward differences up to order M: coords[k] is the k-th
/// backward difference divided by dt^k.
GenObservation embed_finite_diff(const std::vector<Eigen::VectorXd>& series, double dt,
                                 int M, int index);

/// Inverts the Taylor expansion through the M+1 most recent samples:
/// solve y_{t-i dt} = sum_n y^(n) (-i dt)^n / n! for the derivatives.
GenObservation embed_inverse_taylor(const std::vector<Eigen::VectorXd>& series,
                                    double dt, int M, int index);

/// V = 1/2 (y - g(mu))^T Sz^{-1} (y - g(mu))
///   + 1/2 (D'mu - f(mu))^T Sw^{-1} (D'mu - f(mu)).
double energy(const GenerativeModel& gm, const GenObservation& y, const GenPoint& mu);

/// grad V = (grad g)^T Sz^{-1} (g(mu) - y) + (D' - grad f)^T Sw^{-1} (D'mu - f(mu)),
/// with the generalized Jacobians taken per gm.mode.
GenPoint energy_grad(const GenerativeModel& gm, const GenObservation& y,
                     const GenPoint& mu);

/// Linear mode: the Gauss-Newton form (grad g)^T Sz^{-1} grad g +
/// (D' - grad f)^T Sw^{-1} (D' - grad f); exact mode: central differences of
/// energy_grad.
Eigen::MatrixXd energy_hessian(const GenerativeModel& gm, const GenObservation& y,
                               const GenPoint& mu);

/// Sigma* = H^{-1} (with jitter escalation; `degraded` reports jitter use).
Eigen::MatrixXd optimal_cov(const Eigen::MatrixXd& H, bool* degraded = nullptr);

/// F_L = V + 1/2 log det grad^2 V - ((N+1)d/2) log(2 pi e).
double laplace_free_energy(const GenerativeModel& gm, const GenObservation& y,
                           const GenPoint& mu);

/// Gradient of log det grad^2 V. Exactly zero in linear mode (all third
/// derivatives of the energy vanish); finite differences of the Hessian in
/// exact mode.
GenPoint logdet_grad(const GenerativeModel& gm, const GenObservation& y,
                     const GenPoint& mu);

/// grad F_L at the optimal covariance: energy_grad + 1/2 logdet_grad.
GenPoint free_energy_grad(const GenerativeModel& gm, const GenObservation& y,
                          const GenPoint& mu);

/// Euler integration of mu' = D mu - lambda grad V - (lambda/2) logdet_grad
/// with zero-order hold on y between observation times; Sigma_t and F_L are
/// recorded at each observation time.
std::vector<FilterState> run_filter(const GenerativeModel& gm,
                                    const std::vector<GenObservation>& observations,
                                    const GenPoint& mu0, double dt_integrate);

/// Default initial mean: observation pseudo-inverse at order 0, zeros above.
GenPoint default_initial_mean(const GenerativeModel& gm, const GenObservation& y0);

struct OrderSelection {
    int best_order = 0;
    std::vector<int> candidates;
    std::vector<double> integrated_free_energy;  // NaN for failed candidates
};

/// Runs the filter per candidate order (M = N) and returns the order
/// minimizing the time-integrated Laplace free energy; ties break toward
/// smaller N. `build` constructs the generative model for a given order.
template <class BuildFn, class ObsFn>
OrderSelection select_order(const std::vector<int>& candidates, BuildFn&& build,
                            ObsFn&& observations_for_order, const double dt_integrate) {
    if (candidates.empty())
        throw InvalidArgument("select-order: candidate list must be non-empty");
    OrderSelection sel;
    sel.candidates = candidates;
    for (int cand : candidates) {
        double total = std::numeric_limits<double>::quiet_NaN();
        try {
            const GenerativeModel gm = build(cand);
            if (cand > 2 * gm.model.state_dim)
                std::fprintf(stderr,
                             "warning: candidate order %d exceeds the recommended "
                             "cap of 2d = %d\n",
                             cand, 2 * gm.model.state_dim);
            const std::vector<GenObservation> obs = observations_for_order(cand);
            const auto states =
                run_filter(gm, obs, default_initial_mean(gm, obs.front()), dt_integrate);
            total = 0.0;
            for (size_t i = 1; i < states.size(); ++i)
                total += states[i].free_energy * (states[i].time - states[i - 1].time);
        } catch (const Error&) {
            // failed candidates are excluded, recorded as NaN
        }
        sel.integrated_free_energy.push_back(total);
    }
    double best = std::numeric_limits<double>::infinity();
    sel.best_order = -1;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const double total = sel.integrated_free_energy[i];
        if (std::isnan(total)) continue;
        const bool better =
            total < best || (total == best && candidates[i] < sel.best_order);
        if (better) {
            best = total;
            sel.best_order = candidates[i];
        }
    }
    if (sel.best_order < 0)
        throw NumericalError("select-order: every candidate order failed");
    return sel;
}

}  // namespace gencoord

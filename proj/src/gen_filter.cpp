#include "gencoord/gen_filter.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "gencoord/sampling.hpp"

namespace gencoord {

GenerativeModel::GenerativeModel(ModelSpec model_in, int N_in, int M_in,
                                 GenCov cov_w_in, GenCov cov_z_in, double lambda_in,
                                 FlowMode mode_in)
    : model(std::move(model_in)),
      N(N_in),
      M(M_in),
      cov_w(std::move(cov_w_in)),
      cov_z(std::move(cov_z_in)),
      lambda(lambda_in),
      mode(mode_in) {
    if (M > N) throw InvalidArgument("generative-model: M <= N required");
    if (lambda <= 0.0)
        throw InvalidArgument("generative-model: lambda must be positive");
    if (cov_w.order != N || cov_w.base_dim != model.state_dim)
        throw InvalidArgument("generative-model: cov_w must have order N, dim d");
    if (cov_z.order != M + 1 || cov_z.base_dim != model.obs_dim)
        throw InvalidArgument("generative-model: cov_z must have order M+1, dim m");
    try {
        prec_w_ = jittered_inverse(cov_w.matrix);
        prec_z_ = jittered_inverse(cov_z.matrix);
    } catch (const NumericalError&) {
        throw NumericalError("singular-covariance: noise covariance not invertible");
    }
}

GenObservation embed_finite_diff(const std::vector<Eigen::VectorXd>& series, double dt,
                                 int M, int index) {
    if (index < M || index >= static_cast<int>(series.size()))
        throw InvalidArgument("not-enough-samples: need M prior samples");
    const int m = static_cast<int>(series[index].size());
    GenObservation obs;
    obs.time = index * dt;
    obs.coords = GenPoint(m, M);

    std::vector<Eigen::VectorXd> diff(M + 1);
    for (int i = 0; i <= M; ++i) diff[i] = series[index - i];
    obs.coords[0] = diff[0];
    for (int k = 1; k <= M; ++k) {
        for (int i = 0; i + k <= M; ++i) diff[i] = (diff[i] - diff[i + 1]) / dt;
        obs.coords[k] = diff[0];
    }
    return obs;
}

GenObservation embed_inverse_taylor(const std::vector<Eigen::VectorXd>& series,
                                    double dt, int M, int index) {
    if (index < M || index >= static_cast<int>(series.size()))
        throw InvalidArgument("not-enough-samples: need M prior samples");
    if (dt <= 0.0) throw InvalidArgument("embed: dt must be positive");
    const int m = static_cast<int>(series[index].size());

    Eigen::MatrixXd T(M + 1, M + 1);
    for (int i = 0; i <= M; ++i) {
        double coef = 1.0;  // (-i dt)^n / n!
        for (int n = 0; n <= M; ++n) {
            T(i, n) = coef;
            coef *= (-static_cast<double>(i) * dt) / (n + 1);
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(T);
    if (!lu.isInvertible())
        throw NumericalError("embedding-failure: singular interpolation matrix");

    Eigen::MatrixXd rhs(M + 1, m);
    for (int i = 0; i <= M; ++i) rhs.row(i) = series[index - i].transpose();
    const Eigen::MatrixXd derivs = lu.solve(rhs);  // row n = y^(n)

    const double resid = (T * derivs - rhs).norm();
    if (resid > 1e-9 * std::max(1.0, rhs.norm()))
        throw NumericalError("embedding-failure: interpolation residual too large");

    GenObservation obs;
    obs.time = index * dt;
    obs.coords = GenPoint(m, M);
    for (int n = 0; n <= M; ++n) obs.coords[n] = derivs.row(n).transpose();
    return obs;
}

namespace {

struct Residuals {
    Eigen::VectorXd rz;  // g(mu) - y
    Eigen::VectorXd rw;  // D'mu - f(mu)
};

Residuals residuals(const GenerativeModel& gm, const GenObservation& y,
                    const GenPoint& mu) {
    Residuals r;
    r.rz = gen_likelihood(gm.model, mu, gm.M, gm.mode).flat() - y.coords.flat();
    r.rw = shift_drop(mu).flat() - gen_flow(gm.model, mu, gm.mode).flat();
    return r;
}

}  // namespace

double energy(const GenerativeModel& gm, const GenObservation& y, const GenPoint& mu) {
    const Residuals r = residuals(gm, y, mu);
    return 0.5 * r.rz.dot(gm.prec_z() * r.rz) + 0.5 * r.rw.dot(gm.prec_w() * r.rw);
}

GenPoint energy_grad(const GenerativeModel& gm, const GenObservation& y,
                     const GenPoint& mu) {
    const int N = mu.order();
    const int d = mu.base_dim();
    const Residuals r = residuals(gm, y, mu);
    const Eigen::MatrixXd Jg = gen_likelihood_jacobian(gm.model, mu, gm.M, gm.mode);
    const Eigen::MatrixXd DmJ =
        shift_drop_matrix(N, d) - gen_jacobian(gm.model, mu, gm.mode);
    const Eigen::VectorXd g =
        Jg.transpose() * (gm.prec_z() * r.rz) + DmJ.transpose() * (gm.prec_w() * r.rw);
    return GenPoint::from_flat(d, N, g);
}

Eigen::MatrixXd energy_hessian(const GenerativeModel& gm, const GenObservation& y,
                               const GenPoint& mu) {
    const int N = mu.order();
    const int d = mu.base_dim();
    if (gm.mode == FlowMode::Linear) {
        const Eigen::MatrixXd Jg = gen_likelihood_jacobian(gm.model, mu, gm.M, gm.mode);
        const Eigen::MatrixXd DmJ =
            shift_drop_matrix(N, d) - gen_jacobian(gm.model, mu, gm.mode);
        const Eigen::MatrixXd H = Jg.transpose() * gm.prec_z() * Jg +
                                  DmJ.transpose() * gm.prec_w() * DmJ;
        return 0.5 * (H + H.transpose());
    }
    // exact mode: central differences of the gradient
    const Eigen::Index dim = static_cast<Eigen::Index>(N + 1) * d;
    Eigen::MatrixXd H(dim, dim);
    const Eigen::VectorXd flat = mu.flat();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double h = 1e-5 * (1.0 + std::abs(flat(j)));
        Eigen::VectorXd hi = flat, lo = flat;
        hi(j) += h;
        lo(j) -= h;
        H.col(j) = (energy_grad(gm, y, GenPoint::from_flat(d, N, hi)).flat() -
                    energy_grad(gm, y, GenPoint::from_flat(d, N, lo)).flat()) /
                   (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
}

Eigen::MatrixXd optimal_cov(const Eigen::MatrixXd& H, bool* degraded) {
    if (!H.isApprox(H.transpose(), 1e-6))
        throw InvalidArgument("optimal-cov: Hessian must be symmetric");
    try {
        return jittered_inverse(H, degraded);
    } catch (const NumericalError&) {
        throw NumericalError("singular-Hessian: energy Hessian not invertible");
    }
}

double laplace_free_energy(const GenerativeModel& gm, const GenObservation& y,
                           const GenPoint& mu) {
    const Eigen::MatrixXd H = energy_hessian(gm, y, mu);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const double scale = std::max(H.trace() / H.rows(), 1e-300);
    if (es.eigenvalues().minCoeff() < -1e-6 * scale)
        throw NumericalError(
            "outside-laplace-domain: energy Hessian not positive definite");
    // near-zero eigenvalues are floored at the jitter level used elsewhere
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        logdet += std::log(std::max(es.eigenvalues()(i), 1e-12 * scale));
    const double dim = static_cast<double>(H.rows());
    return energy(gm, y, mu) + 0.5 * logdet -
           0.5 * dim * std::log(2.0 * std::numbers::pi * std::numbers::e);
}

GenPoint logdet_grad(const GenerativeModel& gm, const GenObservation& y,
                     const GenPoint& mu) {
    const int N = mu.order();
    const int d = mu.base_dim();
    if (gm.mode == FlowMode::Linear) return GenPoint(d, N);  // exact zero

    const Eigen::MatrixXd H = energy_hessian(gm, y, mu);
    Eigen::MatrixXd Hinv;
    try {
        Hinv = jittered_inverse(0.5 * (H + H.transpose()));
    } catch (const NumericalError&) {
        throw NumericalError("singular-Hessian: cannot form log-det gradient");
    }
    const Eigen::VectorXd flat = mu.flat();
    GenPoint out(d, N);
    Eigen::VectorXd g(flat.size());
    for (Eigen::Index j = 0; j < flat.size(); ++j) {
        const double h = 1e-4 * (1.0 + std::abs(flat(j)));
        Eigen::VectorXd hi = flat, lo = flat;
        hi(j) += h;
        lo(j) -= h;
        const Eigen::MatrixXd dH =
            (energy_hessian(gm, y, GenPoint::from_flat(d, N, hi)) -
             energy_hessian(gm, y, GenPoint::from_flat(d, N, lo))) /
            (2.0 * h);
        g(j) = (Hinv * dH).trace();
    }
    return GenPoint::from_flat(d, N, g);
}

GenPoint free_energy_grad(const GenerativeModel& gm, const GenObservation& y,
                          const GenPoint& mu) {
    if (gm.mode == FlowMode::Linear) return energy_grad(gm, y, mu);
    const Eigen::VectorXd g =
        energy_grad(gm, y, mu).flat() + 0.5 * logdet_grad(gm, y, mu).flat();
    return GenPoint::from_flat(mu.base_dim(), mu.order(), g);
}

GenPoint default_initial_mean(const GenerativeModel& gm, const GenObservation& y0) {
    const int d = gm.model.state_dim;
    const Eigen::MatrixXd Jg = gm.model.obs_jacobian(Eigen::VectorXd::Zero(d));
    const Eigen::MatrixXd pinv = Jg.completeOrthogonalDecomposition().pseudoInverse();
    GenPoint mu(d, gm.N);
    mu[0] = pinv * y0.coords[0];
    return mu;
}

std::vector<FilterState> run_filter(const GenerativeModel& gm,
                                    const std::vector<GenObservation>& observations,
                                    const GenPoint& mu0, double dt_integrate) {
    if (observations.empty())
        throw InvalidArgument("filter: observation sequence must be non-empty");
    if (dt_integrate <= 0.0)
        throw InvalidArgument("filter: dt_integrate must be positive");
    for (size_t i = 1; i < observations.size(); ++i)
        if (observations[i].time <= observations[i - 1].time)
            throw InvalidArgument("filter: observations must be time-sorted");

    const int d = gm.model.state_dim;
    const int N = gm.N;

    auto record = [&](double t, const GenPoint& mu,
                      const GenObservation& y) -> FilterState {
        FilterState st;
        st.time = t;
        st.mu = mu;
        const Eigen::MatrixXd H = energy_hessian(gm, y, mu);
        st.sigma = optimal_cov(H, &st.degraded);
        st.free_energy = laplace_free_energy(gm, y, mu);
        return st;
    };

    auto euler_step = [&](const GenPoint& from, const GenObservation& y,
                          double h) -> Eigen::VectorXd {
        const GenPoint gradV = energy_grad(gm, y, from);
        Eigen::VectorXd drift = shift(from).flat() - gm.lambda * gradV.flat();
        if (gm.mode == FlowMode::Exact)
            drift -= (gm.lambda / 2.0) * logdet_grad(gm, y, from).flat();
        return from.flat() + h * drift;
    };

    std::vector<FilterState> out;
    GenPoint mu = mu0;
    out.push_back(record(observations.front().time, mu, observations.front()));

    // half-step Richardson probe: a large gap between one full step and two
    // half steps means dt_integrate under-resolves the descent
    if (observations.size() > 1) {
        const GenObservation& y = observations[1];
        const Eigen::VectorXd full = euler_step(mu, y, dt_integrate);
        const Eigen::VectorXd half = euler_step(
            GenPoint::from_flat(d, N, euler_step(mu, y, 0.5 * dt_integrate)), y,
            0.5 * dt_integrate);
        if (full.allFinite() && half.allFinite()) {
            const double step = (full - mu.flat()).norm();
            const double err = (full - half).norm() / (1e-12 + step);
            if (err > 0.5)
                std::fprintf(stderr,
                             "warning: dt_integrate looks too large "
                             "(half-step error estimate %.3g)\n",
                             err);
        }
    }

    for (size_t i = 1; i < observations.size(); ++i) {
        const double span = observations[i].time - observations[i - 1].time;
        const int n_steps = static_cast<int>(std::round(span / dt_integrate));
        if (n_steps < 1 || std::abs(n_steps * dt_integrate - span) > 1e-9 * span + 1e-12)
            throw InvalidArgument(
                "filter: dt_integrate must divide the observation spacing");
        // hold the incoming observation across the interval
        const GenObservation& y = observations[i];
        for (int k = 0; k < n_steps; ++k) {
            const GenPoint gradV = energy_grad(gm, y, mu);
            Eigen::VectorXd drift = shift(mu).flat() - gm.lambda * gradV.flat();
            if (gm.mode == FlowMode::Exact)
                drift -= (gm.lambda / 2.0) * logdet_grad(gm, y, mu).flat();
            const Eigen::VectorXd next = mu.flat() + dt_integrate * drift;
            if (!next.allFinite())
                throw NumericalError("filter-blowup: non-finite mean during descent");
            mu = GenPoint::from_flat(d, N, next);
        }
        out.push_back(record(observations[i].time, mu, y));
    }
    return out;
}

}  // namespace gencoord

#include "gencoord/gen_flow.hpp"

#include <cmath>

#include "gencoord/jet.hpp"

namespace gencoord {

namespace {

// Seed state component i as a jet carrying derivatives x^(0..K)_i.
template <class T>
std::vector<Jet<T>> seed_jets(const GenPoint& x, int K) {
    const int d = x.base_dim();
    std::vector<Jet<T>> vars;
    vars.reserve(d);
    for (int i = 0; i < d; ++i) {
        Jet<T> j(K);
        for (int n = 0; n <= K; ++n) j[n] = T(x[n](i));
        vars.push_back(std::move(j));
    }
    return vars;
}

GenPoint eval_graphs_jets(const std::vector<ExprPtr>& graphs, const GenPoint& x,
                          int K) {
    const auto vars = seed_jets<double>(x, K);
    const Jet<double> one(K, 1.0);
    GenPoint out(static_cast<int>(graphs.size()), K);
    for (size_t i = 0; i < graphs.size(); ++i) {
        const Jet<double> r = eval_expr(*graphs[i], vars, one);
        for (int n = 0; n <= K; ++n) out[n](static_cast<Eigen::Index>(i)) = r[n];
    }
    return out;
}

GenPoint eval_graphs_linear(const std::vector<ExprPtr>& graphs, const ModelSpec& model,
                            const GenPoint& x, int K, bool obs) {
    const Eigen::VectorXd x0 = x[0];
    const Eigen::VectorXd base =
        obs ? model.eval_obs(x0) : model.eval_flow(x0);
    const Eigen::MatrixXd J =
        obs ? model.obs_jacobian(x0) : model.flow_jacobian(x0);
    GenPoint out(static_cast<int>(graphs.size()), K);
    out[0] = base;
    for (int n = 1; n <= K; ++n) out[n] = J * x[n];
    return out;
}

}  // namespace

GenPoint gen_flow_exact(const ModelSpec& model, const GenPoint& x) {
    if (x.order() < 1)
        throw InvalidArgument("gen-flow: input must have order >= 1");
    if (x.base_dim() != model.state_dim)
        throw InvalidArgument("gen-flow: base dimension mismatch");
    return eval_graphs_jets(model.flow, x, x.order() - 1);
}

GenPoint gen_flow_linear(const ModelSpec& model, const GenPoint& x) {
    if (x.order() < 1)
        throw InvalidArgument("gen-flow: input must have order >= 1");
    if (x.base_dim() != model.state_dim)
        throw InvalidArgument("gen-flow: base dimension mismatch");
    return eval_graphs_linear(model.flow, model, x, x.order() - 1, /*obs=*/false);
}

GenPoint gen_flow(const ModelSpec& model, const GenPoint& x, FlowMode mode) {
    return mode == FlowMode::Exact ? gen_flow_exact(model, x)
                                   : gen_flow_linear(model, x);
}

Eigen::MatrixXd gen_jacobian_forward(const ModelSpec& model, const GenPoint& x) {
    const int N = x.order();
    const int d = x.base_dim();
    const int K = N - 1;
    Eigen::MatrixXd J(static_cast<Eigen::Index>(N) * d,
                      static_cast<Eigen::Index>(N + 1) * d);
    auto vars = seed_jets<Dual>(x, K);
    const Jet<Dual> one(K, Dual(1.0, 0.0));
    for (int col_n = 0; col_n <= N; ++col_n) {
        for (int col_i = 0; col_i < d; ++col_i) {
            if (col_n <= K) vars[col_i][col_n].d = 1.0;
            for (int row_i = 0; row_i < d; ++row_i) {
                const Jet<Dual> r = eval_expr(*model.flow[row_i], vars, one);
                for (int n = 0; n <= K; ++n)
                    J(static_cast<Eigen::Index>(n) * d + row_i,
                      static_cast<Eigen::Index>(col_n) * d + col_i) = r[n].d;
            }
            if (col_n <= K) vars[col_i][col_n].d = 0.0;
        }
    }
    return J;
}

Eigen::MatrixXd gen_jacobian(const ModelSpec& model, const GenPoint& x, FlowMode mode) {
    const int N = x.order();
    const int d = x.base_dim();
    if (mode == FlowMode::Linear) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(
            static_cast<Eigen::Index>(N) * d, static_cast<Eigen::Index>(N + 1) * d);
        const Eigen::MatrixXd Jf = model.flow_jacobian(x[0]);
        for (int n = 0; n < N; ++n)
            J.block(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d,
                    d, d) = Jf;
        return J;
    }
    // central finite differences of gen_flow_exact
    Eigen::MatrixXd J(static_cast<Eigen::Index>(N) * d,
                      static_cast<Eigen::Index>(N + 1) * d);
    Eigen::VectorXd flat = x.flat();
    for (Eigen::Index j = 0; j < flat.size(); ++j) {
        const double h = 1e-6 * (1.0 + std::abs(flat(j)));
        Eigen::VectorXd hi = flat, lo = flat;
        hi(j) += h;
        lo(j) -= h;
        const Eigen::VectorXd fhi =
            gen_flow_exact(model, GenPoint::from_flat(d, N, hi)).flat();
        const Eigen::VectorXd flo =
            gen_flow_exact(model, GenPoint::from_flat(d, N, lo)).flat();
        J.col(j) = (fhi - flo) / (2.0 * h);
    }
    return J;
}

GenPoint gen_likelihood(const ModelSpec& model, const GenPoint& x, int M,
                        FlowMode mode) {
    if (!model.obs_map)
        throw InvalidArgument("no-observation-model: obs map missing");
    if (M > x.order())
        throw InvalidArgument("gen-likelihood: M must not exceed the state order");
    if (mode == FlowMode::Exact) return eval_graphs_jets(*model.obs_map, x, M);
    return eval_graphs_linear(*model.obs_map, model, x, M, /*obs=*/true);
}

Eigen::MatrixXd gen_likelihood_jacobian(const ModelSpec& model, const GenPoint& x,
                                        int M, FlowMode mode) {
    if (!model.obs_map)
        throw InvalidArgument("no-observation-model: obs map missing");
    const int N = x.order();
    const int d = x.base_dim();
    const int m = model.obs_dim;
    if (mode == FlowMode::Linear) {
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(
            static_cast<Eigen::Index>(M + 1) * m, static_cast<Eigen::Index>(N + 1) * d);
        const Eigen::MatrixXd Jg = model.obs_jacobian(x[0]);
        for (int k = 0; k <= M; ++k)
            J.block(static_cast<Eigen::Index>(k) * m, static_cast<Eigen::Index>(k) * d,
                    m, d) = Jg;
        return J;
    }
    Eigen::MatrixXd J(static_cast<Eigen::Index>(M + 1) * m,
                      static_cast<Eigen::Index>(N + 1) * d);
    Eigen::VectorXd flat = x.flat();
    for (Eigen::Index j = 0; j < flat.size(); ++j) {
        const double h = 1e-6 * (1.0 + std::abs(flat(j)));
        Eigen::VectorXd hi = flat, lo = flat;
        hi(j) += h;
        lo(j) -= h;
        const Eigen::VectorXd fhi =
            gen_likelihood(model, GenPoint::from_flat(d, N, hi), M, mode).flat();
        const Eigen::VectorXd flo =
            gen_likelihood(model, GenPoint::from_flat(d, N, lo), M, mode).flat();
        J.col(j) = (fhi - flo) / (2.0 * h);
    }
    return J;
}

}  // namespace gencoord

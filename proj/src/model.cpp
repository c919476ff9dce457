#include "gencoord/model.hpp"

#include "gencoord/jet.hpp"

namespace gencoord {

ModelSpec ModelSpec::linear(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols() || A.rows() < 1)
        throw InvalidArgument("model: linear flow needs a square matrix");
    const int d = static_cast<int>(A.rows());
    ModelSpec m;
    m.state_dim = d;
    m.builtin = Builtin::Linear;
    m.A = A;
    for (int i = 0; i < d; ++i) {
        ExprPtr row;
        for (int j = 0; j < d; ++j) {
            if (A(i, j) == 0.0) continue;
            ExprPtr term = scale(A(i, j), var(j));
            row = row ? add(row, term) : term;
        }
        m.flow.push_back(row ? row : constant(0.0));
    }
    return m;
}

ModelSpec ModelSpec::lotka_volterra(double alpha, double beta, double gamma,
                                    double delta) {
    ModelSpec m;
    m.state_dim = 2;
    m.builtin = Builtin::LotkaVolterra;
    // dx = alpha x - beta x y ; dy = delta x y - gamma y
    m.flow.push_back(
        sub(scale(alpha, var(0)), scale(beta, mul(var(0), var(1)))));
    m.flow.push_back(
        sub(scale(delta, mul(var(0), var(1))), scale(gamma, var(1))));
    return m;
}

ModelSpec ModelSpec::lorenz(double sigma, double rho, double beta, double speed) {
    if (speed <= 0.0) throw InvalidArgument("model: lorenz speed must be positive");
    ModelSpec m;
    m.state_dim = 3;
    m.builtin = Builtin::Lorenz;
    m.flow.push_back(scale(speed * sigma, sub(var(1), var(0))));
    m.flow.push_back(
        scale(speed, sub(mul(var(0), sub(constant(rho), var(2))), var(1))));
    m.flow.push_back(scale(speed, sub(mul(var(0), var(1)), scale(beta, var(2)))));
    return m;
}

ModelSpec ModelSpec::custom(int state_dim, std::vector<ExprPtr> flow) {
    if (static_cast<int>(flow.size()) != state_dim)
        throw InvalidArgument("model: flow must have one expression per state dim");
    ModelSpec m;
    m.state_dim = state_dim;
    m.builtin = Builtin::Custom;
    m.flow = std::move(flow);
    return m;
}

ModelSpec& ModelSpec::with_obs(std::vector<ExprPtr> g) {
    obs_dim = static_cast<int>(g.size());
    obs_map = std::move(g);
    return *this;
}

ModelSpec& ModelSpec::with_sum_obs() {
    ExprPtr sum = var(0);
    for (int i = 1; i < state_dim; ++i) sum = add(sum, var(i));
    return with_obs({sum});
}

namespace {

Eigen::VectorXd eval_graphs(const std::vector<ExprPtr>& graphs,
                            const Eigen::VectorXd& x) {
    std::vector<double> vars(x.data(), x.data() + x.size());
    Eigen::VectorXd out(static_cast<Eigen::Index>(graphs.size()));
    for (size_t i = 0; i < graphs.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = eval_expr(*graphs[i], vars, 1.0);
    return out;
}

Eigen::MatrixXd jacobian_graphs(const std::vector<ExprPtr>& graphs,
                                const Eigen::VectorXd& x) {
    const Eigen::Index d = x.size();
    Eigen::MatrixXd J(static_cast<Eigen::Index>(graphs.size()), d);
    std::vector<Dual> vars(x.data(), x.data() + x.size());
    const Dual one(1.0, 0.0);
    for (Eigen::Index j = 0; j < d; ++j) {
        vars[j].d = 1.0;
        for (size_t i = 0; i < graphs.size(); ++i)
            J(static_cast<Eigen::Index>(i), j) = eval_expr(*graphs[i], vars, one).d;
        vars[j].d = 0.0;
    }
    return J;
}

}  // namespace

Eigen::VectorXd ModelSpec::eval_flow(const Eigen::VectorXd& x) const {
    return eval_graphs(flow, x);
}

Eigen::VectorXd ModelSpec::eval_obs(const Eigen::VectorXd& x) const {
    if (!obs_map) throw InvalidArgument("no-observation-model: obs map missing");
    return eval_graphs(*obs_map, x);
}

Eigen::MatrixXd ModelSpec::flow_jacobian(const Eigen::VectorXd& x) const {
    return jacobian_graphs(flow, x);
}

Eigen::MatrixXd ModelSpec::obs_jacobian(const Eigen::VectorXd& x) const {
    if (!obs_map) throw InvalidArgument("no-observation-model: obs map missing");
    return jacobian_graphs(*obs_map, x);
}

}  // namespace gencoord

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gencoord/errors.hpp"

namespace gencoord {

constexpr int kMaxOrder = 64;

/// A stacked vector of serial derivatives (position, velocity, ...) of a
/// d-dimensional state up to order N. coords[n] holds the order-n derivative,
/// unscaled by factorials.
class GenPoint {
  public:
    GenPoint() = default;

    GenPoint(int base_dim, int order)
        : base_dim_(base_dim),
          order_(order),
          coords_(static_cast<size_t>(order + 1),
                  Eigen::VectorXd::Zero(base_dim)) {
        check_shape(base_dim, order);
    }

    GenPoint(int base_dim, int order, std::vector<Eigen::VectorXd> coords)
        : base_dim_(base_dim), order_(order), coords_(std::move(coords)) {
        check_shape(base_dim, order);
        if (static_cast<int>(coords_.size()) != order + 1)
            throw InvalidArgument("gen-point: expected order+1 coordinate vectors");
        for (const auto& c : coords_)
            if (c.size() != base_dim)
                throw InvalidArgument("gen-point: coordinate vector has wrong length");
    }

    /// Order-major flattening: all d components of order 0, then order 1, ...
    static GenPoint from_flat(int base_dim, int order, const Eigen::VectorXd& flat) {
        if (flat.size() != static_cast<Eigen::Index>(base_dim) * (order + 1))
            throw InvalidArgument("gen-point: flat vector has wrong length");
        GenPoint p(base_dim, order);
        for (int n = 0; n <= order; ++n)
            p.coords_[n] = flat.segment(static_cast<Eigen::Index>(n) * base_dim, base_dim);
        return p;
    }

    int base_dim() const { return base_dim_; }
    int order() const { return order_; }

    const Eigen::VectorXd& operator[](int n) const { return coords_[n]; }
    Eigen::VectorXd& operator[](int n) { return coords_[n]; }

    const std::vector<Eigen::VectorXd>& coords() const { return coords_; }

    Eigen::VectorXd flat() const {
        Eigen::VectorXd out(static_cast<Eigen::Index>(base_dim_) * (order_ + 1));
        for (int n = 0; n <= order_; ++n)
            out.segment(static_cast<Eigen::Index>(n) * base_dim_, base_dim_) = coords_[n];
        return out;
    }

    bool all_finite() const {
        for (const auto& c : coords_)
            if (!c.allFinite()) return false;
        return true;
    }

  private:
    static void check_shape(int base_dim, int order) {
        if (base_dim < 1) throw InvalidArgument("gen-point: base_dim must be positive");
        if (order < 0 || order > kMaxOrder)
            throw InvalidArgument("gen-point: order out of range [0, 64]");
    }

    int base_dim_ = 1;
    int order_ = 0;
    std::vector<Eigen::VectorXd> coords_{Eigen::VectorXd::Zero(1)};
};

/// Serial derivatives of the driving noise: coords[n] = w^(n), n = 0..N-1
/// for a state of order N. Stored with order() = N-1.
using GenNoise = GenPoint;

/// Applies the shift operator D: (x^(0),...,x^(N)) -> (x^(1),...,x^(N),0).
inline GenPoint shift(const GenPoint& x) {
    GenPoint out(x.base_dim(), x.order());
    for (int n = 0; n < x.order(); ++n) out[n] = x[n + 1];
    return out;
}

/// Applies D': drops the order-0 entry, returning (x^(1),...,x^(N)) as a
/// stack of N vectors (order N-1).
inline GenPoint shift_drop(const GenPoint& x) {
    if (x.order() < 1)
        throw InvalidArgument("shift-drop: input must have order >= 1");
    GenPoint out(x.base_dim(), x.order() - 1);
    for (int n = 0; n < x.order(); ++n) out[n] = x[n + 1];
    return out;
}

/// exp(tD) x: result^(n) = sum_{i=0}^{N-n} x^(i+n) t^i / i!.
inline GenPoint taylor_eval(const GenPoint& x, double t) {
    const int N = x.order();
    GenPoint out(x.base_dim(), N);
    for (int n = 0; n <= N; ++n) {
        // Horner over the remaining orders.
        Eigen::VectorXd acc = x[N];
        for (int k = N - 1; k >= n; --k)
            acc = x[k] + acc * (t / (k - n + 1));
        out[n] = acc;
    }
    return out;
}

/// Explicit (N+1)d x (N+1)d propagator exp(tD) in order-major layout,
/// i.e. S kron I_d with S the (N+1)x(N+1) upper-triangular Taylor matrix.
inline Eigen::MatrixXd exp_shift_matrix(int N, double t, int d) {
    if (N < 0 || d < 1) throw InvalidArgument("exp-shift-matrix: N >= 0, d >= 1 required");
    const Eigen::Index dim = static_cast<Eigen::Index>(N + 1) * d;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= N; ++n) {
        double coef = 1.0;  // t^(m-n) / (m-n)!
        for (int m = n; m <= N; ++m) {
            for (int i = 0; i < d; ++i)
                M(static_cast<Eigen::Index>(n) * d + i,
                  static_cast<Eigen::Index>(m) * d + i) = coef;
            coef *= t / (m - n + 1);
        }
    }
    return M;
}

/// Flattened shift operator D (order-major), for tests and the
/// Fokker-Planck generator.
inline Eigen::MatrixXd shift_matrix(int N, int d) {
    const Eigen::Index dim = static_cast<Eigen::Index>(N + 1) * d;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < d; ++i)
            D(static_cast<Eigen::Index>(n) * d + i,
              static_cast<Eigen::Index>(n + 1) * d + i) = 1.0;
    return D;
}

/// Flattened D': Nd x (N+1)d, drops the order-0 block.
inline Eigen::MatrixXd shift_drop_matrix(int N, int d) {
    Eigen::MatrixXd Dp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N) * d,
                                               static_cast<Eigen::Index>(N + 1) * d);
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < d; ++i)
            Dp(static_cast<Eigen::Index>(n) * d + i,
               static_cast<Eigen::Index>(n + 1) * d + i) = 1.0;
    return Dp;
}

}  // namespace gencoord

#pragma once

#include <vector>

#include "gencoord/errors.hpp"

namespace gencoord {

/// Truncated Taylor coefficients of a scalar function of time, stored
/// derivative-scaled: entry k is the k-th derivative. Multiplication is the
/// Leibniz rule with binomial weights.
template <class T>
class Jet {
  public:
    Jet() : c_(1, T(0)) {}
    explicit Jet(int order, T value = T(0)) : c_(static_cast<size_t>(order) + 1, T(0)) {
        c_[0] = value;
    }
    explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw InvalidArgument("jet: needs at least one coefficient");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](int k) const { return c_[k]; }
    T& operator[](int k) { return c_[k]; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet out(a.order());
        for (int k = 0; k <= a.order(); ++k) out.c_[k] = a.c_[k] + b.c_[k];
        return out;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet out(a.order());
        for (int k = 0; k <= a.order(); ++k) out.c_[k] = a.c_[k] - b.c_[k];
        return out;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        const int K = a.order();
        Jet out(K);
        // binomial(n, k) built incrementally per row
        for (int n = 0; n <= K; ++n) {
            T acc(0);
            double binom = 1.0;
            for (int k = 0; k <= n; ++k) {
                acc = acc + binom * a.c_[k] * b.c_[n - k];
                binom = binom * (n - k) / (k + 1);
            }
            out.c_[n] = acc;
        }
        return out;
    }
    friend Jet operator*(double s, const Jet& a) {
        Jet out(a.order());
        for (int k = 0; k <= a.order(); ++k) out.c_[k] = s * a.c_[k];
        return out;
    }
    friend Jet operator-(const Jet& a) { return -1.0 * a; }

    Jet pow(int e) const {
        if (e < 0) throw InvalidArgument("jet: negative integer power unsupported");
        Jet out(order(), T(1));
        Jet base = *this;
        for (int k = e; k > 0; k >>= 1) {
            if (k & 1) out = out * base;
            if (k > 1) base = base * base;
        }
        return out;
    }

  private:
    std::vector<T> c_;
};

/// First-order forward-mode scalar: value plus one directional derivative.
struct Dual {
    double v = 0.0;
    double d = 0.0;

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
    Dual(double value, double deriv) : v(value), d(deriv) {}

    friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }
    friend Dual operator-(Dual a) { return {-a.v, -a.d}; }
};

}  // namespace gencoord

#include "gencoord/kernel.hpp"

#include <cmath>
#include <numbers>

namespace gencoord {

KernelSpec KernelSpec::gaussian(double sigma, int base_dim, double amplitude) {
    if (sigma <= 0.0) throw InvalidArgument("kernel: gaussian sigma must be positive");
    KernelSpec k;
    k.family = KernelFamily::Gaussian;
    k.base_dim = base_dim;
    k.sigma = sigma;
    k.amplitude = amplitude;
    return k;
}

KernelSpec KernelSpec::square_rational(int base_dim, double amplitude) {
    KernelSpec k;
    k.family = KernelFamily::SquareRational;
    k.base_dim = base_dim;
    k.amplitude = amplitude;
    return k;
}

KernelSpec KernelSpec::custom_series(std::vector<double> coeffs, int base_dim,
                                     double radius) {
    for (size_t j = 1; j < coeffs.size(); j += 2)
        if (coeffs[j] != 0.0)
            throw InvalidArgument(
                "kernel: custom_series must be even (odd coefficients zero)");
    KernelSpec k;
    k.family = KernelFamily::CustomSeries;
    k.base_dim = base_dim;
    k.series = std::move(coeffs);
    k.series_radius = radius;
    return k;
}

std::optional<int> KernelSpec::max_deriv_order() const {
    if (family == KernelFamily::CustomSeries)
        return series.empty() ? 0 : static_cast<int>(series.size()) - 1;
    return std::nullopt;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Physicists' Hermite polynomial H_j(u) by the three-term recurrence.
double hermite(int j, double u) {
    double hm = 1.0;
    if (j == 0) return hm;
    double h = 2.0 * u;
    for (int i = 1; i < j; ++i) {
        const double next = 2.0 * u * h - 2.0 * i * hm;
        hm = h;
        h = next;
    }
    return h;
}

// d^j/dh^j of kappa(h) = (2 sqrt(pi) sigma)^{-1} exp(-h^2 / (4 sigma^2)).
double gaussian_deriv(double sigma, int j, double h) {
    const double u = h / (2.0 * sigma);
    const double base = std::exp(-u * u) / (2.0 * std::sqrt(std::numbers::pi) * sigma);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(2.0 * sigma, -j) * hermite(j, u) * base;
}

double series_deriv(const std::vector<double>& coeffs, int j, double h,
                    double radius) {
    if (j >= static_cast<int>(coeffs.size()))
        throw InvalidArgument(
            "insufficient-kernel-order: series does not support requested derivative");
    if (std::abs(h) >= radius)
        throw InvalidArgument(
            "kernel: series evaluation outside configured validity radius");
    // kappa^(j)(h) = sum_{n >= j} c_n n!/(n-j)! h^{n-j}, Horner in h.
    double out = 0.0;
    for (int n = static_cast<int>(coeffs.size()) - 1; n >= j; --n)
        out = out * h + coeffs[n] * (factorial(n) / factorial(n - j));
    return out;
}

// Square-rational kappa(h) = 1/(1+h^2): Taylor coefficients c_{2n} = (-1)^n.
std::vector<double> square_rational_series(int max_order) {
    std::vector<double> c(static_cast<size_t>(max_order) + 1, 0.0);
    for (int n = 0; 2 * n <= max_order; ++n) c[2 * n] = (n % 2 == 0) ? 1.0 : -1.0;
    return c;
}

}  // namespace

double kernel_deriv_at_zero(const KernelSpec& k, int j) {
    if (j < 0) throw InvalidArgument("kernel: derivative order must be non-negative");
    if (j % 2 == 1) return 0.0;
    const int n = j / 2;
    switch (k.family) {
        case KernelFamily::Gaussian: {
            // (-1)^n (2n-1)!! / (2^{n+1} sqrt(pi) sigma^{2n+1})
            double dblfac = 1.0;
            for (int i = 2 * n - 1; i >= 1; i -= 2) dblfac *= i;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            return k.amplitude * sign * dblfac /
                   (std::pow(2.0, n + 1) * std::sqrt(std::numbers::pi) *
                    std::pow(k.sigma, 2 * n + 1));
        }
        case KernelFamily::SquareRational: {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            return k.amplitude * sign * factorial(2 * n);
        }
        case KernelFamily::CustomSeries: {
            if (j >= static_cast<int>(k.series.size()) && !(j == 0 && k.series.empty()))
                throw InvalidArgument(
                    "insufficient-kernel-order: series does not support requested "
                    "derivative");
            if (k.series.empty()) return 0.0;
            return k.series[j] * factorial(j);
        }
    }
    throw InvalidArgument("kernel: unknown family");
}

double kernel_deriv(const KernelSpec& k, int j, double h) {
    if (j < 0) throw InvalidArgument("kernel: derivative order must be non-negative");
    if (h == 0.0) return kernel_deriv_at_zero(k, j);
    switch (k.family) {
        case KernelFamily::Gaussian:
            return k.amplitude * gaussian_deriv(k.sigma, j, h);
        case KernelFamily::SquareRational:
            return k.amplitude * series_deriv(square_rational_series(j + 40), j, h,
                                              k.series_radius);
        case KernelFamily::CustomSeries:
            return series_deriv(k.series, j, h, k.series_radius);
    }
    throw InvalidArgument("kernel: unknown family");
}

GenCov build_gen_cov(const KernelSpec& k, int N, int d) {
    if (N < 1 || d < 1) throw InvalidArgument("gen-cov: N >= 1, d >= 1 required");
    if (auto cap = k.max_deriv_order(); cap && 2 * (N - 1) > *cap)
        throw InvalidArgument(
            "insufficient-kernel-order: kernel does not support order 2(N-1)");
    GenCov cov;
    cov.order = N;
    cov.base_dim = d;
    cov.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N) * d,
                                       static_cast<Eigen::Index>(N) * d);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < N; ++m) {
            if ((n + m) % 2 == 1) continue;  // checkerboard zeros, exact
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double val = sign * kernel_deriv_at_zero(k, n + m);
            for (int i = 0; i < d; ++i)
                cov.matrix(static_cast<Eigen::Index>(n) * d + i,
                           static_cast<Eigen::Index>(m) * d + i) = val;
        }
    }
    // PSD sanity check; can only fail for an invalid custom series.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.matrix);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo < -1e-9 * std::max(hi, 1.0))
        throw NumericalError("invalid-kernel: generalized covariance is not PSD");
    return cov;
}

Eigen::MatrixXd build_cross_cov(const KernelSpec& k, int N, int d, double h) {
    if (N < 1 || d < 1) throw InvalidArgument("cross-cov: N >= 1, d >= 1 required");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N) * d,
                                                static_cast<Eigen::Index>(N) * d);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < N; ++m) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double val = sign * kernel_deriv(k, n + m, h);
            for (int i = 0; i < d; ++i)
                out(static_cast<Eigen::Index>(n) * d + i,
                    static_cast<Eigen::Index>(m) * d + i) = val;
        }
    }
    return out;
}

}  // namespace gencoord

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gencoord/errors.hpp"

namespace gencoord {

enum class KernelFamily { Gaussian, SquareRational, CustomSeries };

/// Stationary autocovariance family. The kernel applies as scalar x identity
/// across components (component-independent noise).
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    int base_dim = 1;
    double sigma = 1.0;      // gaussian smoothing width
    double amplitude = 1.0;  // overall scale on kappa (noise volatility)
    // Taylor coefficients c_j of kappa(h) = sum_j c_j h^j at the origin
    // (custom_series family only; odd entries must be zero).
    std::vector<double> series;
    // Validity radius for series evaluation of kappa^(j)(h) at h != 0.
    double series_radius = 0.5;

    static KernelSpec gaussian(double sigma, int base_dim = 1, double amplitude = 1.0);
    static KernelSpec square_rational(int base_dim = 1, double amplitude = 1.0);
    static KernelSpec custom_series(std::vector<double> coeffs, int base_dim = 1,
                                    double radius = 0.5);

    /// Highest derivative order this kernel supports (nullopt = unbounded).
    std::optional<int> max_deriv_order() const;
};

/// kappa^(j)(0). Odd j returns exact zero (wide-sense stationarity).
double kernel_deriv_at_zero(const KernelSpec& k, int j);

/// kappa^(j)(h). Gaussian family uses the Hermite closed form; the other
/// families use the truncated Taylor series about 0, valid for
/// |h| < series_radius.
double kernel_deriv(const KernelSpec& k, int j, double h);

/// The Nd x Nd generalized noise covariance with checkerboard structure.
struct GenCov {
    int order = 1;     // N: number of stacked derivative orders (0..N-1)
    int base_dim = 1;  // d
    Eigen::MatrixXd matrix;
};

/// Block (n,m) = (-1)^n kappa^(n+m)(0) I_d; zero whenever n+m is odd.
GenCov build_gen_cov(const KernelSpec& k, int N, int d);

/// Block (n,m) = (-1)^n kappa^(n+m)(h) I_d. At h=0 equals build_gen_cov.
Eigen::MatrixXd build_cross_cov(const KernelSpec& k, int N, int d, double h);

}  // namespace gencoord

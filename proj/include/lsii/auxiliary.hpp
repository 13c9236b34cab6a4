#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "lsii/kernel.hpp"
#include "lsii/series.hpp"

namespace lsii {

/// Trimming constant: parameter boxes are [-1 + kTrim, 1 - kTrim] and
/// estimation grids live in [kTrim, 1 - kTrim].
inline constexpr double kTrim = 0.05;

struct RhoAr1 {
    double rho = 0.0;
    bool clamped = false;  ///< the raw ratio fell outside the box
};

/// Kernel-weighted lag-1 ratio sum Y_{t-1} Y_t K / sum Y_{t-1}^2 K, clamped
/// to [-1 + trim, 1 - trim]. Throws DegenerateInput on a zero denominator.
RhoAr1 local_ar1_estimate(const Series& series, double u, const KernelSpec& kernel, double trim = kTrim);

/// Unweighted lag-1 regression through the origin, clamped as above.
RhoAr1 global_ar1_estimate(std::span<const double> series, double trim = kTrim);
inline RhoAr1 global_ar1_estimate(const Series& series, double trim = kTrim) {
    return global_ar1_estimate(series.values(), trim);
}

/// Probability limit of the AR(1) coefficient fitted to an MA(1): theta / (1 + theta^2).
double pseudo_true_rho_ma1(double theta);

/// argmin_b sum_t w_t(u) (Y_t - x_t'b)^2 with raw kernel weights.
/// Throws DegenerateInput when the weighted Gram matrix is singular.
Eigen::VectorXd local_least_squares(const Series& response, const Eigen::MatrixXd& regressors, double u,
                                    const KernelSpec& kernel);

/// Kernel-weighted mean of log(max(y_t^2, floor)), floor = 1e-12 * sample
/// variance. Returns log tau*(u).
double local_loglevel_estimate(const Series& series, double u, const KernelSpec& kernel);

/// A positive function tabulated on a strictly increasing grid.
struct TauGrid {
    std::vector<double> u;
    std::vector<double> tau;

    /// Trapezoid rule on the grid, extended by constants to 0 and 1.
    double integral() const;
    /// Linear interpolation, constant outside the grid.
    double at(double v) const;
};

/// Divides by integral(); throws InvalidArgument on non-positive values.
TauGrid normalize_tau(const TauGrid& tau_star);

}  // namespace lsii

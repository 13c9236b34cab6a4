#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lsii/auxiliary.hpp"
#include "lsii/kernel.hpp"
#include "lsii/series.hpp"

namespace lsii {

/// Multiplicative GJR-GARCH(1,1) auxiliary parameters. Naming follows
///   sigma2_{t+1} = omega + alpha sigma2_t + beta e_t^2 + gamma e_t^2 I(e_t < 0),
/// with e_t = y_t / sqrt(tau); alpha multiplies the lagged variance and
/// beta the lagged squared return.
struct RhoGjr {
    double tau = 1.0;
    double omega = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    double persistence() const noexcept { return alpha + beta + 0.5 * gamma; }
    /// omega / (1 - alpha - beta - gamma/2).
    double unconditional_variance() const noexcept { return omega / (1.0 - persistence()); }
    /// omega > 0, alpha >= 0, beta >= 0, beta + gamma >= 0, persistence < 1.
    bool admissible() const noexcept;
    /// Same dynamics with omega = 1 - alpha - beta - gamma/2.
    RhoGjr restricted() const noexcept;
};

/// Gaussian quasi-log-likelihood -1/2 sum(log s2_t + y_t^2 / s2_t) of the
/// GJR recursion with tau = 1 and s2_1 = sample variance of y.
double gjr_log_likelihood(std::span<const double> y, const RhoGjr& rho);

struct GjrQmleOptions {
    bool restricted = false;
    std::optional<RhoGjr> init;
    /// When false only `init` is used as a start (it must be set).
    bool fixed_starts = true;
    double tolerance = 1e-8;
    int max_iterations = 4000;
};

struct GjrFit {
    RhoGjr rho;
    double log_likelihood = 0.0;
    bool converged = false;
};

/// The three fixed multi-start points, scaled to the sample variance.
std::vector<RhoGjr> gjr_start_points(std::span<const double> y, bool restricted);

/// Quasi-maximum likelihood fit (tau fixed at 1). Throws ConvergenceFailure
/// carrying the best point when no start converges, InvalidArgument for T < 50.
GjrFit gjr_qmle(std::span<const double> y, const GjrQmleOptions& options = {});
inline GjrFit gjr_qmle(const Series& y, const GjrQmleOptions& options = {}) { return gjr_qmle(y.values(), options); }

/// Output of the two-pass multiplicative fit on observed data.
struct MultiplicativeFit {
    TauGrid tau_hat;    ///< final long-run component on the fit grid
    TauGrid tau_check;  ///< normalized intermediate estimate, integral 1
    RhoGjr first_pass;  ///< unrestricted fit on y / sqrt(tau_check)
    RhoGjr params;      ///< final fit on y / sqrt(tau_hat); tau field is 1
    double log_likelihood = 0.0;

    /// Auxiliary vector at u: (tau_hat(u), omega, alpha, beta, gamma).
    RhoGjr at(double u) const;
};

/// Log-level local fit, normalization, unrestricted QMLE, rescaling of the
/// long-run level by the implied unconditional variance, and a refit.
MultiplicativeFit multiplicative_gjr_fit(const Series& series, const KernelSpec& kernel,
                                         const std::vector<double>& grid);

/// Fit on a stationary simulated path: unrestricted QMLE, tau = implied
/// unconditional variance, refit on the path divided by sqrt(tau).
RhoGjr simulated_gjr_fit(std::span<const double> y);
inline RhoGjr simulated_gjr_fit(const Series& y) { return simulated_gjr_fit(y.values()); }

}  // namespace lsii

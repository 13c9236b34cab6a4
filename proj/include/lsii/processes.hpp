#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsii/auxiliary.hpp"
#include "lsii/gjr.hpp"
#include "lsii/noise.hpp"
#include "lsii/param_path.hpp"
#include "lsii/series.hpp"

namespace lsii {

inline constexpr std::size_t kDefaultBurnin = 500;

/// Locally stationary MA(1): Y_t = e_t + e_{t-1} theta(t/T).
struct LsMaParams {
    ParamPath theta;
    double trim = kTrim;

    /// Throws InvalidArgument unless sup |theta| <= 1 - trim.
    void validate() const;
};

/// Multiplicative stochastic volatility:
///   Y_t = sqrt(xi(t/T)) exp(h_t / 2) nu1_t,  h_{t+1} = mu + phi h_t + nu2_t,
///   (nu1, nu2) ~ N(0, [[1, gamma_nu sigma], [gamma_nu sigma, sigma^2]]).
struct LsSvParams {
    ParamPath xi = ParamPath::constant(1.0);
    double mu = 0.0;
    double phi = 0.0;
    double sigma = 1.0;
    double gamma_nu = 0.0;

    void validate() const;
};

/// Structural SV parameters at a fixed rescaled time (mu = 0).
struct SvPoint {
    double xi = 1.0;
    double phi = 0.0;
    double gamma_nu = 0.0;
    double sigma = 1.0;
};

/// Raw draws behind one SV path: the stationary start of h and one
/// (nu1, eta) pair per step, burn-in included.
struct SvShocks {
    double h0 = 0.0;
    std::vector<double> nu1;
    std::vector<double> eta;
};

SvShocks draw_sv_shocks(NoiseKey key, std::size_t steps);

/// nu2 = sigma (gamma_nu nu1 + sqrt(1 - gamma_nu^2) eta).
std::vector<double> leverage_shocks(const SvShocks& shocks, double sigma, double gamma_nu);

Series simulate_ls_ma1(const LsMaParams& params, std::size_t T, NoiseKey key);
/// Throws OutOfBounds when |theta| > 1 - trim.
Series simulate_stationary_ma1(double theta, std::size_t T, NoiseKey key, double trim = kTrim);
/// Writes the stationary MA(1) built from eps[0..n] (eps[0] presample) into out[0..n-1].
void stationary_ma1_into(double theta, std::span<const double> eps, std::span<double> out);

Series simulate_ls_sv(const LsSvParams& params, std::size_t T, NoiseKey key,
                      std::size_t burnin = kDefaultBurnin);
Series simulate_stationary_sv(const SvPoint& theta, std::size_t T, NoiseKey key,
                              std::size_t burnin = kDefaultBurnin);
/// Stationary SV path from pre-drawn shocks (length burnin + out.size()).
void stationary_sv_into(const SvPoint& theta, const SvShocks& shocks, std::size_t burnin, std::span<double> out);

/// Stationary GJR-GARCH path scaled by sqrt(rho.tau); the variance starts at
/// its unconditional level. Throws InvalidArgument when not admissible.
Series simulate_gjr_garch(const RhoGjr& rho, std::size_t T, NoiseKey key, std::size_t burnin = kDefaultBurnin);
/// Same recursion with a time-varying long-run level tau(t/T) in place of rho.tau.
Series simulate_gjr_garch(const RhoGjr& rho, const ParamPath& tau, std::size_t T, NoiseKey key,
                          std::size_t burnin = kDefaultBurnin);

/// max |Y_{t,T} - y_{u,t}| over |t/T - u| <= half_width, both paths driven by
/// the same noise. half_width <= 0 selects 1/sqrt(T).
double approximation_gap(const LsMaParams& params, double u, std::size_t T, NoiseKey key,
                         double half_width = 0.0);
double approximation_gap(const LsSvParams& params, double u, std::size_t T, NoiseKey key,
                         double half_width = 0.0, std::size_t burnin = kDefaultBurnin);

}  // namespace lsii

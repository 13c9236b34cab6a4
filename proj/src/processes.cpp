#include "lsii/processes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lsii/errors.hpp"

namespace lsii {

void LsMaParams::validate() const {
    if (!(trim > 0.0 && trim < 1.0)) throw InvalidArgument("LsMaParams: trim must lie in (0, 1)");
    const double sup = theta.sup_abs();
    if (!(sup <= 1.0 - trim)) {
        throw InvalidArgument("LsMaParams: sup |theta(u)| = " + std::to_string(sup) + " exceeds 1 - trim");
    }
}

void LsSvParams::validate() const {
    if (!(xi.inf() > 0.0)) throw InvalidArgument("LsSvParams: xi(u) must be positive");
    if (!(std::abs(phi) < 1.0)) throw InvalidArgument("LsSvParams: |phi| must be < 1 for a stationary start");
    if (!(sigma >= 0.0)) throw InvalidArgument("LsSvParams: sigma must be non-negative");
    if (!(std::abs(gamma_nu) <= 1.0)) throw InvalidArgument("LsSvParams: |gamma_nu| must be <= 1");
    if (!std::isfinite(mu)) throw InvalidArgument("LsSvParams: mu must be finite");
}

namespace {

void require_length(std::size_t T, std::size_t minimum, const char* who) {
    if (T < minimum) throw InvalidArgument(std::string(who) + ": T must be >= " + std::to_string(minimum));
}

void validate_sv_point(const SvPoint& p) {
    LsSvParams params;
    params.xi = ParamPath::constant(p.xi);
    params.phi = p.phi;
    params.sigma = p.sigma;
    params.gamma_nu = p.gamma_nu;
    params.validate();
}

// Runs the SV recursion on pre-drawn shocks; scale(t) supplies sqrt(xi(t/T))
// for output index t in [0, T).
template <typename Scale>
void sv_recursion(double mu, double phi, double sigma, double gamma_nu, const SvShocks& shocks, std::size_t burnin,
                  std::span<double> out, Scale&& scale) {
    const double mean_h = mu / (1.0 - phi);
    const double sd_h = sigma / std::sqrt(1.0 - phi * phi);
    const double loading = std::sqrt(std::max(0.0, 1.0 - gamma_nu * gamma_nu));
    double h = mean_h + sd_h * shocks.h0;
    const std::size_t steps = burnin + out.size();
    for (std::size_t s = 0; s < steps; ++s) {
        const double nu1 = shocks.nu1[s];
        if (s >= burnin) {
            const std::size_t t = s - burnin;
            out[t] = scale(t) * std::exp(0.5 * h) * nu1;
        }
        const double nu2 = sigma * (gamma_nu * nu1 + loading * shocks.eta[s]);
        h = mu + phi * h + nu2;
    }
}

template <typename Tau>
Series gjr_path(const RhoGjr& rho, std::size_t T, NoiseKey key, std::size_t burnin, Tau&& sqrt_tau) {
    if (!rho.admissible()) {
        throw InvalidArgument("simulate_gjr_garch: parameters violate positivity or stationarity");
    }
    NoiseStream noise(key);
    std::vector<double> out(T);
    double s2 = rho.unconditional_variance();
    for (std::size_t s = 0; s < burnin + T; ++s) {
        const double e = std::sqrt(s2) * noise.next();
        if (s >= burnin) out[s - burnin] = sqrt_tau(s - burnin) * e;
        const double e2 = e * e;
        s2 = rho.omega + rho.alpha * s2 + rho.beta * e2 + (e < 0.0 ? rho.gamma * e2 : 0.0);
    }
    return Series(std::move(out));
}

double window_half_width(double half_width, std::size_t T) {
    return half_width > 0.0 ? half_width : 1.0 / std::sqrt(static_cast<double>(T));
}

}  // namespace

SvShocks draw_sv_shocks(NoiseKey key, std::size_t steps) {
    NoiseStream noise(key);
    SvShocks shocks;
    shocks.h0 = noise.next();
    shocks.nu1.resize(steps);
    shocks.eta.resize(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        shocks.nu1[s] = noise.next();
        shocks.eta[s] = noise.next();
    }
    return shocks;
}

std::vector<double> leverage_shocks(const SvShocks& shocks, double sigma, double gamma_nu) {
    const double loading = std::sqrt(std::max(0.0, 1.0 - gamma_nu * gamma_nu));
    std::vector<double> nu2(shocks.nu1.size());
    for (std::size_t s = 0; s < nu2.size(); ++s) nu2[s] = sigma * (gamma_nu * shocks.nu1[s] + loading * shocks.eta[s]);
    return nu2;
}

Series simulate_ls_ma1(const LsMaParams& params, std::size_t T, NoiseKey key) {
    require_length(T, 2, "simulate_ls_ma1");
    params.validate();
    const auto eps = NoiseStream(key).draw(T + 1);
    std::vector<double> out(T);
    const double n = static_cast<double>(T);
    for (std::size_t t = 1; t <= T; ++t) out[t - 1] = eps[t] + eps[t - 1] * params.theta(static_cast<double>(t) / n);
    return Series(std::move(out));
}

void stationary_ma1_into(double theta, std::span<const double> eps, std::span<double> out) {
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = eps[t + 1] + eps[t] * theta;
}

Series simulate_stationary_ma1(double theta, std::size_t T, NoiseKey key, double trim) {
    require_length(T, 2, "simulate_stationary_ma1");
    if (!(std::abs(theta) <= 1.0 - trim)) {
        throw OutOfBounds("simulate_stationary_ma1: |theta| exceeds 1 - trim");
    }
    const auto eps = NoiseStream(key).draw(T + 1);
    std::vector<double> out(T);
    stationary_ma1_into(theta, eps, out);
    return Series(std::move(out));
}

Series simulate_ls_sv(const LsSvParams& params, std::size_t T, NoiseKey key, std::size_t burnin) {
    require_length(T, 1, "simulate_ls_sv");
    params.validate();
    const auto shocks = draw_sv_shocks(key, burnin + T);
    std::vector<double> out(T);
    const double n = static_cast<double>(T);
    sv_recursion(params.mu, params.phi, params.sigma, params.gamma_nu, shocks, burnin, out,
                 [&](std::size_t t) { return std::sqrt(params.xi(static_cast<double>(t + 1) / n)); });
    return Series(std::move(out));
}

void stationary_sv_into(const SvPoint& theta, const SvShocks& shocks, std::size_t burnin, std::span<double> out) {
    const double scale = std::sqrt(theta.xi);
    sv_recursion(0.0, theta.phi, theta.sigma, theta.gamma_nu, shocks, burnin, out, [scale](std::size_t) { return scale; });
}

Series simulate_stationary_sv(const SvPoint& theta, std::size_t T, NoiseKey key, std::size_t burnin) {
    require_length(T, 1, "simulate_stationary_sv");
    validate_sv_point(theta);
    const auto shocks = draw_sv_shocks(key, burnin + T);
    std::vector<double> out(T);
    stationary_sv_into(theta, shocks, burnin, out);
    return Series(std::move(out));
}

Series simulate_gjr_garch(const RhoGjr& rho, std::size_t T, NoiseKey key, std::size_t burnin) {
    require_length(T, 1, "simulate_gjr_garch");
    if (!(rho.tau > 0.0)) throw InvalidArgument("simulate_gjr_garch: tau must be positive");
    const double scale = std::sqrt(rho.tau);
    return gjr_path(rho, T, key, burnin, [scale](std::size_t) { return scale; });
}

Series simulate_gjr_garch(const RhoGjr& rho, const ParamPath& tau, std::size_t T, NoiseKey key, std::size_t burnin) {
    require_length(T, 1, "simulate_gjr_garch");
    if (!(tau.inf() > 0.0)) throw InvalidArgument("simulate_gjr_garch: tau(u) must be positive");
    const double n = static_cast<double>(T);
    return gjr_path(rho, T, key, burnin,
                    [&](std::size_t t) { return std::sqrt(tau(static_cast<double>(t + 1) / n)); });
}

double approximation_gap(const LsMaParams& params, double u, std::size_t T, NoiseKey key, double half_width) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("approximation_gap: u must lie in (0, 1)");
    const auto Y = simulate_ls_ma1(params, T, key);
    const double theta_u = params.theta(u);
    const auto eps = NoiseStream(key).draw(T + 1);
    const double width = window_half_width(half_width, T);
    const double n = static_cast<double>(T);
    double gap = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        if (std::abs(static_cast<double>(t) / n - u) > width) continue;
        const double y_u = eps[t] + eps[t - 1] * theta_u;
        gap = std::max(gap, std::abs(Y[t - 1] - y_u));
    }
    return gap;
}

double approximation_gap(const LsSvParams& params, double u, std::size_t T, NoiseKey key, double half_width,
                         std::size_t burnin) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("approximation_gap: u must lie in (0, 1)");
    const auto Y = simulate_ls_sv(params, T, key, burnin);
    LsSvParams frozen = params;
    frozen.xi = ParamPath::constant(params.xi(u));
    const auto y_u = simulate_ls_sv(frozen, T, key, burnin);
    const double width = window_half_width(half_width, T);
    const double n = static_cast<double>(T);
    double gap = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        if (std::abs(static_cast<double>(t) / n - u) > width) continue;
        gap = std::max(gap, std::abs(Y[t - 1] - y_u[t - 1]));
    }
    return gap;
}

}  // namespace lsii

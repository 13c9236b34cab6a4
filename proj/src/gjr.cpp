#include "lsii/gjr.hpp"

#include <algorithm>
#include <cmath>

#include "lsii/errors.hpp"
#include "lsii/optim.hpp"

namespace lsii {

namespace {

// Persistence alpha + beta + gamma/2 is mapped into (0, kMaxPersistence).
constexpr double kMaxPersistence = 0.999;
constexpr std::size_t kMinLength = 50;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) {
    p = std::clamp(p, 1e-9, 1.0 - 1e-9);
    return std::log(p / (1.0 - p));
}

// Unconstrained coordinates -> admissible parameters. The split
//   alpha = s a, beta + gamma/2 = s (1 - a), gamma = 2 (beta + gamma/2) g,
// keeps alpha >= 0, beta >= 0 and beta + gamma >= 0 for every a in (0,1), g in (-1,1).
RhoGjr decode(std::span<const double> x, bool restricted, double omega_scale) {
    const std::size_t o = restricted ? 0 : 1;
    const double s = kMaxPersistence * logistic(x[o]);
    const double a = logistic(x[o + 1]);
    const double g = std::tanh(x[o + 2]);
    RhoGjr rho;
    rho.tau = 1.0;
    rho.alpha = s * a;
    const double r = s * (1.0 - a);
    rho.beta = r * (1.0 - g);
    rho.gamma = 2.0 * r * g;
    rho.omega = restricted ? 1.0 - s : omega_scale * std::exp(x[0]);
    return rho;
}

std::vector<double> encode(const RhoGjr& rho, bool restricted, double omega_scale) {
    const double s = std::max(rho.persistence(), 1e-9);
    const double r = rho.beta + 0.5 * rho.gamma;
    const double g = r > 0.0 ? std::clamp(rho.gamma / (2.0 * r), -1.0 + 1e-9, 1.0 - 1e-9) : 0.0;
    std::vector<double> x;
    if (!restricted) x.push_back(std::log(std::max(rho.omega, 1e-300) / omega_scale));
    x.push_back(logit(s / kMaxPersistence));
    x.push_back(logit(rho.alpha / s));
    x.push_back(std::atanh(g));
    return x;
}

}  // namespace

bool RhoGjr::admissible() const noexcept {
    return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && beta + gamma >= 0.0 && persistence() < 1.0 &&
           std::isfinite(omega) && std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma);
}

RhoGjr RhoGjr::restricted() const noexcept {
    RhoGjr out = *this;
    out.omega = 1.0 - persistence();
    return out;
}

double gjr_log_likelihood(std::span<const double> y, const RhoGjr& rho) {
    double s2 = sample_variance(y);
    double acc = 0.0;
    for (const double v : y) {
        if (!(s2 > 0.0) || !std::isfinite(s2)) return -HUGE_VAL;
        const double v2 = v * v;
        acc += std::log(s2) + v2 / s2;
        s2 = rho.omega + rho.alpha * s2 + rho.beta * v2 + (v < 0.0 ? rho.gamma * v2 : 0.0);
    }
    return -0.5 * acc;
}

std::vector<RhoGjr> gjr_start_points(std::span<const double> y, bool restricted) {
    const double var = std::max(sample_variance(y), 1e-300);
    std::vector<RhoGjr> starts;
    for (auto [a, b, g] : {std::tuple{0.80, 0.10, 0.05}, std::tuple{0.50, 0.20, 0.10}, std::tuple{0.05, 0.05, 0.0}}) {
        RhoGjr rho;
        rho.alpha = a;
        rho.beta = b;
        rho.gamma = g;
        rho.omega = (restricted ? 1.0 : var) * (1.0 - rho.persistence());
        starts.push_back(rho);
    }
    return starts;
}

GjrFit gjr_qmle(std::span<const double> y, const GjrQmleOptions& options) {
    if (y.size() < kMinLength) throw InvalidArgument("gjr_qmle: need at least 50 observations");
    const double var = sample_variance(y);
    if (!(var > 0.0)) throw DegenerateInput("gjr_qmle: series has zero variance");
    const bool restricted = options.restricted;
    const double omega_scale = var;

    std::vector<RhoGjr> starts;
    if (options.fixed_starts) starts = gjr_start_points(y, restricted);
    if (options.init && options.init->admissible()) {
        starts.push_back(restricted ? options.init->restricted() : *options.init);
    }
    if (starts.empty()) throw InvalidArgument("gjr_qmle: no admissible start point");

    auto objective = [&](std::span<const double> x) {
        const double ll = gjr_log_likelihood(y, decode(x, restricted, omega_scale));
        return std::isfinite(ll) ? -ll : HUGE_VAL;
    };
    SimplexOptions nm;
    nm.tolerance = options.tolerance;
    nm.max_iterations = options.max_iterations;

    std::vector<GjrFit> fits;
    bool any_converged = false;
    double top = -HUGE_VAL;
    for (const auto& start : starts) {
        const auto res = nelder_mead(objective, encode(start, restricted, omega_scale), nm);
        any_converged = any_converged || res.converged;
        fits.push_back({decode(res.x, restricted, omega_scale), -res.value, res.converged});
        top = std::max(top, -res.value);
    }
    // Ties in the likelihood (alpha is not identified when beta = gamma = 0)
    // go to the least persistent point.
    const double tie = 1e-7 * (1.0 + std::abs(top));
    GjrFit best;
    best.log_likelihood = -HUGE_VAL;
    for (const auto& f : fits) {
        if (!(f.log_likelihood >= top - tie)) continue;
        if (best.log_likelihood == -HUGE_VAL || f.rho.persistence() < best.rho.persistence()) best = f;
    }
    if (best.log_likelihood == -HUGE_VAL && !fits.empty()) best = fits.front();
    if (!any_converged) {
        const auto& r = best.rho;
        throw ConvergenceFailure("gjr_qmle: no start converged", {r.omega, r.alpha, r.beta, r.gamma},
                                 best.log_likelihood);
    }
    best.converged = true;
    return best;
}

RhoGjr MultiplicativeFit::at(double u) const {
    RhoGjr out = params;
    out.tau = tau_hat.at(u);
    return out;
}

MultiplicativeFit multiplicative_gjr_fit(const Series& series, const KernelSpec& kernel,
                                         const std::vector<double>& grid) {
    if (grid.empty()) throw InvalidArgument("multiplicative_gjr_fit: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw InvalidArgument("multiplicative_gjr_fit: grid must be strictly increasing inside (0, 1)");
        }
    }
    const std::size_t T = series.size();
    const double n = static_cast<double>(T);

    TauGrid tau_star;
    tau_star.u = grid;
    for (const double u : grid) tau_star.tau.push_back(std::exp(local_loglevel_estimate(series, u, kernel)));

    MultiplicativeFit fit;
    fit.tau_check = normalize_tau(tau_star);

    std::vector<double> scaled(T);
    for (std::size_t t = 0; t < T; ++t) scaled[t] = series[t] / std::sqrt(fit.tau_check.at(static_cast<double>(t + 1) / n));
    const auto first = gjr_qmle(scaled);
    fit.first_pass = first.rho;

    const double level = first.rho.unconditional_variance();
    fit.tau_hat = fit.tau_check;
    for (double& v : fit.tau_hat.tau) v *= level;

    for (std::size_t t = 0; t < T; ++t) scaled[t] = series[t] / std::sqrt(fit.tau_hat.at(static_cast<double>(t + 1) / n));
    GjrQmleOptions refit;
    RhoGjr init = first.rho;
    init.omega /= level;
    refit.init = init;
    const auto second = gjr_qmle(scaled, refit);
    fit.params = second.rho;
    fit.params.tau = 1.0;
    fit.log_likelihood = second.log_likelihood;
    return fit;
}

RhoGjr simulated_gjr_fit(std::span<const double> y) {
    const auto first = gjr_qmle(y);
    const double level = first.rho.unconditional_variance();
    if (!(level > 0.0) || !std::isfinite(level)) {
        throw ConvergenceFailure("simulated_gjr_fit: implied unconditional variance is not finite", {}, 0.0);
    }
    std::vector<double> scaled(y.begin(), y.end());
    const double inv = 1.0 / std::sqrt(level);
    for (double& v : scaled) v *= inv;
    GjrQmleOptions refit;
    RhoGjr init = first.rho;
    init.omega /= level;
    refit.init = init;
    auto out = gjr_qmle(scaled, refit).rho;
    out.tau = level;
    return out;
}

}  // namespace lsii

#include "lsii/lii.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>

#include "lsii/auxiliary.hpp"
#include "lsii/errors.hpp"
#include "lsii/noise.hpp"
#include "lsii/parallel.hpp"

namespace lsii {

ModelKind parse_model_kind(const std::string& name) {
    if (name == "ls_ma1") return ModelKind::ls_ma1;
    if (name == "ls_sv") return ModelKind::ls_sv;
    if (name == "ar1_identity" || name == "ar1-identity") return ModelKind::ar1_identity;
    throw InvalidArgument("unknown model '" + name + "'");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::ls_ma1: return "ls_ma1";
    case ModelKind::ls_sv: return "ls_sv";
    case ModelKind::ar1_identity: return "ar1_identity";
    }
    return "unknown";
}

std::vector<std::string> theta_names(ModelKind kind) {
    if (kind == ModelKind::ls_sv) return {"xi", "phi", "gamma_nu", "sigma"};
    return {"theta"};
}

std::vector<std::string> rho_names(ModelKind kind) {
    if (kind == ModelKind::ls_sv) return {"tau", "omega", "alpha", "beta", "gamma"};
    return {"rho"};
}

std::vector<Bounds> default_bounds(ModelKind kind) {
    const Bounds unit{-1.0 + kTrim, 1.0 - kTrim};
    if (kind == ModelKind::ls_sv) return {{1e-6, 1e6}, unit, unit, {0.05, 3.0}};
    return {unit};
}

WeightMatrix::WeightMatrix(std::vector<double> diagonal) : diagonal_(std::move(diagonal)) {
    if (diagonal_.empty()) throw InvalidArgument("WeightMatrix: empty diagonal");
    for (double w : diagonal_) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("WeightMatrix: entries must be positive");
    }
}

double WeightMatrix::norm_squared(std::span<const double> x) const {
    if (x.size() != diagonal_.size()) throw InvalidArgument("WeightMatrix: dimension mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += diagonal_[k] * x[k] * x[k];
    return acc;
}

void LiiConfig::validate() const {
    if (grid.empty()) throw InvalidArgument("LiiConfig: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw InvalidArgument("LiiConfig: grid values must lie in (0, 1)");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidArgument("LiiConfig: grid must be strictly increasing");
    }
    if (H == 0) throw InvalidArgument("LiiConfig: H must be >= 1");
    if (restarts < 1) throw InvalidArgument("LiiConfig: restarts must be >= 1");
    if (coarse_points < 3) throw InvalidArgument("LiiConfig: coarse_points must be >= 3");
    if (!(tolerance > 0.0)) throw InvalidArgument("LiiConfig: tolerance must be positive");
}

double match_distance(const RhoVector& rho_obs, const RhoVector& rho_sim, const WeightMatrix& omega) {
    if (rho_obs.values.size() != rho_sim.values.size() || omega.dim() != rho_obs.values.size()) {
        throw InvalidArgument("match_distance: dimension mismatch");
    }
    std::vector<double> diff(rho_obs.values.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = rho_obs.values[k] - rho_sim.values[k];
    return omega.norm_squared(diff);
}

namespace {

std::vector<double> default_tau_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 180; ++i) g.push_back(0.05 + 0.005 * i);
    g.back() = 0.95;
    return g;
}

std::vector<Bounds> effective_bounds(ModelKind kind, const LiiConfig& config) {
    auto b = config.bounds.empty() ? default_bounds(kind) : config.bounds;
    if (b.size() != theta_names(kind).size()) throw InvalidArgument("LiiConfig: bounds do not match the model");
    for (const auto& bb : b) {
        if (!(bb.upper > bb.lower)) throw InvalidArgument("LiiConfig: empty parameter box");
    }
    return b;
}

WeightMatrix effective_omega(ModelKind kind, const LiiConfig& config) {
    const std::size_t d = rho_names(kind).size();
    if (!config.omega) return WeightMatrix::identity(d);
    if (config.omega->dim() != d) throw InvalidArgument("LiiConfig: omega dimension does not match the model");
    return *config.omega;
}

RhoVector from_gjr(const RhoGjr& r) { return RhoVector{{r.tau, r.omega, r.alpha, r.beta, r.gamma}}; }

struct BitsLess {
    bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](double x, double y) {
            std::uint64_t bx, by;
            std::memcpy(&bx, &x, sizeof x);
            std::memcpy(&by, &y, sizeof y);
            return bx < by;
        });
    }
};

// Common-random-number binding: all shocks are drawn once per (seed,
// replication, j) so theta -> binding is a fixed function. Results are
// memoized on the exact bit pattern of theta; the memo is shared by grid
// points and never changes a value, only avoids recomputing it.
class BindingEngine {
public:
    BindingEngine(ModelKind kind, const LiiConfig& config, std::size_t sim_length)
        : kind_(kind), length_(sim_length), burnin_(config.burnin) {
        if (sim_length < 3) throw InvalidArgument("simulated binding: simulation length must be >= 3");
        if (kind_ == ModelKind::ar1_identity) return;
        for (std::size_t j = 1; j <= config.H; ++j) {
            const NoiseKey key{config.seed, config.replication, j};
            if (kind_ == ModelKind::ls_ma1) {
                eps_.push_back(NoiseStream(key).draw(length_ + 1));
            } else {
                sv_.push_back(draw_sv_shocks(key, burnin_ + length_));
            }
        }
    }

    /// Throws ConvergenceFailure when an auxiliary fit on a simulated path fails.
    RhoVector operator()(const ThetaPoint& theta) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(theta.values); it != memo_.end()) {
                if (!it->second) throw ConvergenceFailure("simulated binding: auxiliary fit failed", theta.values, HUGE_VAL);
                return *it->second;
            }
        }
        std::optional<RhoVector> value;
        try {
            value = compute(theta);
        } catch (const ConvergenceFailure&) {
        } catch (const DegenerateInput&) {
        }
        {
            std::lock_guard lock(mutex_);
            memo_.emplace(theta.values, value);
        }
        if (!value) throw ConvergenceFailure("simulated binding: auxiliary fit failed", theta.values, HUGE_VAL);
        return *value;
    }

private:
    RhoVector compute(const ThetaPoint& theta) const {
        switch (kind_) {
        case ModelKind::ar1_identity: {
            // A correctly specified auxiliary model binds each parameter to itself.
            const double bound = 1.0 - kTrim;
            return RhoVector{{std::clamp(theta.values.at(0), -bound, bound)}};
        }
        case ModelKind::ls_ma1: {
            std::vector<double> path(length_);
            double acc = 0.0;
            for (const auto& eps : eps_) {
                stationary_ma1_into(theta.values.at(0), eps, path);
                acc += global_ar1_estimate(std::span<const double>(path)).rho;
            }
            return RhoVector{{acc / static_cast<double>(eps_.size())}};
        }
        case ModelKind::ls_sv: {
            const SvPoint point{theta.values.at(0), theta.values.at(1), theta.values.at(2), theta.values.at(3)};
            std::vector<double> path(length_);
            std::vector<double> acc(5, 0.0);
            for (const auto& shocks : sv_) {
                stationary_sv_into(point, shocks, burnin_, path);
                const auto fit = from_gjr(simulated_gjr_fit(std::span<const double>(path)));
                for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += fit.values[k];
            }
            for (double& v : acc) v /= static_cast<double>(sv_.size());
            return RhoVector{std::move(acc)};
        }
        }
        throw InvalidArgument("simulated binding: unknown model");
    }

    ModelKind kind_;
    std::size_t length_;
    std::size_t burnin_;
    std::vector<std::vector<double>> eps_;
    std::vector<SvShocks> sv_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<double>, std::optional<RhoVector>, BitsLess> memo_;
};

void check_theta(ModelKind kind, const ThetaPoint& theta, const LiiConfig& config) {
    const auto bounds = effective_bounds(kind, config);
    if (theta.values.size() != bounds.size()) throw InvalidArgument("theta has the wrong dimension for the model");
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        if (!bounds[k].contains(theta.values[k])) throw OutOfBounds("theta component outside its bounds");
    }
}

// Observed side, shared by all grid points of one series.
class ObservedSide {
public:
    ObservedSide(const Series& series, ModelKind kind, const KernelSpec& kernel, const LiiConfig& config)
        : series_(series), kind_(kind), kernel_(kernel) {
        if (kind_ == ModelKind::ls_sv) {
            const auto grid = config.tau_grid.empty() ? default_tau_grid() : config.tau_grid;
            try {
                fit_ = multiplicative_gjr_fit(series, kernel, grid);
            } catch (const Error& e) {
                failure_ = e.what();
            }
        }
    }

    /// Returns the auxiliary vector and whether a clamp bound.
    std::pair<RhoVector, bool> at(double u) const {
        if (kind_ == ModelKind::ls_sv) {
            if (!fit_) throw DegenerateInput("observed auxiliary fit failed: " + failure_);
            return {from_gjr(fit_->at(u)), false};
        }
        const auto r = local_ar1_estimate(series_, u, kernel_);
        return {RhoVector{{r.rho}}, r.clamped};
    }

    const std::optional<MultiplicativeFit>& multiplicative() const noexcept { return fit_; }

private:
    const Series& series_;
    ModelKind kind_;
    KernelSpec kernel_;
    std::optional<MultiplicativeFit> fit_;
    std::string failure_;
};

// Starting points (phi, gamma_nu, sigma) for the SV search.
const std::vector<std::array<double, 3>>& sv_starts() {
    static const std::vector<std::array<double, 3>> starts{
        {0.5, -0.3, 0.8}, {0.2, 0.0, 0.4}, {0.8, -0.6, 1.5}, {-0.3, 0.3, 1.0}, {0.0, 0.0, 2.0}};
    return starts;
}

LiiPoint estimate_scalar(double u, const RhoVector& rho_obs, bool obs_clamped, ModelKind kind,
                         const BindingEngine& binding, const LiiConfig& config) {
    const auto bounds = effective_bounds(kind, config).front();
    const auto omega = effective_omega(kind, config);
    auto objective = [&](double x) {
        try {
            return match_distance(rho_obs, binding(ThetaPoint{{x}}), omega);
        } catch (const ConvergenceFailure&) {
            return HUGE_VAL;
        }
    };
    const auto best = minimize_scalar(objective, bounds, config.coarse_points, config.tolerance, 200);

    LiiPoint point;
    point.u = u;
    point.rho_obs = rho_obs;
    point.theta_hat = ThetaPoint{{best.x}};
    point.objective_value = best.value;
    point.converged = best.converged && std::isfinite(best.value);
    point.clamped = obs_clamped;
    if (point.converged) point.rho_sim_at_opt = binding(point.theta_hat);
    return point;
}

// LS-SV search. The simulated paths scale exactly with sqrt(xi) and the
// auxiliary fit is scale equivariant, so the binding at (xi, rest) is the
// binding at (1, rest) with tau multiplied by xi. xi is therefore solved in
// closed form (the tau residual vanishes unless xi hits its bounds) and the
// simplex runs over (phi, gamma_nu, sigma) only.
LiiPoint estimate_sv(double u, const RhoVector& rho_obs, ModelKind kind, const BindingEngine& binding,
                     const LiiConfig& config) {
    const auto bounds = effective_bounds(kind, config);
    const auto omega = effective_omega(kind, config);
    const double tau_obs = rho_obs.values[0];

    struct Eval {
        double value = HUGE_VAL;
        double xi = 1.0;
        bool xi_clamped = false;
        RhoVector sim;
    };
    auto natural = [&](std::span<const double> z) {
        return std::array<double, 3>{logistic_to_box(z[0], bounds[1]), logistic_to_box(z[1], bounds[2]),
                                     logistic_to_box(z[2], bounds[3])};
    };
    auto evaluate = [&](const std::array<double, 3>& p) {
        Eval e;
        RhoVector unit;
        try {
            unit = binding(ThetaPoint{{1.0, p[0], p[1], p[2]}});
        } catch (const ConvergenceFailure&) {
            return e;
        }
        const double tau_unit = unit.values[0];
        if (!(tau_unit > 0.0) || !std::isfinite(tau_unit)) return e;
        const double raw = tau_obs / tau_unit;
        e.xi = bounds[0].clamp(raw);
        e.xi_clamped = e.xi != raw;
        e.sim = unit;
        e.sim.values[0] = e.xi * tau_unit;
        e.value = match_distance(rho_obs, e.sim, omega);
        return e;
    };

    SimplexOptions nm;
    nm.tolerance = config.tolerance;
    nm.max_iterations = config.max_iterations;
    nm.initial_step = 0.7;

    LiiPoint point;
    point.u = u;
    point.rho_obs = rho_obs;
    double best_value = HUGE_VAL;
    std::array<double, 3> best_p = sv_starts().front();
    bool any_converged = false;
    const auto& starts = sv_starts();
    for (int r = 0; r < config.restarts; ++r) {
        const auto& s = starts[static_cast<std::size_t>(r) % starts.size()];
        std::vector<double> z{box_to_logistic(bounds[1].clamp(s[0]), bounds[1]),
                              box_to_logistic(bounds[2].clamp(s[1]), bounds[2]),
                              box_to_logistic(bounds[3].clamp(s[2]), bounds[3])};
        const auto res = nelder_mead([&](std::span<const double> x) { return evaluate(natural(x)).value; }, z, nm);
        any_converged = any_converged || (res.converged && std::isfinite(res.value));
        if (res.value < best_value) {
            best_value = res.value;
            best_p = natural(res.x);
        }
    }
    const auto best = evaluate(best_p);
    point.theta_hat = ThetaPoint{{best.xi, best_p[0], best_p[1], best_p[2]}};
    point.objective_value = best.value;
    point.converged = any_converged && std::isfinite(best.value);
    point.clamped = best.xi_clamped;
    point.rho_sim_at_opt = best.sim;
    return point;
}

LiiPoint failed_point(double u, ModelKind kind) {
    LiiPoint p;
    p.u = u;
    p.theta_hat.values.assign(theta_names(kind).size(), std::numeric_limits<double>::quiet_NaN());
    p.rho_obs.values.assign(rho_names(kind).size(), std::numeric_limits<double>::quiet_NaN());
    p.objective_value = HUGE_VAL;
    return p;
}

LiiPoint estimate_with(const ObservedSide& observed, double u, ModelKind kind, const BindingEngine& binding,
                       const LiiConfig& config) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("estimate_point: u must lie in (0, 1)");
    std::pair<RhoVector, bool> obs;
    try {
        obs = observed.at(u);
    } catch (const Error&) {
        return failed_point(u, kind);
    }
    if (kind == ModelKind::ls_sv) return estimate_sv(u, obs.first, kind, binding, config);
    return estimate_scalar(u, obs.first, obs.second, kind, binding, config);
}

std::size_t simulation_length(const LiiConfig& config, std::size_t observed) {
    return config.sim_length > 0 ? config.sim_length : observed;
}

}  // namespace

RhoVector simulated_binding(ModelKind kind, const ThetaPoint& theta, double u, const LiiConfig& config) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("simulated_binding: u must lie in (0, 1)");
    if (config.sim_length == 0) throw InvalidArgument("simulated_binding: sim_length must be set");
    if (config.H == 0) throw InvalidArgument("simulated_binding: H must be >= 1");
    check_theta(kind, theta, config);
    return BindingEngine(kind, config, config.sim_length)(theta);
}

double lii_objective(ModelKind kind, const ThetaPoint& theta, const RhoVector& rho_obs, double u,
                     const LiiConfig& config) {
    const auto omega = effective_omega(kind, config);
    if (rho_obs.values.size() != omega.dim()) throw InvalidArgument("lii_objective: rho_obs has the wrong dimension");
    try {
        return match_distance(rho_obs, simulated_binding(kind, theta, u, config), omega);
    } catch (const ConvergenceFailure&) {
        return HUGE_VAL;
    }
}

RhoVector observed_auxiliary(const Series& series, double u, ModelKind kind, const KernelSpec& kernel,
                             const LiiConfig& config) {
    return ObservedSide(series, kind, kernel, config).at(u).first;
}

LiiPoint estimate_point(const Series& series, double u, ModelKind kind, const KernelSpec& kernel,
                        const LiiConfig& config) {
    effective_bounds(kind, config);
    effective_omega(kind, config);
    const ObservedSide observed(series, kind, kernel, config);
    const BindingEngine binding(kind, config, simulation_length(config, series.size()));
    return estimate_with(observed, u, kind, binding, config);
}

LiiFit estimate_path(const Series& series, ModelKind kind, const KernelSpec& kernel, const LiiConfig& config) {
    config.validate();
    effective_bounds(kind, config);
    effective_omega(kind, config);
    const ObservedSide observed(series, kind, kernel, config);
    const BindingEngine binding(kind, config, simulation_length(config, series.size()));

    LiiFit fit;
    fit.model = kind;
    fit.bandwidth = kernel.bandwidth();
    fit.multiplicative = observed.multiplicative();
    fit.points.resize(config.grid.size());
    parallel_for(config.grid.size(), config.threads, [&](std::size_t i) {
        fit.points[i] = estimate_with(observed, config.grid[i], kind, binding, config);
    });
    return fit;
}

}  // namespace lsii

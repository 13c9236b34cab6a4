#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsii/gjr.hpp"
#include "lsii/kernel.hpp"
#include "lsii/optim.hpp"
#include "lsii/processes.hpp"
#include "lsii/series.hpp"

namespace lsii {

enum class ModelKind {
    ls_ma1,        ///< LS-MA(1) with a local AR(1) auxiliary model
    ls_sv,         ///< multiplicative SV with the two-pass GJR-GARCH auxiliary
    ar1_identity,  ///< AR(1) structural = AR(1) auxiliary; identity binding
};

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);
std::vector<std::string> theta_names(ModelKind kind);
std::vector<std::string> rho_names(ModelKind kind);
std::vector<Bounds> default_bounds(ModelKind kind);

struct ThetaPoint {
    std::vector<double> values;
};

struct RhoVector {
    std::vector<double> values;
};

/// Positive diagonal weighting matrix.
class WeightMatrix {
public:
    explicit WeightMatrix(std::vector<double> diagonal);
    static WeightMatrix identity(std::size_t dim) { return WeightMatrix(std::vector<double>(dim, 1.0)); }

    const std::vector<double>& diagonal() const noexcept { return diagonal_; }
    std::size_t dim() const noexcept { return diagonal_.size(); }
    /// x' Omega x.
    double norm_squared(std::span<const double> x) const;

private:
    std::vector<double> diagonal_;
};

struct LiiConfig {
    std::vector<double> grid;
    std::size_t H = 2;
    std::size_t sim_length = 0;  ///< 0: the observed sample size
    std::vector<Bounds> bounds;  ///< empty: default_bounds(model)
    double tolerance = 1e-8;
    int max_iterations = 2000;
    int restarts = 3;
    int coarse_points = 21;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::optional<WeightMatrix> omega;  ///< empty: identity
    std::size_t burnin = kDefaultBurnin;
    int threads = 1;
    /// Grid for the long-run level of the SV auxiliary fit; empty: 181
    /// points from 0.05 to 0.95.
    std::vector<double> tau_grid;

    /// Throws InvalidArgument on an empty or non-increasing grid or H = 0.
    void validate() const;
};

/// Per-grid-point estimation record.
struct LiiPoint {
    double u = 0.0;
    ThetaPoint theta_hat;
    RhoVector rho_obs;
    RhoVector rho_sim_at_opt;
    double objective_value = 0.0;
    bool converged = false;
    bool clamped = false;
};

struct LiiFit {
    ModelKind model = ModelKind::ls_ma1;
    double bandwidth = 0.0;
    std::vector<LiiPoint> points;
    std::optional<MultiplicativeFit> multiplicative;  ///< LS-SV only
};

/// Average over j = 1..H of the auxiliary estimate on stationary paths
/// simulated at theta with noise keys (seed, replication, j). The binding
/// does not depend on u: the same streams serve every grid point.
/// Throws ConvergenceFailure if an auxiliary fit fails.
RhoVector simulated_binding(ModelKind kind, const ThetaPoint& theta, double u, const LiiConfig& config);

/// (rho_obs - rho_sim)' Omega (rho_obs - rho_sim).
double match_distance(const RhoVector& rho_obs, const RhoVector& rho_sim, const WeightMatrix& omega);

/// Match objective at theta; +infinity when the simulated fit fails.
double lii_objective(ModelKind kind, const ThetaPoint& theta, const RhoVector& rho_obs, double u,
                     const LiiConfig& config);

/// Observed-data auxiliary estimate at u.
RhoVector observed_auxiliary(const Series& series, double u, ModelKind kind, const KernelSpec& kernel,
                             const LiiConfig& config);

LiiPoint estimate_point(const Series& series, double u, ModelKind kind, const KernelSpec& kernel,
                        const LiiConfig& config);

/// estimate_point over config.grid with shared simulation streams.
LiiFit estimate_path(const Series& series, ModelKind kind, const KernelSpec& kernel, const LiiConfig& config);

}  // namespace lsii

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsii/errors.hpp"
#include "lsii/kernel.hpp"
#include "lsii/lii.hpp"
#include "lsii/processes.hpp"

namespace lsii {

enum class DesignKind { ls_ma1_a, ls_ma1_b, ls_ma1_c, ls_sv, custom };

DesignKind parse_design_kind(const std::string& name);
std::string to_string(DesignKind kind);

/// {0.05, 0.10, 0.20, ..., 0.90, 0.95}.
std::vector<double> default_grid();

struct McDesign {
    DesignKind kind = DesignKind::ls_ma1_c;
    std::size_t T = 1000;
    std::size_t replications = 200;
    LiiConfig lii;                     ///< grid, H, bounds, seed; replication is set per run
    std::optional<KernelSpec> kernel;  ///< empty: gaussian with the rule-of-thumb bandwidth
    LsMaParams custom;                 ///< truth for DesignKind::custom
    int threads = 1;

    /// Named design with its pinned truth, T = 1000 (MA) or 200 (SV).
    static McDesign named(DesignKind kind, std::size_t replications, std::uint64_t seed);
    void validate() const;
};

ModelKind design_model(DesignKind kind);
/// Truth of the reported component (theta for MA designs, xi for SV).
ParamPath design_truth(const McDesign& design);
/// Structural path of replication r, noise key (seed, r, 0).
Series design_sample(const McDesign& design, std::uint64_t replication);

struct McRow {
    double u = 0.0;
    double truth = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    double bias = 0.0;
    double rmse = 0.0;
};

struct McSummary {
    std::vector<McRow> rows;
    std::size_t replications = 0;
    std::size_t failures = 0;
    /// estimates[r][i] is theta_hat at grid point i in replication r; empty for failures.
    std::vector<std::vector<ThetaPoint>> estimates;
};

class StudyFailure : public Error {
public:
    StudyFailure(const std::string& what, McSummary partial) : Error(what), partial_(std::move(partial)) {}
    const McSummary& partial() const noexcept { return partial_; }

private:
    McSummary partial_;
};

/// Replications run in parallel (design.threads); the summary does not
/// depend on the schedule. Throws StudyFailure when more than 10% fail.
McSummary run_study(const McDesign& design);

/// Column-wise type-7 quantiles: result[k][i] is quantile probs[k] of column i.
std::vector<std::vector<double>> quantile_bands(const std::vector<std::vector<double>>& estimates,
                                                const std::vector<double>& probs);

}  // namespace lsii

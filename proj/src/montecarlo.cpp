#include "lsii/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lsii/parallel.hpp"
#include "lsii/stats.hpp"

namespace lsii {

DesignKind parse_design_kind(const std::string& name) {
    if (name == "ls_ma1_a" || name == "a") return DesignKind::ls_ma1_a;
    if (name == "ls_ma1_b" || name == "b") return DesignKind::ls_ma1_b;
    if (name == "ls_ma1_c" || name == "c") return DesignKind::ls_ma1_c;
    if (name == "ls_sv" || name == "sv") return DesignKind::ls_sv;
    if (name == "custom") return DesignKind::custom;
    throw InvalidArgument("unknown design '" + name + "'");
}

std::string to_string(DesignKind kind) {
    switch (kind) {
    case DesignKind::ls_ma1_a: return "ls_ma1_a";
    case DesignKind::ls_ma1_b: return "ls_ma1_b";
    case DesignKind::ls_ma1_c: return "ls_ma1_c";
    case DesignKind::ls_sv: return "ls_sv";
    case DesignKind::custom: return "custom";
    }
    return "unknown";
}

std::vector<double> default_grid() {
    std::vector<double> g{0.05};
    for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
    g.push_back(0.95);
    return g;
}

McDesign McDesign::named(DesignKind kind, std::size_t replications, std::uint64_t seed) {
    McDesign d;
    d.kind = kind;
    d.T = kind == DesignKind::ls_sv ? 200 : 1000;
    d.replications = replications;
    d.lii.grid = default_grid();
    d.lii.seed = seed;
    if (kind == DesignKind::custom) d.custom.theta = ParamPath::constant(0.5);
    return d;
}

void McDesign::validate() const {
    if (replications < 1) throw InvalidArgument("McDesign: replications must be >= 1");
    if (T < 50) throw InvalidArgument("McDesign: T must be >= 50");
    lii.validate();
    if (kind == DesignKind::custom) custom.validate();
}

ModelKind design_model(DesignKind kind) { return kind == DesignKind::ls_sv ? ModelKind::ls_sv : ModelKind::ls_ma1; }

namespace {

LsSvParams sv_design() {
    LsSvParams p;
    p.xi = ParamPath::from_function([](double u) {
        return 0.2 * std::sin(0.5 * std::numbers::pi * u) + 0.8 * std::cos(0.5 * std::numbers::pi * u);
    });
    p.phi = 0.2;
    p.gamma_nu = -0.5;
    p.sigma = 1.0;
    return p;
}

LsMaParams ma_design(const McDesign& design) {
    switch (design.kind) {
    case DesignKind::ls_ma1_a: return {ParamPath::from_function([](double u) { return 0.5 * u * u; })};
    case DesignKind::ls_ma1_b: return {ParamPath::from_function([](double u) { return 0.25 + u - u * u; })};
    case DesignKind::ls_ma1_c: return {ParamPath::constant(0.5)};
    default: return design.custom;
    }
}

KernelSpec design_kernel(const McDesign& design) {
    return design.kernel ? *design.kernel : KernelSpec(KernelFamily::gaussian, rule_of_thumb_bandwidth(design.T));
}

}  // namespace

ParamPath design_truth(const McDesign& design) {
    if (design.kind == DesignKind::ls_sv) return sv_design().xi;
    return ma_design(design).theta;
}

Series design_sample(const McDesign& design, std::uint64_t replication) {
    const NoiseKey key{design.lii.seed, replication, 0};
    if (design.kind == DesignKind::ls_sv) return simulate_ls_sv(sv_design(), design.T, key);
    return simulate_ls_ma1(ma_design(design), design.T, key);
}

std::vector<std::vector<double>> quantile_bands(const std::vector<std::vector<double>>& estimates,
                                                const std::vector<double>& probs) {
    if (estimates.empty() || estimates.front().empty()) throw InvalidArgument("quantile_bands: empty input");
    const std::size_t n = estimates.front().size();
    for (const auto& row : estimates) {
        if (row.size() != n) throw InvalidArgument("quantile_bands: ragged input");
    }
    std::vector<std::vector<double>> out(probs.size(), std::vector<double>(n));
    std::vector<double> column(estimates.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < estimates.size(); ++r) column[r] = estimates[r][i];
        std::sort(column.begin(), column.end());
        for (std::size_t k = 0; k < probs.size(); ++k) out[k][i] = quantile_sorted(column, probs[k]);
    }
    return out;
}

McSummary run_study(const McDesign& design) {
    design.validate();
    const ModelKind model = design_model(design.kind);
    const KernelSpec kernel = design_kernel(design);
    const ParamPath truth = design_truth(design);
    const auto& grid = design.lii.grid;

    McSummary summary;
    summary.replications = design.replications;
    summary.estimates.resize(design.replications);
    parallel_for(design.replications, design.threads, [&](std::size_t r) {
        LiiConfig config = design.lii;
        config.replication = r;
        config.threads = 1;
        try {
            const auto fit = estimate_path(design_sample(design, r), model, kernel, config);
            std::vector<ThetaPoint> row;
            for (const auto& p : fit.points) {
                if (!p.converged) return;
                for (double v : p.theta_hat.values) {
                    if (!std::isfinite(v)) return;
                }
                row.push_back(p.theta_hat);
            }
            summary.estimates[r] = std::move(row);
        } catch (const Error&) {
        }
    });

    std::vector<std::vector<double>> reported;
    for (const auto& row : summary.estimates) {
        if (row.empty()) {
            ++summary.failures;
            continue;
        }
        std::vector<double> v;
        for (const auto& t : row) v.push_back(t.values.front());
        reported.push_back(std::move(v));
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> q;
    if (!reported.empty()) q = quantile_bands(reported, {0.05, 0.5, 0.95});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        McRow row;
        row.u = grid[i];
        row.truth = truth(grid[i]);
        row.q05 = row.q50 = row.q95 = row.bias = row.rmse = nan;
        if (!reported.empty()) {
            row.q05 = q[0][i];
            row.q50 = q[1][i];
            row.q95 = q[2][i];
            double sum = 0.0, sq = 0.0;
            for (const auto& est : reported) {
                const double e = est[i] - row.truth;
                sum += e;
                sq += e * e;
            }
            const double n = static_cast<double>(reported.size());
            row.bias = sum / n;
            row.rmse = std::sqrt(sq / n);
        }
        summary.rows.push_back(row);
    }
    if (10 * summary.failures > summary.replications) {
        throw StudyFailure("study: " + std::to_string(summary.failures) + " of " +
                               std::to_string(summary.replications) + " replications failed",
                           summary);
    }
    return summary;
}

}  // namespace lsii

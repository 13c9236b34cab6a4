#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lsii/processes.hpp"
#include "lsii/series.hpp"

namespace lsii {

struct ArchTestResult {
    double statistic = 0.0;  ///< T_eff * R^2
    int dof = 0;
    double pvalue = 1.0;
    int lags = 0;
};

/// Engle's LM test: squared centered values regressed on an intercept and
/// `lags` own lags. Throws DegenerateInput when R^2 is undefined.
ArchTestResult arch_lm_test(const Series& series, int lags = 5);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
double chi_square_cdf(double x, double dof);
double chi_square_sf(double x, double dof);
double chi_square_quantile(double p, double dof);

/// E[nu1^2 exp(h)] for jointly normal (nu1, h), Var nu1 = 1,
/// h ~ N(mu/(1-phi), sigma^2/(1-phi^2)), Cov(nu1, h) = gamma_nu sigma_h.
double sv_moment_oracle(double phi, double sigma, double gamma_nu, double mu);

struct GapTable {
    std::vector<std::size_t> T;
    std::vector<double> mean_gap;
    std::vector<double> ratios;  ///< mean_gap[i+1] / mean_gap[i]; NaN when mean_gap[i] == 0
    double mean_ratio = 0.0;
};

GapTable local_stationarity_probe(const LsMaParams& params, const std::vector<std::size_t>& T_list,
                                  const std::vector<std::uint64_t>& seeds, double u = 0.5);
GapTable local_stationarity_probe(const LsSvParams& params, const std::vector<std::size_t>& T_list,
                                  const std::vector<std::uint64_t>& seeds, double u = 0.5);

}  // namespace lsii

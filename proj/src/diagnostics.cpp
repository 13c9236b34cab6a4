#include "lsii/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "lsii/errors.hpp"

namespace lsii {

ArchTestResult arch_lm_test(const Series& series, int lags) {
    if (lags < 1) throw InvalidArgument("arch_lm_test: lags must be >= 1");
    const std::size_t T = series.size();
    const auto p = static_cast<std::size_t>(lags);
    if (T <= p + 10) throw InvalidArgument("arch_lm_test: series too short for the number of lags");

    const double mean = sample_mean(series.values());
    std::vector<double> z(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double c = series[t] - mean;
        z[t] = c * c;
    }
    const std::size_t n = T - p;
    Eigen::MatrixXd X(n, p + 1);
    Eigen::VectorXd y(n);
    for (std::size_t r = 0; r < n; ++r) {
        y(r) = z[r + p];
        X(r, 0) = 1.0;
        for (std::size_t k = 1; k <= p; ++k) X(r, k) = z[r + p - k];
    }
    const double ybar = y.mean();
    const double sst = (y.array() - ybar).square().sum();
    if (!(sst > 1e-14 * std::max(1.0, ybar * ybar) * static_cast<double>(n))) {
        throw DegenerateInput("arch_lm_test: squared series is (near) constant");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-12);
    if (qr.rank() < X.cols()) throw DegenerateInput("arch_lm_test: lag regressors are collinear");
    const Eigen::VectorXd beta = qr.solve(y);
    const double ssr = (y - X * beta).squaredNorm();
    const double r2 = std::clamp(1.0 - ssr / sst, 0.0, 1.0);

    ArchTestResult out;
    out.lags = lags;
    out.dof = lags;
    out.statistic = static_cast<double>(n) * r2;
    out.pvalue = chi_square_sf(out.statistic, lags);
    return out;
}

namespace {

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw InvalidArgument("regularized_gamma_p: a must be positive");
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double chi_square_cdf(double x, double dof) {
    if (!(dof > 0.0)) throw InvalidArgument("chi_square_cdf: dof must be positive");
    return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0)) throw InvalidArgument("chi_square_sf: dof must be positive");
    if (!(x > 0.0)) return 1.0;
    const double a = 0.5 * dof, h = 0.5 * x;
    if (std::isinf(h)) return 0.0;
    if (h < a + 1.0) return 1.0 - gamma_p_series(a, h);
    return gamma_q_fraction(a, h);
}

double chi_square_quantile(double p, double dof) {
    if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("chi_square_quantile: p must lie in [0, 1)");
    if (!(dof > 0.0)) throw InvalidArgument("chi_square_quantile: dof must be positive");
    if (p == 0.0) return 0.0;
    double lo = 0.0, hi = std::max(1.0, dof);
    while (chi_square_cdf(hi, dof) < p) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi_square_cdf(mid, dof) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double sv_moment_oracle(double phi, double sigma, double gamma_nu, double mu) {
    if (!(std::abs(phi) < 1.0)) throw InvalidArgument("sv_moment_oracle: |phi| must be < 1");
    const double var_h = sigma * sigma / (1.0 - phi * phi);
    const double m_h = mu / (1.0 - phi);
    return std::exp(m_h + 0.5 * var_h) * (1.0 + gamma_nu * gamma_nu * var_h);
}

namespace {

template <typename Params>
GapTable probe(const Params& params, const std::vector<std::size_t>& T_list, const std::vector<std::uint64_t>& seeds,
               double u) {
    if (seeds.empty()) throw InvalidArgument("local_stationarity_probe: no seeds");
    for (std::size_t i = 1; i < T_list.size(); ++i) {
        if (!(T_list[i] > T_list[i - 1])) throw InvalidArgument("local_stationarity_probe: T_list must ascend");
    }
    GapTable table;
    for (std::size_t T : T_list) {
        double acc = 0.0;
        for (auto s : seeds) acc += approximation_gap(params, u, T, NoiseKey{s, 0, 0});
        table.T.push_back(T);
        table.mean_gap.push_back(acc / static_cast<double>(seeds.size()));
    }
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < table.mean_gap.size(); ++i) {
        const double r = table.mean_gap[i] == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                  : table.mean_gap[i + 1] / table.mean_gap[i];
        table.ratios.push_back(r);
        if (std::isfinite(r)) {
            sum += r;
            ++count;
        }
    }
    table.mean_ratio = count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
    return table;
}

}  // namespace

GapTable local_stationarity_probe(const LsMaParams& params, const std::vector<std::size_t>& T_list,
                                  const std::vector<std::uint64_t>& seeds, double u) {
    return probe(params, T_list, seeds, u);
}

GapTable local_stationarity_probe(const LsSvParams& params, const std::vector<std::size_t>& T_list,
                                  const std::vector<std::uint64_t>& seeds, double u) {
    return probe(params, T_list, seeds, u);
}

}  // namespace lsii

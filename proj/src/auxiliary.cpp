#include "lsii/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsii/errors.hpp"

namespace lsii {

namespace {

RhoAr1 clamp_rho(double ratio, double trim) {
    const double bound = 1.0 - trim;
    RhoAr1 out;
    out.rho = std::clamp(ratio, -bound, bound);
    out.clamped = out.rho != ratio;
    return out;
}

void require_interior(double u, const char* who) {
    if (!(u > 0.0 && u < 1.0)) throw InvalidArgument(std::string(who) + ": u must lie in (0, 1)");
}

}  // namespace

RhoAr1 local_ar1_estimate(const Series& series, double u, const KernelSpec& kernel, double trim) {
    require_interior(u, "local_ar1_estimate");
    const std::size_t T = series.size();
    if (T < 3) throw InvalidArgument("local_ar1_estimate: T must be >= 3");
    const double n = static_cast<double>(T);
    const double h = kernel.bandwidth();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 2; t <= T; ++t) {
        const double k = kernel_eval(kernel, (u - static_cast<double>(t) / n) / h);
        if (k == 0.0) continue;
        const double lag = series[t - 2];
        num += lag * series[t - 1] * k;
        den += lag * lag * k;
    }
    if (!(den > 0.0)) throw DegenerateInput("local_ar1_estimate: zero weighted denominator");
    return clamp_rho(num / den, trim);
}

RhoAr1 global_ar1_estimate(std::span<const double> y, double trim) {
    if (y.size() < 3) throw InvalidArgument("global_ar1_estimate: T must be >= 3");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        num += y[t - 1] * y[t];
        den += y[t - 1] * y[t - 1];
    }
    if (!(den > 0.0)) throw DegenerateInput("global_ar1_estimate: zero denominator");
    return clamp_rho(num / den, trim);
}

double pseudo_true_rho_ma1(double theta) { return theta / (1.0 + theta * theta); }

Eigen::VectorXd local_least_squares(const Series& response, const Eigen::MatrixXd& regressors, double u,
                                    const KernelSpec& kernel) {
    require_interior(u, "local_least_squares");
    const auto T = static_cast<Eigen::Index>(response.size());
    if (regressors.rows() != T || regressors.cols() < 1) {
        throw InvalidArgument("local_least_squares: regressors must be T x p with p >= 1");
    }
    const auto w = local_weights(kernel, u, response.size(), WeightNormalization::raw).weights;
    const Eigen::Map<const Eigen::VectorXd> weights(w.data(), T);
    const Eigen::Map<const Eigen::VectorXd> y(response.values().data(), T);

    const Eigen::MatrixXd gram = regressors.transpose() * weights.asDiagonal() * regressors;
    const Eigen::VectorXd rhs = regressors.transpose() * weights.cwiseProduct(y);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
    qr.setThreshold(1e-12);
    if (qr.rank() < gram.cols()) throw DegenerateInput("local_least_squares: weighted Gram matrix is singular");
    return qr.solve(rhs);
}

double local_loglevel_estimate(const Series& series, double u, const KernelSpec& kernel) {
    require_interior(u, "local_loglevel_estimate");
    if (series.empty()) throw InvalidArgument("local_loglevel_estimate: empty series");
    const double floor = std::max(1e-12 * sample_variance(series.values()), std::numeric_limits<double>::min());
    const auto w = local_weights(kernel, u, series.size(), WeightNormalization::nadaraya_watson).weights;
    double acc = 0.0;
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (w[t] == 0.0) continue;
        acc += w[t] * std::log(std::max(series[t] * series[t], floor));
    }
    return acc;
}

double TauGrid::integral() const {
    if (u.empty() || u.size() != tau.size()) throw InvalidArgument("TauGrid: grid and values must match");
    double total = tau.front() * u.front() + tau.back() * (1.0 - u.back());
    for (std::size_t i = 1; i < u.size(); ++i) total += 0.5 * (tau[i] + tau[i - 1]) * (u[i] - u[i - 1]);
    return total;
}

double TauGrid::at(double v) const {
    if (v <= u.front()) return tau.front();
    if (v >= u.back()) return tau.back();
    const auto it = std::upper_bound(u.begin(), u.end(), v);
    const auto hi = static_cast<std::size_t>(it - u.begin());
    const std::size_t lo = hi - 1;
    const double w = (v - u[lo]) / (u[hi] - u[lo]);
    return tau[lo] + w * (tau[hi] - tau[lo]);
}

TauGrid normalize_tau(const TauGrid& tau_star) {
    if (tau_star.u.empty() || tau_star.u.size() != tau_star.tau.size()) {
        throw InvalidArgument("normalize_tau: grid and values must be non-empty and match");
    }
    for (std::size_t i = 0; i < tau_star.tau.size(); ++i) {
        if (!(tau_star.tau[i] > 0.0)) throw InvalidArgument("normalize_tau: values must be positive");
        if (i > 0 && !(tau_star.u[i] > tau_star.u[i - 1])) {
            throw InvalidArgument("normalize_tau: grid must be strictly increasing");
        }
    }
    TauGrid out = tau_star;
    const double total = tau_star.integral();
    for (double& v : out.tau) v /= total;
    return out;
}

}  // namespace lsii

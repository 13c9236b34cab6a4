#include "lsii/kernel.hpp"

#include <cmath>
#include <numbers>

#include "lsii/errors.hpp"

namespace lsii {

KernelFamily parse_kernel_family(const std::string& name) {
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "epanechnikov") return KernelFamily::epanechnikov;
    throw InvalidArgument("unknown kernel family '" + name + "'");
}

std::string to_string(KernelFamily family) {
    return family == KernelFamily::gaussian ? "gaussian" : "epanechnikov";
}

KernelSpec::KernelSpec(KernelFamily family, double bandwidth) : family_(family), bandwidth_(bandwidth) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw InvalidArgument("kernel bandwidth must be positive and finite");
    }
}

double kernel_eval(KernelFamily family, double x) {
    switch (family) {
    case KernelFamily::gaussian:
        return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
    case KernelFamily::epanechnikov:
        return std::abs(x) <= 1.0 ? 0.75 * (1.0 - x * x) : 0.0;
    }
    return 0.0;
}

double rule_of_thumb_bandwidth(std::size_t T) {
    if (T == 0) throw InvalidArgument("rule_of_thumb_bandwidth: T must be >= 1");
    return 1.06 * std::pow(static_cast<double>(T), -0.2);
}

WeightVector local_weights(const KernelSpec& spec, double u, std::size_t T, WeightNormalization normalization) {
    if (T == 0) throw InvalidArgument("local_weights: T must be >= 1");
    WeightVector out;
    out.center = u;
    out.normalization = normalization;
    out.weights.resize(T);
    const double n = static_cast<double>(T);
    const double h = spec.bandwidth();
    const double scale = 1.0 / (n * h);
    double total = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        const double w = kernel_eval(spec.family(), (u - static_cast<double>(t) / n) / h) * scale;
        out.weights[t - 1] = w;
        total += w;
    }
    if (normalization == WeightNormalization::nadaraya_watson) {
        if (!(total > 0.0)) throw DegenerateInput("local_weights: no observation has positive weight");
        for (double& w : out.weights) w /= total;
    }
    return out;
}

}  // namespace lsii

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lsii {

enum class KernelFamily { gaussian, epanechnikov };

KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily family);

/// Kernel family plus a bandwidth in rescaled-time units.
class KernelSpec {
public:
    /// Throws InvalidArgument unless bandwidth > 0 and finite.
    KernelSpec(KernelFamily family, double bandwidth);

    KernelFamily family() const noexcept { return family_; }
    double bandwidth() const noexcept { return bandwidth_; }

private:
    KernelFamily family_;
    double bandwidth_;
};

enum class WeightNormalization {
    raw,              ///< w_t = K((u - t/T)/h) / (T h)
    nadaraya_watson,  ///< raw weights divided by their sum
};

struct WeightVector {
    std::vector<double> weights;  ///< weights[t-1] belongs to observation t
    double center = 0.5;
    WeightNormalization normalization = WeightNormalization::raw;
};

/// Second-order kernel K(x); symmetric, non-negative and bounded.
double kernel_eval(KernelFamily family, double x);
inline double kernel_eval(const KernelSpec& spec, double x) { return kernel_eval(spec.family(), x); }

/// h = 1.06 T^(-1/5).
double rule_of_thumb_bandwidth(std::size_t T);

/// Local weights around rescaled time u in (0,1) for a sample of length T.
WeightVector local_weights(const KernelSpec& spec, double u, std::size_t T,
                           WeightNormalization normalization = WeightNormalization::raw);

}  // namespace lsii

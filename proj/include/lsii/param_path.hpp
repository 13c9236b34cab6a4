#pragma once

#include <functional>
#include <vector>

namespace lsii {

/// A deterministic function of rescaled time u in [0,1]: either a closed
/// form or a grid with linear interpolation (constant beyond the ends).
class ParamPath {
public:
    ParamPath() : ParamPath(constant(0.0)) {}

    static ParamPath constant(double value);
    static ParamPath from_function(std::function<double(double)> f);
    /// Grid must be strictly increasing and match values in length.
    static ParamPath from_grid(std::vector<double> grid, std::vector<double> values);

    double operator()(double u) const { return f_(u); }
    bool is_constant() const noexcept { return constant_; }

    /// max |f(u)| over a 1001-point sample of [0,1] (grid nodes for grid paths).
    double sup_abs() const;
    /// min f(u) over the same sample.
    double inf() const;

private:
    explicit ParamPath(std::function<double(double)> f, bool constant, std::vector<double> nodes);

    std::function<double(double)> f_;
    bool constant_ = false;
    std::vector<double> nodes_;
};

/// Piecewise-linear interpolation on a strictly increasing grid, constant
/// extrapolation outside [grid.front(), grid.back()].
double interpolate_linear(const std::vector<double>& grid, const std::vector<double>& values, double u);

}  // namespace lsii

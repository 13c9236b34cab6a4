#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lsii {

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double x) const noexcept { return x >= lower && x <= upper; }
    double clamp(double x) const noexcept { return x < lower ? lower : (x > upper ? upper : x); }
};

/// Smooth bijection R -> (lower, upper) and its inverse.
double logistic_to_box(double z, const Bounds& b);
double box_to_logistic(double x, const Bounds& b);

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/// Evaluates f on `coarse_points` equispaced points of [lower, upper], then
/// refines by golden section between the neighbours of the best point. The
/// returned value never exceeds any coarse-scan value.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, const Bounds& bounds,
                              int coarse_points = 21, double tolerance = 1e-8, int max_iterations = 200);

struct SimplexOptions {
    double tolerance = 1e-8;    ///< simplex size (max coordinate distance to the best vertex)
    double f_tolerance = 1e-12; ///< relative spread of vertex values
    int max_iterations = 2000;
    double initial_step = 0.5;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

/// Nelder-Mead on an unconstrained space. f may return +infinity to mark
/// infeasible points.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          const SimplexOptions& options = {});

}  // namespace lsii

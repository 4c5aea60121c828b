#ifndef SHADOWLAB_REPARAM_HPP
#define SHADOWLAB_REPARAM_HPP

#include <utility>
#include <vector>

#include "shadowlab/errors.hpp"

namespace shadowlab {

/// Discretized orientation-preserving time change: a piecewise-linear map
/// through strictly increasing breakpoints containing (0, 0). Evaluation
/// extrapolates linearly with the end slopes.
class Reparametrization {
public:
    explicit Reparametrization(std::vector<std::pair<double, double>> breakpoints);

    double operator()(double t) const;
    const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }

    /// h(t) = t on [lo, hi].
    static Reparametrization identity(double lo, double hi);
    /// h(t) = slope * t on [lo, hi].
    static Reparametrization linear(double slope, double lo, double hi);

    bool valid() const;

private:
    std::vector<std::pair<double, double>> points_;
};

}  // namespace shadowlab

#endif

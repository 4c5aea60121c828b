#ifndef SHADOWLAB_SYSTEM_HPP
#define SHADOWLAB_SYSTEM_HPP

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "shadowlab/chart.hpp"
#include "shadowlab/rng.hpp"

namespace shadowlab {

/// A C^1 vector field on a flat chart. `field` and `jacobian` act on raw
/// chart coordinates; fields on periodic axes must be periodic functions so
/// that integration can run in unwrapped coordinates. `kind` identifies the
/// catalog family (stable under display renames), `name` is free-form.
struct SmoothSystem {
    std::string name;
    std::string kind;
    int dimension = 0;
    Chart chart = Chart::euclidean(2);
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> field;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;

    Eigen::VectorXd eval(const PhasePoint& x) const { return field(x.coords); }
    Eigen::MatrixXd jac(const PhasePoint& x) const { return jacobian(x.coords); }

    /// The reversed field -X; backward time everywhere is integration of this.
    SmoothSystem reversed() const {
        SmoothSystem r = *this;
        r.name = name + "(-)";
        auto f = field;
        auto j = jacobian;
        r.field = [f](const Eigen::VectorXd& x) { return (-f(x)).eval(); };
        r.jacobian = [j](const Eigen::VectorXd& x) { return (-j(x)).eval(); };
        return r;
    }
};

/// Worst relative mismatch between `jacobian` and a central finite difference
/// of `field` over `trials` random points in [lo, hi]^n. Used as the build-time
/// consistency gate (tolerance 1e-5 at the call sites).
double jacobian_consistency_error(const SmoothSystem& sys, const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi, int trials, std::uint64_t seed);

/// Trace of the Jacobian at x.
double divergence(const SmoothSystem& sys, const PhasePoint& x);

}  // namespace shadowlab

#endif

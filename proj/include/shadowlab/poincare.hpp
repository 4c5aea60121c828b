#ifndef SHADOWLAB_POINCARE_HPP
#define SHADOWLAB_POINCARE_HPP

#include <optional>

#include "shadowlab/integrate.hpp"

namespace shadowlab {

/// First same-direction return to the hyperplane through `base` with normal
/// `normal` (unit), starting from `from` and searched up to `max_time`.
struct SectionReturn {
    PhasePoint point;
    double time;
};
std::optional<SectionReturn> poincare_return(const SmoothSystem& sys, const PhasePoint& base,
                                             const Eigen::VectorXd& normal,
                                             const PhasePoint& from, double max_time,
                                             const StepControl& ctrl = {});

struct PeriodicSearchParams {
    double max_period = 30.0;
    int newton_iterations = 25;
    double residual_tol = 1e-8;
    double min_period = 0.05;
};

struct PeriodicOrbitFind {
    PhasePoint base;
    double period;
    double residual;  // section displacement norm of the closed return
};

/// Newton iteration on the Poincare return map seeded at `seed`. The section
/// is the hyperplane normal to the field at the current iterate. Returns
/// nothing when no return exists within max_period or Newton stalls.
std::optional<PeriodicOrbitFind> find_periodic_orbit(const SmoothSystem& sys,
                                                     const PhasePoint& seed,
                                                     const PeriodicSearchParams& params = {},
                                                     const StepControl& ctrl = {});

struct SingularitySearchParams {
    int newton_iterations = 50;
    double residual_tol = 1e-9;
};

/// Damped Newton on X(x) = 0 from the seed. Returns nothing on stall.
std::optional<PhasePoint> find_singularity(const SmoothSystem& sys, const PhasePoint& seed,
                                           const SingularitySearchParams& params = {});

}  // namespace shadowlab

#endif

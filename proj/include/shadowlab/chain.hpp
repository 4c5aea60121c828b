#ifndef SHADOWLAB_CHAIN_HPP
#define SHADOWLAB_CHAIN_HPP

#include "shadowlab/poincare.hpp"
#include "shadowlab/transition_graph.hpp"

namespace shadowlab {

/// Exact Hausdorff distance between finite point sets under the chart metric.
double hausdorff_distance(const Chart& chart, const std::vector<Eigen::VectorXd>& A,
                          const std::vector<Eigen::VectorXd>& B);

struct PeriodicApproxParams {
    int seeds = 8;
    PeriodicSearchParams search{};
    int orbit_samples = 256;  // orbit discretization for the Hausdorff report
};

struct PeriodicApprox {
    std::optional<Trajectory> orbit;  // one period, when found
    double period = 0.0;
    double dH = std::numeric_limits<double>::infinity();
    std::string diagnostics;
};

/// Locates a periodic orbit inside a chain-transitive node region of the
/// transition graph (Poincare-section Newton seeded from region box centers)
/// and reports the Hausdorff distance between the orbit samples and the
/// region's box centers. Non-convergence returns no orbit, not an error.
PeriodicApprox approximate_by_periodic_orbit(const SmoothSystem& sys, const TransitionGraph& tg,
                                             const std::vector<int>& region,
                                             const PeriodicApproxParams& params = {},
                                             const StepControl& ctrl = {});

}  // namespace shadowlab

#endif

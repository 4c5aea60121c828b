#ifndef SHADOWLAB_MANIFOLD_HPP
#define SHADOWLAB_MANIFOLD_HPP

#include "shadowlab/critical.hpp"

namespace shadowlab {

enum class ManifoldSide { stable, unstable };

/// Sampled local invariant manifold disk. Every stored sample has been
/// re-verified against the defining inequality d(X_t(y), O) < eps over the
/// construction horizon (t >= 0 for the stable side, t <= 0 for the unstable
/// side).
struct ManifoldDisk {
    CriticalOrbit orbit;
    ManifoldSide side = ManifoldSide::stable;
    double eps = 0.0;
    double horizon = 0.0;
    std::vector<PhasePoint> samples;
};

struct ManifoldParams {
    int samples = 64;
    double seed_radius = 1e-5;  // offset along the linear eigenspace
    double grow_time_cap = 60.0;
    std::uint64_t seed = 1;     // direction sampling for disks of dimension >= 2
};

/// Grows the local disk by flowing eigenspace seeds in the side's natural
/// direction (backward for stable, forward for unstable, both of which are
/// self-correcting toward the true manifold) and trims to the eps ball.
/// Throws ErrorKind::domain_error for non-hyperbolic orbits and an empty-disk
/// error when the side has no directions or every sample fails verification.
ManifoldDisk local_manifold(const SmoothSystem& sys, const CriticalOrbit& orbit,
                            ManifoldSide side, double eps, const ManifoldParams& params = {},
                            double horizon = 20.0, const StepControl& ctrl = {});

struct IntersectionParams {
    double propagate_time = 12.0;  // saturation span for each disk
    int time_samples = 400;        // cloud resolution along each propagated piece
    int refine_iterations = 40;
    std::size_t max_points = 64;
};

/// Reported intersection points of a stable and an unstable disk: the global
/// manifolds are saturated by the flow (stable backward, unstable forward),
/// close sample pairs are refined by bisection along the sample curves, and
/// the surviving midpoints within tol are returned. An empty result is
/// resolution-qualified, not a proof of emptiness.
std::vector<PhasePoint> detect_intersection(const SmoothSystem& sys, const ManifoldDisk& a,
                                            const ManifoldDisk& b, double tol,
                                            const IntersectionParams& params = {},
                                            const StepControl& ctrl = {});

struct PerturbationFamily {
    int count = 5;
    double magnitude = 1e-3;      // C^0 size of each bump
    double support_radius = 0.25; // bump support
    std::uint64_t seed = 1;
};

struct HomogeneityCheck {
    bool homogeneous = false;
    std::map<int, int> observed;  // index histogram of hyperbolic critical orbits
    int members_checked = 0;
};

/// Sampled strong homogeneity: perturbs the field by compactly supported
/// bumps, reruns the critical-orbit search on [lo, hi], and checks that every
/// hyperbolic critical orbit found across the family has index k (periodic
/// orbits and singularities both count). A sampled check, never a proof.
HomogeneityCheck sampled_strong_homogeneity(const SmoothSystem& sys,
                                            const PerturbationFamily& family,
                                            const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                            int k, CriticalSearchParams& search,
                                            const StepControl& ctrl = {});

/// One bump-perturbed member of the family (exposed for tests).
SmoothSystem bump_perturbed(const SmoothSystem& sys, const Eigen::VectorXd& center,
                            const Eigen::VectorXd& direction, double magnitude, double radius);

}  // namespace shadowlab

#endif

#ifndef SHADOWLAB_CRITICAL_HPP
#define SHADOWLAB_CRITICAL_HPP

#include <complex>
#include <map>

#include "shadowlab/poincare.hpp"

namespace shadowlab {

/// A singularity or periodic orbit with its linearization data. For periodic
/// orbits the linearization is the monodromy DX_T over one period and the
/// multiplier nearest 1 is the flow direction, excluded from index counts.
struct CriticalOrbit {
    enum class Kind { singularity, periodic };
    Kind kind = Kind::singularity;
    PhasePoint base;
    double period = 0.0;
    Eigen::MatrixXd linearization;
    std::vector<std::complex<double>> multipliers;
    int flow_multiplier = -1;  // index into multipliers for periodic orbits
    bool hyperbolic = false;
    int index = 0;
    double hyperbolicity_margin = 1e-6;
};

/// Classify a (numerically exact) singularity from the Jacobian spectrum.
CriticalOrbit classify_singularity(const SmoothSystem& sys, const PhasePoint& at);

/// Classify a periodic orbit from its monodromy (variational flow over one
/// period).
CriticalOrbit classify_periodic(const SmoothSystem& sys, const PhasePoint& base, double period,
                                const StepControl& ctrl = {});

struct CriticalSearchParams {
    int grid_per_axis = 5;
    bool singularities = true;
    bool periodic = true;
    PeriodicSearchParams periodic_search{};
    SingularitySearchParams singularity_search{};
    double merge_distance = 1e-4;
    int diagnostics_dropped = 0;  // filled on return
};

/// Damped-Newton sweeps from a seed grid over [lo, hi]: X(x) = 0 roots and
/// Poincare-return fixed points, deduplicated by orbit distance. Seeds that
/// fail to converge are dropped and counted, never an error.
std::vector<CriticalOrbit> find_critical_orbits(const SmoothSystem& sys,
                                                const Eigen::VectorXd& lo,
                                                const Eigen::VectorXd& hi,
                                                CriticalSearchParams& params,
                                                const StepControl& ctrl = {});

/// Morse index: contracting directions, flow direction excluded for periodic
/// orbits. Throws ErrorKind::domain_error (naming the offending multiplier)
/// when the orbit is not hyperbolic.
int morse_index(const CriticalOrbit& orbit);

struct IndexConstancy {
    bool constant = false;
    std::map<int, int> indices;  // index -> count
};

/// Index constancy across hyperbolic periodic orbits. Throws
/// ErrorKind::insufficient_data on an empty list and
/// ErrorKind::domain_error when a non-hyperbolic or non-periodic entry is
/// included.
IndexConstancy check_index_constancy(const std::vector<CriticalOrbit>& orbits);

}  // namespace shadowlab

#endif

#ifndef SHADOWLAB_ALIGN_HPP
#define SHADOWLAB_ALIGN_HPP

#include <vector>

#include "shadowlab/pseudo_orbit.hpp"
#include "shadowlab/reparam.hpp"

namespace shadowlab {

/// A curve t -> point stitched from trajectory pieces. Covers both candidate
/// orbits (one or two sweeps from a point, or checkpointed segments with
/// logged re-injection defects) and the pseudo-orbit's segment concatenation.
class OrbitCurve {
public:
    /// Orbit of x over [u_min, u_max] (single forward/backward sweeps).
    static OrbitCurve from_point(const SmoothSystem& sys, const PhasePoint& x, double u_min,
                                 double u_max, const StepControl& ctrl = {});

    /// Piecewise orbit through checkpoints (t_i, z_i), t_i strictly
    /// increasing; piece i integrates z_i over [t_i, t_{i+1}], the last piece
    /// extends by `tail`. Defects d(X(z_i), z_{i+1}) are recorded.
    static OrbitCurve from_checkpoints(const SmoothSystem& sys,
                                       const std::vector<std::pair<double, PhasePoint>>& pts,
                                       double tail, const StepControl& ctrl = {});

    /// The pseudo-orbit reference curve: t in [s_i, s_{i+1}) follows
    /// X_{t-s_i}(x_i).
    static OrbitCurve reference(const SmoothSystem& sys, const PseudoOrbit& po,
                                const StepControl& ctrl = {});

    PhasePoint at(double t) const;
    double t_min() const { return starts_.front(); }
    double t_max() const;
    double max_defect() const { return max_defect_; }
    const Chart& chart() const { return pieces_.front().chart(); }
    std::size_t piece_count() const { return pieces_.size(); }

private:
    std::vector<double> starts_;  // global start time of each piece
    std::vector<Trajectory> pieces_;
    double max_defect_ = 0.0;
};

struct AlignmentGrid {
    int nodes_per_segment = 6;      // subintervals per pseudo-orbit segment, >= 4
    double orbit_span_factor = 1.0;  // orbit-axis time budget, relative to the window
};

/// One direction of the alignment lattice: node times for the pseudo-orbit
/// axis and the orbit axis, the minimax cost, and the chosen monotone path.
struct AlignmentHalf {
    std::vector<double> po_times;     // grid on the reference curve
    std::vector<double> orbit_times;  // grid on the candidate curve
    std::vector<std::pair<int, int>> path;  // (po node, orbit node), start to end
    double cost = 0.0;
    bool present = false;
};

struct AlignmentResult {
    Reparametrization h;
    double cost = 0.0;  // max of the two halves
    AlignmentHalf forward, backward;
};

/// Monotone lattice alignment between the orbit of x (or a prebuilt candidate
/// curve) and the pseudo-orbit's segment concatenation. Minimizes the sup of
/// node distances over monotone paths from the window start to its end, with
/// h(0) = 0 enforced by anchoring both half-lattices at the origin. Ties are
/// broken preferring the diagonal move, then the orbit-time advance.
AlignmentResult align_detailed(const SmoothSystem& sys, const PseudoOrbit& po,
                               const OrbitCurve& candidate, const AlignmentGrid& grid);
AlignmentResult align_detailed(const SmoothSystem& sys, const PseudoOrbit& po,
                               const PhasePoint& x, const AlignmentGrid& grid,
                               const StepControl& ctrl = {});
Reparametrization align(const SmoothSystem& sys, const PseudoOrbit& po, const PhasePoint& x,
                        const AlignmentGrid& grid, const StepControl& ctrl = {});

/// Minimax cost over monotone paths through a precomputed node-cost table,
/// with the same tie-break as align. Exposed so independent oracles can drive
/// the exact comparison; `path` receives the tie-broken optimum.
double minimax_lattice_cost(const Eigen::MatrixXd& node_cost,
                            std::vector<std::pair<int, int>>* path = nullptr);

}  // namespace shadowlab

#endif

#ifndef SHADOWLAB_SHADOW_HPP
#define SHADOWLAB_SHADOW_HPP

#include "shadowlab/align.hpp"

namespace shadowlab {

/// Outcome of a shadowing-quality evaluation. `per_segment` holds the segment
/// sups (kind sup) or segment integrals (other kinds), indexed from
/// `first_index`; `value` re-aggregates from it exactly.
struct ShadowReport {
    enum class Kind { sup, average, limit_tail, asymptotic_average };
    Kind kind = Kind::sup;
    double value = 0.0;
    std::vector<double> tail;  // limit_tail: outer-quarter integrals (ascending index)
    Reparametrization reparam = Reparametrization::identity(-1.0, 1.0);
    std::vector<double> per_segment;
    int first_index = 0;
    double orbit_defect = 0.0;  // worst checkpoint re-injection gap of the candidate
};

struct StatisticGrid {
    int samples_per_segment = 6;  // sample density; midpoints are added on top
};

/// sup_t d(X_{h(t)}(x), X_{t-s_i}(x_i)) over the window, sampled at the grid
/// nodes plus midpoints.
double sup_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const PhasePoint& x,
                     const Reparametrization& h, const StatisticGrid& grid = {},
                     const StepControl& ctrl = {});
double sup_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const OrbitCurve& cand,
                     const Reparametrization& h, const StatisticGrid& grid = {},
                     const StepControl& ctrl = {});

/// Finite limsup surrogate of the averaged segment integrals: max over the
/// last quarter of window sizes n of (1/n) sum_{i=1}^{n} I_i, integrals by
/// composite Simpson on the sample grid.
double average_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const PhasePoint& x,
                         const Reparametrization& h, const StatisticGrid& grid = {},
                         const StepControl& ctrl = {});
double average_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const OrbitCurve& cand,
                         const Reparametrization& h, const StatisticGrid& grid = {},
                         const StepControl& ctrl = {});

/// Outer-quarter tails of segment integrals in both time directions; a pass
/// verdict compares them against a decreasing schedule (fitted to the inner
/// window by default) and requires both directions to obey it.
struct LimitTail {
    std::vector<std::pair<int, double>> forward;   // (segment index, integral), i > 0
    std::vector<std::pair<int, double>> backward;  // i < 0 side, when present
    bool pass(const std::optional<TailSchedule>& schedule = std::nullopt) const;
    TailSchedule fitted;  // schedule fitted to the inner segments
    /// Largest direction-wise lower bound: max over directions of the minimum
    /// tail integral. A positive value certifies the limit condition fails.
    double obstruction() const;
    double max_tail() const;
};
LimitTail limit_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const PhasePoint& x,
                          const Reparametrization& h, const StatisticGrid& grid = {},
                          const StepControl& ctrl = {});
LimitTail limit_statistic(const SmoothSystem& sys, const PseudoOrbit& po, const OrbitCurve& cand,
                          const Reparametrization& h, const StatisticGrid& grid = {},
                          const StepControl& ctrl = {});

/// Symmetric Cesaro averages of segment integrals, forward with h and
/// backward with the (independent) negative half of h. The verdict requires
/// the final-quarter averages below tol with non-positive trend.
struct AsymptoticAverages {
    std::vector<double> forward;   // (1/n) sum_{i=0}^{n} I_i, n = 1..
    std::vector<double> backward;  // mirrored with negative-side segments
    bool pass(double tol) const;
};
AsymptoticAverages asymptotic_statistic(const SmoothSystem& sys, const PseudoOrbit& po,
                                        const PhasePoint& x, const Reparametrization& h,
                                        const StatisticGrid& grid = {},
                                        const StepControl& ctrl = {});
AsymptoticAverages asymptotic_statistic(const SmoothSystem& sys, const PseudoOrbit& po,
                                        const OrbitCurve& cand, const Reparametrization& h,
                                        const StatisticGrid& grid = {},
                                        const StepControl& ctrl = {});

/// Candidate orbit found by the shadowing search: the point at window time 0
/// plus the checkpointed curve realizing its orbit numerically.
struct ShadowSearchResult {
    PhasePoint x;
    OrbitCurve curve;
    ShadowReport report;  // sup-kind report for the best candidate
    double best_defect = 0.0;
    int iterations_used = 0;
};

struct ShadowSearchParams {
    int candidate_seeds = 3;
    int refine = 6;             // Gauss-Newton sweeps over the checkpoint sequence
    std::uint64_t seed = 1;
    AlignmentGrid grid{};
    double defect_goal = 1e-11;
};

/// Searches for an orbit shadowing the pseudo-orbit: candidates seed the
/// window-0 point in a ball of radius 5x(max gap); each candidate's full
/// checkpoint sequence is refined by damped Gauss-Newton on the re-injection
/// defects (multiple shooting), which is the coordinate descent that remains
/// well-posed on long hyperbolic windows. Returns the candidate with the
/// smallest sup statistic. Deterministic per seed.
ShadowSearchResult search_shadowing_orbit(const SmoothSystem& sys, const PseudoOrbit& po,
                                          const ShadowSearchParams& params = {},
                                          const StepControl& ctrl = {});

/// One multiple-shooting refinement pass exposed for reuse: updates the
/// checkpoints in place, returns the max defect after the sweep.
double refine_checkpoints(const SmoothSystem& sys, std::vector<PhasePoint>& points,
                          const std::vector<double>& durations, int iterations,
                          double defect_goal, const StepControl& ctrl = {});

}  // namespace shadowlab

#endif

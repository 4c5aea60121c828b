#ifndef SHADOWLAB_PSEUDO_ORBIT_HPP
#define SHADOWLAB_PSEUDO_ORBIT_HPP

#include <optional>
#include <vector>

#include "shadowlab/integrate.hpp"

namespace shadowlab {

/// One (point, duration) entry of a pseudo-orbit. Durations are real; the
/// plain class requires them positive, the average/limit/asymptotic classes
/// require them >= 1 (the source convention of positive integer durations is
/// the special case of integer values).
struct TimedPoint {
    PhasePoint point;
    double duration;
};

enum class OrbitClass { plain, average, limit, asymptotic };

/// Finite window of a bi-infinite pseudo-orbit, indexed i in [i_min, i_max]
/// with i_min <= 0 <= i_max. Cumulative times s_i are recomputed exactly from
/// the durations.
class PseudoOrbit {
public:
    PseudoOrbit(std::vector<TimedPoint> entries, int zero_offset,
                OrbitClass tag = OrbitClass::plain);

    int i_min() const { return -zero_offset_; }
    int i_max() const { return static_cast<int>(entries_.size()) - 1 - zero_offset_; }
    std::size_t size() const { return entries_.size(); }
    OrbitClass class_tag() const { return tag_; }

    const TimedPoint& entry(int i) const { return entries_[index(i)]; }
    const std::vector<TimedPoint>& entries() const { return entries_; }
    int zero_offset() const { return zero_offset_; }

    /// s_i: s_0 = 0, s_n = sum of durations 0..n-1, s_{-n} = -sum(-n..-1).
    /// Valid for i in [i_min, i_max + 1].
    double cumulative_time(int i) const;

    /// Time-shift the index origin by k (entry i of the result is entry i+k
    /// of *this).
    PseudoOrbit shifted(int k) const;

private:
    std::size_t index(int i) const;
    std::vector<TimedPoint> entries_;
    int zero_offset_;
    OrbitClass tag_;
};

/// Integration gaps g_i = d(X_{t_i}(x_i), x_{i+1}) for i in [i_min, i_max-1].
class GapProfile {
public:
    GapProfile(std::vector<double> gaps, int zero_offset);

    int i_min() const { return -zero_offset_; }
    int i_max() const { return static_cast<int>(gaps_.size()) - 1 - zero_offset_; }
    std::size_t size() const { return gaps_.size(); }
    double gap(int i) const { return gaps_[static_cast<std::size_t>(i + zero_offset_)]; }
    const std::vector<double>& gaps() const { return gaps_; }
    int zero_offset() const { return zero_offset_; }
    double max_gap() const;
    /// Mean of the length-n gap run starting at index k.
    double cesaro_average(int k, int n) const;
    /// sup of gaps with |i| >= from_abs_i.
    double tail_supremum(int from_abs_i) const;

private:
    std::vector<double> gaps_;
    int zero_offset_;
};

GapProfile gap_profile(const SmoothSystem& sys, const PseudoOrbit& po,
                       const StepControl& ctrl = {});

/// Strict uniform bound: every gap < delta.
bool is_delta_pseudo(const GapProfile& profile, double delta);

struct AverageCheck {
    bool ok = false;
    std::optional<int> N;  // smallest N with all length->=N window means < delta
};

/// Finite-window version of the average-pseudo-orbit condition: the mean of
/// every contiguous gap run of length n is < delta for all n >= N, over all
/// in-window offsets. ok requires N <= (gap count)/2. Throws
/// ErrorKind::insufficient_data below 4 entries.
AverageCheck is_average_pseudo(const GapProfile& profile, double delta);

/// Decreasing tail bound epsilon(|i|) = max(C / (1 + |i|)^power, floor).
struct TailSchedule {
    double C = 1.0;
    double power = 1.0;
    double floor = 1e-9;
    double bound(int abs_i) const;
    /// Fit C to the inner quarter of the profile (|i| below the tail start).
    static TailSchedule fit(const GapProfile& profile);
};

/// Tail surrogate of lim_{|i|->inf} g_i = 0: every gap with |i| >= extent/4
/// obeys the schedule. Uses the fitted default schedule when none is given.
bool is_limit_pseudo(const GapProfile& profile,
                     const std::optional<TailSchedule>& schedule = std::nullopt);

/// Symmetric Cesaro surrogate of the asymptotic average condition: the
/// averages (1/n) sum_{i=-n..n} g_i over the largest quarter of available n
/// fall below tol with non-positive least-squares trend. Throws
/// ErrorKind::insufficient_data for asymmetric windows.
bool is_asymptotic_average_pseudo(const GapProfile& profile, double tol);

/// Noisy forward window: x_{i+1} = X_{t_i}(x_i) + eta_i with |eta_i| < delta
/// uniform in the ball. Deterministic per seed. Optional bounds raise
/// ErrorKind::escape (with the segment index) when a generated point exits.
PseudoOrbit generate_noisy(const SmoothSystem& sys, const PhasePoint& x0, int segments,
                           double delta, const std::vector<double>& durations,
                           std::uint64_t seed,
                           const std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>>&
                               bounds = std::nullopt,
                           const StepControl& ctrl = {});
PseudoOrbit generate_noisy(const SmoothSystem& sys, const PhasePoint& x0, int segments,
                           double delta, double duration, std::uint64_t seed,
                           const std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>>&
                               bounds = std::nullopt,
                           const StepControl& ctrl = {});

/// Concatenation through critical points: backward orbit samples of p (unit
/// durations), then the chain (which must start at p and end at q within
/// declared_delta; junction error otherwise), then forward orbit samples of q.
/// Only the chain's own gaps and the junctions contribute nonzero gaps.
PseudoOrbit concat_through(const SmoothSystem& sys, const PhasePoint& p,
                           const PseudoOrbit& chain, const PhasePoint& q, int back_len,
                           int fwd_len, double declared_delta,
                           OrbitClass tag = OrbitClass::plain,
                           const StepControl& ctrl = {});

/// Empty-chain variant: backward orbit of p glued directly to the forward
/// orbit of q; the single junction gap is d(p, q). This is the
/// attractor-crossing construction.
PseudoOrbit concat_through(const SmoothSystem& sys, const PhasePoint& p,
                           const PhasePoint& q, int back_len, int fwd_len,
                           OrbitClass tag = OrbitClass::limit,
                           const StepControl& ctrl = {});

}  // namespace shadowlab

#endif

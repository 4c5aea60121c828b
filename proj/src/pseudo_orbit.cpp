#include "shadowlab/pseudo_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shadowlab {

PseudoOrbit::PseudoOrbit(std::vector<TimedPoint> entries, int zero_offset, OrbitClass tag)
    : entries_(std::move(entries)), zero_offset_(zero_offset), tag_(tag) {
    if (entries_.empty())
        throw Error(ErrorKind::insufficient_data, "pseudo-orbit window must be nonempty");
    if (zero_offset_ < 0 || zero_offset_ >= static_cast<int>(entries_.size()))
        throw Error(ErrorKind::domain_error, "pseudo-orbit window must contain index 0");
    const double min_duration = tag_ == OrbitClass::plain ? 0.0 : 1.0;
    for (const auto& e : entries_) {
        if (!(e.duration > 0.0))
            throw Error(ErrorKind::domain_error, "pseudo-orbit durations must be positive");
        if (e.duration < min_duration)
            throw Error(ErrorKind::domain_error,
                        "durations must be >= 1 for average/limit/asymptotic classes");
    }
}

std::size_t PseudoOrbit::index(int i) const {
    int k = i + zero_offset_;
    if (k < 0 || k >= static_cast<int>(entries_.size()))
        throw Error(ErrorKind::domain_error, "pseudo-orbit index out of window");
    return static_cast<std::size_t>(k);
}

double PseudoOrbit::cumulative_time(int i) const {
    if (i < i_min() || i > i_max() + 1)
        throw Error(ErrorKind::domain_error, "cumulative time index out of window");
    double s = 0.0;
    if (i >= 0) {
        for (int k = 0; k < i; ++k) s += entry(k).duration;
    } else {
        for (int k = i; k < 0; ++k) s -= entry(k).duration;
    }
    return s;
}

PseudoOrbit PseudoOrbit::shifted(int k) const {
    int new_offset = zero_offset_ + k;
    if (new_offset < 0 || new_offset >= static_cast<int>(entries_.size()))
        throw Error(ErrorKind::domain_error, "shift would move index 0 out of window");
    return PseudoOrbit(entries_, new_offset, tag_);
}

GapProfile::GapProfile(std::vector<double> gaps, int zero_offset)
    : gaps_(std::move(gaps)), zero_offset_(zero_offset) {
    for (double g : gaps_)
        if (!(g >= 0.0)) throw Error(ErrorKind::domain_error, "gaps must be nonnegative");
}

double GapProfile::max_gap() const {
    double m = 0.0;
    for (double g : gaps_) m = std::max(m, g);
    return m;
}

double GapProfile::cesaro_average(int k, int n) const {
    if (n < 1 || k < i_min() || k + n - 1 > i_max())
        throw Error(ErrorKind::domain_error, "cesaro window out of range");
    double s = 0.0;
    for (int i = k; i < k + n; ++i) s += gap(i);
    return s / n;
}

double GapProfile::tail_supremum(int from_abs_i) const {
    double m = 0.0;
    for (int i = i_min(); i <= i_max(); ++i)
        if (std::abs(i) >= from_abs_i) m = std::max(m, gap(i));
    return m;
}

GapProfile gap_profile(const SmoothSystem& sys, const PseudoOrbit& po, const StepControl& ctrl) {
    if (sys.chart != po.entry(po.i_min()).point.chart)
        throw Error(ErrorKind::chart_mismatch, "gap_profile: orbit chart differs from system");
    std::vector<double> gaps;
    gaps.reserve(po.size() - 1);
    for (int i = po.i_min(); i < po.i_max(); ++i) {
        const TimedPoint& e = po.entry(i);
        PhasePoint reached = [&] {
            try {
                return flow(sys, e.point, e.duration, ctrl);
            } catch (const Error& err) {
                std::ostringstream os;
                os << "gap_profile: segment " << i << ": " << err.what();
                throw Error(err.kind(), os.str());
            }
        }();
        gaps.push_back(distance(reached, po.entry(i + 1).point));
    }
    return GapProfile(std::move(gaps), po.zero_offset());
}

bool is_delta_pseudo(const GapProfile& profile, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::domain_error, "delta must be positive");
    for (double g : profile.gaps())
        if (!(g < delta)) return false;  // strict, matching the definition
    return true;
}

AverageCheck is_average_pseudo(const GapProfile& profile, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::domain_error, "delta must be positive");
    const int G = static_cast<int>(profile.size());
    if (G < 3)
        throw Error(ErrorKind::insufficient_data,
                    "average check needs a window of at least 4 entries");
    const auto& gaps = profile.gaps();
    std::vector<double> prefix(static_cast<std::size_t>(G) + 1, 0.0);
    for (int k = 0; k < G; ++k) prefix[k + 1] = prefix[k] + gaps[static_cast<std::size_t>(k)];

    // largest run length whose worst in-window mean still violates the bound
    int worst_bad = 0;
    for (int n = 1; n <= G; ++n) {
        double worst = 0.0;
        for (int k = 0; k + n <= G; ++k)
            worst = std::max(worst, prefix[k + n] - prefix[k]);
        if (!(worst / n < delta)) worst_bad = n;
    }
    AverageCheck out;
    if (worst_bad == G) return out;  // even the full window violates: no N
    out.N = worst_bad + 1;
    out.ok = *out.N <= G / 2;
    return out;
}

double TailSchedule::bound(int abs_i) const {
    return std::max(C / std::pow(1.0 + abs_i, power), floor);
}

namespace {
int tail_start(const GapProfile& profile) {
    int extent = std::max(-profile.i_min(), profile.i_max());
    return std::max(1, (extent + 3) / 4);
}
}  // namespace

TailSchedule TailSchedule::fit(const GapProfile& profile) {
    TailSchedule s;
    const int start = tail_start(profile);
    double c = 0.0;
    for (int i = profile.i_min(); i <= profile.i_max(); ++i)
        if (std::abs(i) < start) c = std::max(c, profile.gap(i) * (1.0 + std::abs(i)));
    s.C = std::max(c, s.floor);
    return s;
}

bool is_limit_pseudo(const GapProfile& profile, const std::optional<TailSchedule>& schedule) {
    const TailSchedule sched = schedule ? *schedule : TailSchedule::fit(profile);
    const int start = tail_start(profile);
    for (int i = profile.i_min(); i <= profile.i_max(); ++i)
        if (std::abs(i) >= start && profile.gap(i) > sched.bound(std::abs(i))) return false;
    return true;
}

bool is_asymptotic_average_pseudo(const GapProfile& profile, double tol) {
    // gaps must cover a symmetric range [-n_max, n_max]
    const int n_max = std::min(-profile.i_min(), profile.i_max());
    if (n_max < 1 || -profile.i_min() != profile.i_max())
        throw Error(ErrorKind::insufficient_data,
                    "asymptotic average check needs a symmetric window");
    std::vector<double> avg(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (int i = -n; i <= n; ++i) s += profile.gap(i);
        avg[static_cast<std::size_t>(n)] = s / n;
    }
    const int lo = std::max(1, (3 * n_max) / 4);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int n = lo; n <= n_max; ++n) {
        double a = avg[static_cast<std::size_t>(n)];
        if (!(a < tol)) return false;
        sx += n;
        sy += a;
        sxx += static_cast<double>(n) * n;
        sxy += n * a;
        ++m;
    }
    if (m < 2) return true;
    const double denom = m * sxx - sx * sx;
    const double slope = denom > 0 ? (m * sxy - sx * sy) / denom : 0.0;
    return slope <= 1e-12;
}

PseudoOrbit generate_noisy(const SmoothSystem& sys, const PhasePoint& x0, int segments,
                           double delta, const std::vector<double>& durations,
                           std::uint64_t seed,
                           const std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& bounds,
                           const StepControl& ctrl) {
    if (segments < 1) throw Error(ErrorKind::domain_error, "segments must be >= 1");
    if (delta < 0.0) throw Error(ErrorKind::domain_error, "delta must be nonnegative");
    if (durations.empty()) throw Error(ErrorKind::domain_error, "durations must be nonempty");
    Rng rng(seed);
    std::vector<TimedPoint> entries;
    entries.reserve(static_cast<std::size_t>(segments) + 1);
    PhasePoint x = x0;
    for (int i = 0; i <= segments; ++i) {
        double t_i = durations[static_cast<std::size_t>(i) % durations.size()];
        entries.push_back({x, t_i});
        if (i == segments) break;
        Eigen::VectorXd next = flow(sys, x, t_i, ctrl).coords;
        if (delta > 0.0) next += rng.in_ball(sys.dimension, delta);
        if (bounds) {
            for (int k = 0; k < sys.dimension; ++k)
                if (next[k] < bounds->first[k] || next[k] > bounds->second[k]) {
                    std::ostringstream os;
                    os << "generate_noisy: point left declared neighborhood at segment " << i;
                    throw Error(ErrorKind::escape, os.str());
                }
        }
        x = PhasePoint(next, sys.chart);
    }
    return PseudoOrbit(std::move(entries), 0, OrbitClass::plain);
}

PseudoOrbit generate_noisy(const SmoothSystem& sys, const PhasePoint& x0, int segments,
                           double delta, double duration, std::uint64_t seed,
                           const std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& bounds,
                           const StepControl& ctrl) {
    return generate_noisy(sys, x0, segments, delta, std::vector<double>{duration}, seed,
                          bounds, ctrl);
}

namespace {

std::vector<TimedPoint> orbit_samples_backward(const SmoothSystem& sys, const PhasePoint& p,
                                               int len, const StepControl& ctrl) {
    // x_{-j} = X_{-j}(p) for j = len..1, computed along one backward sweep
    std::vector<TimedPoint> out;
    out.reserve(static_cast<std::size_t>(len));
    if (len == 0) return out;
    Trajectory back = integrate(sys, p, -static_cast<double>(len), ctrl);
    for (int j = len; j >= 1; --j) out.push_back({back.at(-static_cast<double>(j)), 1.0});
    return out;
}

std::vector<TimedPoint> orbit_samples_forward(const SmoothSystem& sys, const PhasePoint& q,
                                              int len, const StepControl& ctrl) {
    // x_j = X_j(q) for j = 0..len
    std::vector<TimedPoint> out;
    out.reserve(static_cast<std::size_t>(len) + 1);
    Trajectory fwd = integrate(sys, q, static_cast<double>(len), ctrl);
    for (int j = 0; j <= len; ++j) out.push_back({fwd.at(static_cast<double>(j)), 1.0});
    return out;
}

}  // namespace

PseudoOrbit concat_through(const SmoothSystem& sys, const PhasePoint& p, const PseudoOrbit& chain,
                           const PhasePoint& q, int back_len, int fwd_len, double declared_delta,
                           OrbitClass tag, const StepControl& ctrl) {
    if (back_len < 1 || fwd_len < 0)
        throw Error(ErrorKind::domain_error, "concat_through: back_len >= 1, fwd_len >= 0");
    const double head_gap = distance(chain.entry(chain.i_min()).point, p);
    const double tail_gap = distance(chain.entry(chain.i_max()).point, q);
    if (head_gap >= declared_delta || tail_gap >= declared_delta) {
        std::ostringstream os;
        os << "concat_through: junction gaps (" << head_gap << ", " << tail_gap
           << ") exceed declared delta " << declared_delta;
        throw Error(ErrorKind::junction, os.str());
    }
    std::vector<TimedPoint> entries = orbit_samples_backward(sys, p, back_len, ctrl);
    // middle: the chain without its terminal point, which the forward orbit
    // of q replaces
    for (int i = chain.i_min(); i < chain.i_max(); ++i) entries.push_back(chain.entry(i));
    auto fwd = orbit_samples_forward(sys, q, fwd_len, ctrl);
    entries.insert(entries.end(), fwd.begin(), fwd.end());
    return PseudoOrbit(std::move(entries), back_len, tag);
}

PseudoOrbit concat_through(const SmoothSystem& sys, const PhasePoint& p, const PhasePoint& q,
                           int back_len, int fwd_len, OrbitClass tag, const StepControl& ctrl) {
    if (back_len < 1 || fwd_len < 0)
        throw Error(ErrorKind::domain_error, "concat_through: back_len >= 1, fwd_len >= 0");
    std::vector<TimedPoint> entries = orbit_samples_backward(sys, p, back_len, ctrl);
    auto fwd = orbit_samples_forward(sys, q, fwd_len, ctrl);
    entries.insert(entries.end(), fwd.begin(), fwd.end());
    return PseudoOrbit(std::move(entries), back_len, tag);
}

}  // namespace shadowlab

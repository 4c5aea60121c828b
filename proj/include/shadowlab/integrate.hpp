#ifndef SHADOWLAB_INTEGRATE_HPP
#define SHADOWLAB_INTEGRATE_HPP

#include <vector>

#include <Eigen/Dense>

#include "shadowlab/system.hpp"

namespace shadowlab {

/// Adaptive step control for the Dormand-Prince 5(4) integrator. `base_step`
/// caps the spacing of stored samples; dense output interpolates between them.
struct StepControl {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double base_step = 0.1;
    double min_step = 1e-13;
    const char* scheme = "dopri5";
};

/// Orbit segment with dense output. Samples are stored at strictly increasing
/// times with spacing at most `ctrl.base_step`; states are raw chart
/// coordinates (canonical on mapping-torus charts, unwrapped otherwise so
/// interpolation never straddles a wrap).
class Trajectory {
public:
    Trajectory(Chart chart, StepControl ctrl) : chart_(std::move(chart)), ctrl_(ctrl) {}

    const Chart& chart() const { return chart_; }
    const StepControl& control() const { return ctrl_; }
    std::size_t size() const { return times_.size(); }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    const Eigen::VectorXd& raw_state(std::size_t k) const { return states_[k]; }
    double t_begin() const { return times_.front(); }
    double t_end() const { return times_.back(); }
    double span() const { return span_; }

    PhasePoint point(std::size_t k) const { return PhasePoint(states_[k], chart_); }
    /// Cubic Hermite interpolation between the bracketing samples.
    Eigen::VectorXd raw_at(double t) const;
    PhasePoint at(double t) const { return PhasePoint(raw_at(t), chart_); }
    /// State at the requested span end (time `span()`, which is t_begin for
    /// negative spans).
    PhasePoint endpoint() const { return at(span_); }

    void append(double t, Eigen::VectorXd state, Eigen::VectorXd deriv);
    void set_span(double s) { span_ = s; }
    void reverse_in_place();

private:
    Chart chart_;
    StepControl ctrl_;
    double span_ = 0.0;
    std::vector<double> times_;
    std::vector<Eigen::VectorXd> states_;
    std::vector<Eigen::VectorXd> derivs_;
};

/// Integrate the flow of `sys` from x0 over [0, span] (or [span, 0] when span
/// is negative; backward time integrates the negated field). Deterministic for
/// fixed inputs. Throws ErrorKind::integration_failure on step underflow, with
/// the last good time in the message.
Trajectory integrate(const SmoothSystem& sys, const PhasePoint& x0, double span,
                     const StepControl& ctrl = {});

/// Flow endpoint only.
PhasePoint flow(const SmoothSystem& sys, const PhasePoint& x0, double span,
                const StepControl& ctrl = {});

/// Derivative cocycle along an orbit segment: matrices[k] ~ DX_{t_k}(x0) at
/// the sample times, up to the logged scalar rescalings (applied once the
/// matrix norm threatens overflow; log_scales accumulates the removed factor,
/// so DX = exp(log_scale) * matrix).
struct CocycleSegment {
    Trajectory base;
    std::vector<Eigen::MatrixXd> matrices;
    std::vector<double> log_scales;

    /// DX at sample k with the scale folded back in. Safe at desk scale.
    Eigen::MatrixXd full_matrix(std::size_t k) const {
        return std::exp(log_scales[k]) * matrices[k];
    }
};

/// Integrate the variational equation M' = DX(x) M, M(0) = I, alongside the
/// flow. Renormalizes by the sup norm at unit-time boundaries when needed,
/// logging scale factors. Mapping-torus roof crossings compose the twist into
/// M exactly.
CocycleSegment integrate_variational(const SmoothSystem& sys, const PhasePoint& x0,
                                     double span, const StepControl& ctrl = {});

}  // namespace shadowlab

#endif

#include "shadowlab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shadowlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct StepResult {
    Eigen::VectorXd y;
    Eigen::VectorXd f_end;
    double err;  // weighted RMS error estimate
};

StepResult rk_step(const Rhs& rhs, const Eigen::VectorXd& y0, const Eigen::VectorXd& f0,
                   double h, double atol, double rtol) {
    const Eigen::VectorXd k1 = f0;
    const Eigen::VectorXd k2 = rhs(y0 + h * (a21 * k1));
    const Eigen::VectorXd k3 = rhs(y0 + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = rhs(y0 + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = rhs(y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        rhs(y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    StepResult r;
    r.y = y0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    r.f_end = rhs(r.y);  // FSAL stage doubles as the error-estimate k7
    const Eigen::VectorXd errv =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * r.f_end);
    double s = 0.0;
    for (Eigen::Index i = 0; i < errv.size(); ++i) {
        double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(r.y[i]));
        double q = errv[i] / sc;
        s += q * q;
    }
    r.err = std::sqrt(s / static_cast<double>(errv.size()));
    return r;
}

// Earliest tau in (0, h] where the cubic Hermite of z hits the boundary.
double hermite_crossing(double z0, double dz0, double z1, double dz1, double h,
                        double boundary) {
    auto z_at = [&](double s) {
        double u = s / h;
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        double h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u);
        double h11 = u * u * (u - 1);
        return h00 * z0 + h10 * h * dz0 + h01 * z1 + h11 * h * dz1 - boundary;
    };
    double lo = 0.0, hi = h;
    double flo = z_at(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = z_at(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct CoreCallbacks {
    // Called at t=0 and after every accepted (sub)step.
    std::function<void(double, const Eigen::VectorXd&, const Eigen::VectorXd&)> emit;
    // Called when the mapping-torus roof is crossed; mutates the ODE state.
    std::function<void(Eigen::VectorXd&, bool up)> glue;
    // Called at each unit-time boundary (used for variational renormalization).
    std::function<void(Eigen::VectorXd&)> unit_boundary;
};

// Integrates y' = rhs(y) over [0, span_abs], emitting samples. z_index >= 0
// marks the mapping-torus suspension coordinate watched for roof crossings.
void integrate_core(const Rhs& rhs, Eigen::VectorXd y, double span_abs,
                    const StepControl& ctrl, int z_index, double roof,
                    CoreCallbacks& cb) {
    double t = 0.0;
    Eigen::VectorXd f = rhs(y);
    cb.emit(t, y, f);
    if (span_abs <= 0.0) return;

    double h = std::min(ctrl.base_step, span_abs);
    double next_unit = 1.0;
    const double t_done = span_abs - 1e-12 * std::max(1.0, span_abs);
    while (t < t_done) {
        h = std::min({h, ctrl.base_step, span_abs - t});
        if (cb.unit_boundary && next_unit - t > 1e-14) h = std::min(h, next_unit - t);
        if (h < ctrl.min_step) {
            std::ostringstream os;
            os << "integration step underflow at t=" << t << " (last good time)";
            throw Error(ErrorKind::integration_failure, os.str());
        }
        StepResult st = rk_step(rhs, y, f, h, ctrl.abs_tol, ctrl.rel_tol);
        if (st.err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(st.err, -0.2));
            continue;
        }
        bool crossed = false, up = true;
        if (z_index >= 0) {
            double z1 = st.y[z_index], dz1 = st.f_end[z_index];
            // landing within roundoff of a face while still moving through it
            // counts as a crossing, so integrating exactly one period composes
            // the twist
            if (z1 >= roof || (z1 >= roof * (1.0 - 1e-12) && dz1 > 0)) {
                crossed = true;
                up = true;
            } else if (z1 < 0.0 || (z1 <= roof * 1e-12 && dz1 < 0)) {
                crossed = true;
                up = false;
            }
        }
        if (crossed) {
            double boundary = up ? roof : 0.0;
            double tau = hermite_crossing(y[z_index], f[z_index], st.y[z_index],
                                          st.f_end[z_index], h, boundary);
            // the root is strictly inside (0, h]; clamping it up would lose
            // flow time when pinning the state to the face
            tau = std::clamp(tau, 1e-15 * h, h);
            StepResult sub = rk_step(rhs, y, f, tau, ctrl.abs_tol, ctrl.rel_tol);
            t += tau;
            y = sub.y;
            y[z_index] = boundary;  // pin to the face before gluing
            // emit the pre-glue state at the crossing so dense output never
            // interpolates across the twist, then the glued state just after
            cb.emit(t, y, sub.f_end);
            cb.glue(y, up);
            f = rhs(y);
            t += 1e-12;
            cb.emit(t, y, f);
        } else {
            t += h;
            y = st.y;
            f = st.f_end;
            if (cb.unit_boundary && t >= next_unit - 1e-12) {
                cb.unit_boundary(y);
                f = rhs(y);
                next_unit += 1.0;
            }
            cb.emit(t, y, f);
        }
        double grow = st.err > 1e-30 ? 0.9 * std::pow(st.err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
}

}  // namespace

void Trajectory::append(double t, Eigen::VectorXd state, Eigen::VectorXd deriv) {
    times_.push_back(t);
    states_.push_back(std::move(state));
    derivs_.push_back(std::move(deriv));
}

void Trajectory::reverse_in_place() {
    std::reverse(times_.begin(), times_.end());
    std::reverse(states_.begin(), states_.end());
    std::reverse(derivs_.begin(), derivs_.end());
    for (auto& t : times_) t = -t;
    for (auto& d : derivs_) d = -d;
}

Eigen::VectorXd Trajectory::raw_at(double t) const {
    if (times_.empty()) throw Error(ErrorKind::domain_error, "empty trajectory");
    if (times_.size() == 1 || t <= times_.front()) return states_.front();
    if (t >= times_.back()) return states_.back();
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i1 = static_cast<std::size_t>(it - times_.begin());
    std::size_t i0 = i1 - 1;
    double t0 = times_[i0], t1 = times_[i1], dt = t1 - t0;
    double u = (t - t0) / dt;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    return h00 * states_[i0] + (h10 * dt) * derivs_[i0] + h01 * states_[i1] +
           (h11 * dt) * derivs_[i1];
}

Trajectory integrate(const SmoothSystem& sys, const PhasePoint& x0, double span,
                     const StepControl& ctrl) {
    if (x0.chart != sys.chart)
        throw Error(ErrorKind::chart_mismatch, "integrate: point chart differs from system chart");
    const bool backward = span < 0.0;
    const SmoothSystem work = backward ? sys.reversed() : sys;
    Trajectory traj(sys.chart, ctrl);

    const bool mt = sys.chart.is_mapping_torus();
    const Eigen::Matrix2d twist = mt ? sys.chart.twist().cast<double>() : Eigen::Matrix2d();
    CoreCallbacks cb;
    cb.emit = [&](double t, const Eigen::VectorXd& y, const Eigen::VectorXd& f) {
        traj.append(t, y, f);
    };
    cb.glue = [&](Eigen::VectorXd& y, bool up) {
        Eigen::Vector2d w(y[0], y[1]);
        w = up ? (twist * w).eval() : (twist.inverse() * w).eval();
        Eigen::VectorXd v(3);
        v << w[0], w[1], up ? 0.0 : sys.chart.roof();
        sys.chart.canonicalize(v);
        // keep z pinned exactly on the entered face
        v[2] = up ? 0.0 : sys.chart.roof();
        if (!up) v[2] = sys.chart.roof() * (1.0 - 1e-15);
        y = v;
    };

    Rhs rhs = [&](const Eigen::VectorXd& y) { return work.field(y); };
    integrate_core(rhs, x0.coords, std::abs(span), ctrl, mt ? 2 : -1,
                   mt ? sys.chart.roof() : 0.0, cb);
    traj.set_span(span);
    if (backward) traj.reverse_in_place();
    return traj;
}

PhasePoint flow(const SmoothSystem& sys, const PhasePoint& x0, double span,
                const StepControl& ctrl) {
    return integrate(sys, x0, span, ctrl).endpoint();
}

CocycleSegment integrate_variational(const SmoothSystem& sys, const PhasePoint& x0,
                                     double span, const StepControl& ctrl) {
    if (x0.chart != sys.chart)
        throw Error(ErrorKind::chart_mismatch, "integrate_variational: chart mismatch");
    const int n = sys.dimension;
    const bool backward = span < 0.0;
    const SmoothSystem work = backward ? sys.reversed() : sys;
    const bool mt = sys.chart.is_mapping_torus();
    const Eigen::Matrix2d twist = mt ? sys.chart.twist().cast<double>() : Eigen::Matrix2d();

    CocycleSegment seg{Trajectory(sys.chart, ctrl), {}, {}};
    double log_scale = 0.0;
    constexpr double kRescaleAt = 1e40;

    auto unpack_x = [n](const Eigen::VectorXd& y) { return y.head(n).eval(); };
    auto unpack_m = [n](const Eigen::VectorXd& y) {
        return Eigen::Map<const Eigen::MatrixXd>(y.data() + n, n, n).eval();
    };

    Rhs rhs = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd x = unpack_x(y);
        Eigen::MatrixXd m = unpack_m(y);
        Eigen::VectorXd dy(n + n * n);
        dy.head(n) = work.field(x);
        Eigen::MatrixXd dm = work.jacobian(x) * m;
        dy.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(dm.data(), n * n);
        return dy;
    };

    CoreCallbacks cb;
    cb.emit = [&](double t, const Eigen::VectorXd& y, const Eigen::VectorXd& f) {
        seg.base.append(t, unpack_x(y), f.head(n));
        seg.matrices.push_back(unpack_m(y));
        seg.log_scales.push_back(log_scale);
    };
    cb.glue = [&](Eigen::VectorXd& y, bool up) {
        Eigen::Vector2d w(y[0], y[1]);
        Eigen::Matrix2d tw = up ? twist : twist.inverse().eval();
        w = tw * w;
        Eigen::VectorXd v(3);
        v << w[0], w[1], 0.0;
        sys.chart.canonicalize(v);
        v[2] = up ? 0.0 : sys.chart.roof() * (1.0 - 1e-15);
        Eigen::MatrixXd m = unpack_m(y);
        Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);
        full.block<2, 2>(0, 0) = tw;
        m = full * m;
        y.head(n) = v;
        y.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(m.data(), n * n);
    };
    cb.unit_boundary = [&](Eigen::VectorXd& y) {
        Eigen::MatrixXd m = unpack_m(y);
        double s = m.cwiseAbs().maxCoeff();
        if (s > kRescaleAt) {
            m /= s;
            log_scale += std::log(s);
            y.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(m.data(), n * n);
        }
    };

    Eigen::VectorXd y0(n + n * n);
    y0.head(n) = x0.coords;
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    y0.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(id.data(), n * n);

    integrate_core(rhs, y0, std::abs(span), ctrl, mt ? 2 : -1,
                   mt ? sys.chart.roof() : 0.0, cb);
    seg.base.set_span(span);
    if (backward) {
        seg.base.reverse_in_place();
        std::reverse(seg.matrices.begin(), seg.matrices.end());
        std::reverse(seg.log_scales.begin(), seg.log_scales.end());
    }
    return seg;
}

double jacobian_consistency_error(const SmoothSystem& sys, const Eigen::VectorXd& lo,
                                  const Eigen::VectorXd& hi, int trials, std::uint64_t seed) {
    Rng rng(seed);
    const int n = sys.dimension;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        Eigen::MatrixXd j = sys.jacobian(x);
        Eigen::MatrixXd fd(n, n);
        const double h = 1e-6;
        for (int c = 0; c < n; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            fd.col(c) = (sys.field(xp) - sys.field(xm)) / (2 * h);
        }
        double scale = std::max(1.0, j.cwiseAbs().maxCoeff());
        worst = std::max(worst, (j - fd).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

double divergence(const SmoothSystem& sys, const PhasePoint& x) {
    if (x.chart != sys.chart)
        throw Error(ErrorKind::chart_mismatch, "divergence: chart mismatch");
    return sys.jac(x).trace();
}

}  // namespace shadowlab

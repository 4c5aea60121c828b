#include "shadowlab/poincare.hpp"

#include <cmath>

namespace shadowlab {

namespace {

// Orthonormal basis of the complement of the unit vector n.
Eigen::MatrixXd section_basis(const Eigen::VectorXd& n) {
    const int dim = static_cast<int>(n.size());
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(n).householderQ();
    // first column of q is +-n; the rest span the section
    return q.rightCols(dim - 1);
}

}  // namespace

std::optional<SectionReturn> poincare_return(const SmoothSystem& sys, const PhasePoint& base,
                                             const Eigen::VectorXd& normal,
                                             const PhasePoint& from, double max_time,
                                             const StepControl& ctrl) {
    Trajectory traj = integrate(sys, from, max_time, ctrl);
    auto g = [&](double t) {
        return normal.dot(chart_displacement(sys.chart, base.coords, traj.raw_at(t)));
    };
    const double t_min = 0.05;  // skip the immediate neighborhood of the start
    double prev_t = t_min, prev_g = g(t_min);
    const double dt = std::min(0.05, max_time / 400.0);
    for (double t = t_min + dt; t <= max_time; t += dt) {
        double cur = g(t);
        if (prev_g < 0.0 && cur >= 0.0) {
            // bisect the crossing
            double lo = prev_t, hi = t;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (g(mid) < 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            double tc = 0.5 * (lo + hi);
            PhasePoint pt = traj.at(tc);
            // same-direction crossing only
            if (normal.dot(sys.eval(pt)) > 0.0) return SectionReturn{pt, tc};
        }
        prev_t = t;
        prev_g = cur;
    }
    return std::nullopt;
}

std::optional<PeriodicOrbitFind> find_periodic_orbit(const SmoothSystem& sys,
                                                     const PhasePoint& seed,
                                                     const PeriodicSearchParams& params,
                                                     const StepControl& ctrl) {
    PhasePoint x = seed;
    double period = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < params.newton_iterations; ++it) {
        Eigen::VectorXd f = sys.eval(x);
        double speed = f.norm();
        if (speed < 1e-10) return std::nullopt;  // collapsed onto a singularity
        Eigen::VectorXd n = f / speed;
        Eigen::MatrixXd E = section_basis(n);
        const int m = static_cast<int>(E.cols());

        auto ret = poincare_return(sys, x, n, x, params.max_period, ctrl);
        if (!ret || ret->time < params.min_period) return std::nullopt;
        period = ret->time;
        Eigen::VectorXd F0 = E.transpose() *
                             chart_displacement(sys.chart, x.coords, ret->point.coords);
        residual = F0.norm();
        if (residual < params.residual_tol)
            return PeriodicOrbitFind{x, period, residual};

        // section return differential from the monodromy: wrap-proof, unlike
        // finite differences of the wrapped displacement
        auto seg = integrate_variational(sys, x, ret->time, ctrl);
        Eigen::MatrixXd M = seg.full_matrix(seg.matrices.size() - 1);
        Eigen::VectorXd fr = sys.eval(ret->point);
        double nf = n.dot(fr);
        if (std::abs(nf) < 1e-12) return std::nullopt;
        Eigen::MatrixXd P =
            Eigen::MatrixXd::Identity(sys.dimension, sys.dimension) - fr * n.transpose() / nf;
        Eigen::MatrixXd J = E.transpose() * P * M * E - Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd step = J.fullPivLu().solve(-F0);
        if (!step.allFinite()) return std::nullopt;
        double cap = 0.25;
        if (step.norm() > cap) step *= cap / step.norm();
        x = PhasePoint(x.coords + E * step, sys.chart);
    }
    if (residual < params.residual_tol) return PeriodicOrbitFind{x, period, residual};
    return std::nullopt;
}

std::optional<PhasePoint> find_singularity(const SmoothSystem& sys, const PhasePoint& seed,
                                           const SingularitySearchParams& params) {
    PhasePoint x = seed;
    double fn = sys.eval(x).norm();
    for (int it = 0; it < params.newton_iterations; ++it) {
        if (fn < params.residual_tol) return x;
        Eigen::VectorXd f = sys.eval(x);
        Eigen::MatrixXd j = sys.jac(x);
        Eigen::VectorXd step = j.fullPivLu().solve(-f);
        if (!step.allFinite()) return std::nullopt;
        // backtracking line search on |X|
        double lambda = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 12; ++ls) {
            PhasePoint trial(x.coords + lambda * step, sys.chart);
            double tn = sys.eval(trial).norm();
            if (tn < fn) {
                x = trial;
                fn = tn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    return fn < params.residual_tol ? std::optional<PhasePoint>(x) : std::nullopt;
}

}  // namespace shadowlab

#include "shadowlab/manifold.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace shadowlab {

namespace {

// Real invariant subspace of the linearization for the chosen side. For
// periodic orbits the flow multiplier is excluded.
Eigen::MatrixXd side_subspace(const CriticalOrbit& orbit, ManifoldSide side) {
    const Eigen::MatrixXd& m = orbit.linearization;
    const int n = static_cast<int>(m.rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<Eigen::VectorXd> cols;
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        std::complex<double> mu = es.eigenvalues()[i];
        bool wanted;
        if (orbit.kind == CriticalOrbit::Kind::singularity) {
            wanted = side == ManifoldSide::stable ? mu.real() < 0.0 : mu.real() > 0.0;
        } else {
            if (std::abs(mu - std::complex<double>(1, 0)) < 1e-6) continue;  // flow direction
            wanted = side == ManifoldSide::stable ? std::abs(mu) < 1.0 : std::abs(mu) > 1.0;
        }
        if (!wanted) continue;
        Eigen::VectorXcd vec = es.eigenvectors().col(i);
        cols.push_back(vec.real());
        if (std::abs(mu.imag()) > 1e-12) {
            cols.push_back(vec.imag());
            used[static_cast<std::size_t>(i)] = 1;
            // the conjugate partner contributes the same real plane
            for (int j = i + 1; j < n; ++j)
                if (std::abs(es.eigenvalues()[j] - std::conj(mu)) < 1e-10)
                    used[static_cast<std::size_t>(j)] = 1;
        }
    }
    if (cols.empty()) return Eigen::MatrixXd(n, 0);
    Eigen::MatrixXd raw(n, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) raw.col(static_cast<int>(c)) = cols[c];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd q = qr.householderQ();
    return q.leftCols(raw.cols());
}

double distance_to_orbit(const SmoothSystem& sys, const PhasePoint& y,
                         const std::vector<PhasePoint>& orbit_samples) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : orbit_samples) best = std::min(best, distance(y, p));
    return best;
}

std::vector<PhasePoint> orbit_reference_samples(const SmoothSystem& sys,
                                                const CriticalOrbit& orbit,
                                                const StepControl& ctrl) {
    std::vector<PhasePoint> out;
    if (orbit.kind == CriticalOrbit::Kind::singularity) {
        out.push_back(orbit.base);
        return out;
    }
    Trajectory t = integrate(sys, orbit.base, orbit.period, ctrl);
    const int M = 256;
    for (int s = 0; s < M; ++s) out.push_back(t.at(orbit.period * s / M));
    return out;
}

}  // namespace

ManifoldDisk local_manifold(const SmoothSystem& sys, const CriticalOrbit& orbit,
                            ManifoldSide side, double eps, const ManifoldParams& params,
                            double horizon, const StepControl& ctrl) {
    if (!orbit.hyperbolic)
        throw Error(ErrorKind::domain_error, "local manifold needs a hyperbolic orbit");
    Eigen::MatrixXd E = side_subspace(orbit, side);
    if (E.cols() == 0)
        throw Error(ErrorKind::domain_error,
                    side == ManifoldSide::stable
                        ? "empty stable disk: no contracting directions"
                        : "empty unstable disk: the orbit has no expanding directions");

    auto ref = orbit_reference_samples(sys, orbit, ctrl);
    const double grow_sign = side == ManifoldSide::stable ? -1.0 : 1.0;
    const double verify_sign = -grow_sign;

    // seed directions on the unit sphere of the eigenspace
    std::vector<Eigen::VectorXd> dirs;
    const int d = static_cast<int>(E.cols());
    if (d == 1) {
        dirs.push_back(E.col(0));
        dirs.push_back(-E.col(0));
    } else {
        Rng rng(params.seed);
        int want = std::max(4, params.samples / 8);
        for (int i = 0; i < want; ++i) dirs.push_back(E * rng.direction(d));
    }

    ManifoldDisk disk{orbit, side, eps, horizon, {}};
    const int per_dir = std::max(2, params.samples / static_cast<int>(dirs.size()));
    for (const auto& dir : dirs) {
        PhasePoint seed(orbit.base.coords + params.seed_radius * dir, sys.chart);
        // grow until the disk radius is exhausted; the growth direction
        // contracts transverse errors, so the sweep self-corrects
        Trajectory sweep = integrate(sys, seed, grow_sign * params.grow_time_cap, ctrl);
        double t0 = sweep.t_begin(), t1 = sweep.t_end();
        double exit_time = grow_sign > 0 ? t1 : t0;  // cap when the ball is never left
        const int probes = 512;
        for (int s = 0; s <= probes; ++s) {
            double t = grow_sign > 0 ? t0 + (t1 - t0) * s / probes
                                     : t1 - (t1 - t0) * s / probes;
            if (distance_to_orbit(sys, sweep.at(t), ref) >= eps * 0.98) {
                exit_time = t;
                break;
            }
        }
        double lo = grow_sign > 0 ? 0.0 : exit_time;
        double hi = grow_sign > 0 ? exit_time : 0.0;
        for (int s = 0; s < per_dir; ++s) {
            double t = lo + (hi - lo) * (s + 0.5) / per_dir;
            PhasePoint y = sweep.at(t);
            if (distance_to_orbit(sys, y, ref) >= eps) continue;
            // verify the defining inequality over the horizon
            Trajectory check = integrate(sys, y, verify_sign * horizon, ctrl);
            bool ok = true;
            for (std::size_t k = 0; k < check.size(); ++k)
                if (distance_to_orbit(sys, check.point(k), ref) >= eps) {
                    ok = false;
                    break;
                }
            if (ok) disk.samples.push_back(y);
        }
    }
    if (disk.samples.empty())
        throw Error(ErrorKind::domain_error, "empty manifold disk: every sample failed verification");
    return disk;
}

std::vector<PhasePoint> detect_intersection(const SmoothSystem& sys, const ManifoldDisk& a,
                                            const ManifoldDisk& b, double tol,
                                            const IntersectionParams& params,
                                            const StepControl& ctrl) {
    if (a.side == b.side)
        throw Error(ErrorKind::domain_error,
                    "intersection detection needs one stable and one unstable disk");
    const ManifoldDisk& unstable = a.side == ManifoldSide::unstable ? a : b;
    const ManifoldDisk& stable = a.side == ManifoldSide::unstable ? b : a;

    struct CloudPoint {
        Eigen::VectorXd coords;
        const Trajectory* traj;
        double time;
    };
    auto saturate = [&](const ManifoldDisk& disk, double sign,
                        std::vector<Trajectory>& storage) {
        std::vector<CloudPoint> cloud;
        storage.reserve(disk.samples.size());
        for (const auto& s : disk.samples)
            storage.push_back(integrate(sys, s, sign * params.propagate_time, ctrl));
        for (const auto& tr : storage) {
            for (int k = 0; k <= params.time_samples; ++k) {
                double t = tr.t_begin() + (tr.t_end() - tr.t_begin()) * k / params.time_samples;
                cloud.push_back({tr.raw_at(t), &tr, t});
            }
        }
        return cloud;
    };

    std::vector<Trajectory> u_store, s_store;
    auto u_cloud = saturate(unstable, +1.0, u_store);
    auto s_cloud = saturate(stable, -1.0, s_store);

    std::vector<PhasePoint> hits;
    const double coarse = 4.0 * tol;
    for (const auto& up : u_cloud) {
        for (const auto& sp : s_cloud) {
            if (chart_distance(sys.chart, up.coords, sp.coords) > coarse) continue;
            // refine along both sample curves by coordinate bisection in time
            double tu = up.time, ts = sp.time;
            double du = (up.traj->t_end() - up.traj->t_begin()) / params.time_samples;
            double ds = (sp.traj->t_end() - sp.traj->t_begin()) / params.time_samples;
            double best = chart_distance(sys.chart, up.coords, sp.coords);
            for (int it = 0; it < params.refine_iterations; ++it) {
                bool improved = false;
                for (double* t : {&tu, &ts}) {
                    double step = (t == &tu ? du : ds);
                    for (double cand : {*t - step, *t + step}) {
                        const Trajectory* tr = (t == &tu ? up.traj : sp.traj);
                        double c = std::clamp(cand, tr->t_begin(), tr->t_end());
                        Eigen::VectorXd pu = up.traj->raw_at(t == &tu ? c : tu);
                        Eigen::VectorXd ps = sp.traj->raw_at(t == &ts ? c : ts);
                        double dd = chart_distance(sys.chart, pu, ps);
                        if (dd < best) {
                            best = dd;
                            *t = c;
                            improved = true;
                        }
                    }
                }
                du *= 0.5;
                ds *= 0.5;
                if (!improved && du < 1e-12) break;
            }
            if (best < tol) {
                Eigen::VectorXd pu = up.traj->raw_at(tu);
                Eigen::VectorXd mid =
                    pu + 0.5 * chart_displacement(sys.chart, pu, sp.traj->raw_at(ts));
                PhasePoint hit(mid, sys.chart);
                bool dup = false;
                for (const auto& h : hits)
                    if (distance(h, hit) < tol) dup = true;
                if (!dup) hits.push_back(hit);
                if (hits.size() >= params.max_points) return hits;
            }
        }
    }
    return hits;
}

SmoothSystem bump_perturbed(const SmoothSystem& sys, const Eigen::VectorXd& center,
                            const Eigen::VectorXd& direction, double magnitude, double radius) {
    SmoothSystem p = sys;
    p.name = sys.name + "+bump";
    auto base_field = sys.field;
    auto base_jac = sys.jacobian;
    const Chart chart = sys.chart;
    auto bump = [center, radius, chart](const Eigen::VectorXd& x) {
        Eigen::VectorXd d = chart_displacement(chart, center, x);
        double r2 = d.squaredNorm() / (radius * radius);
        if (r2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - r2));
    };
    auto bump_grad = [center, radius, chart, bump](const Eigen::VectorXd& x) {
        Eigen::VectorXd d = chart_displacement(chart, center, x);
        double r2 = d.squaredNorm() / (radius * radius);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(d.size());
        if (r2 >= 1.0 - 1e-12) return g;
        double phi = bump(x);
        double denom = (1.0 - r2) * (1.0 - r2);
        g = phi * (-2.0 / denom) * d / (radius * radius);
        return g;
    };
    p.field = [base_field, bump, direction, magnitude](const Eigen::VectorXd& x) {
        return (base_field(x) + magnitude * bump(x) * direction).eval();
    };
    p.jacobian = [base_jac, bump_grad, direction, magnitude](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j = base_jac(x);
        j += magnitude * direction * bump_grad(x).transpose();
        return j;
    };
    return p;
}

HomogeneityCheck sampled_strong_homogeneity(const SmoothSystem& sys,
                                            const PerturbationFamily& family,
                                            const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                            int k, CriticalSearchParams& search,
                                            const StepControl& ctrl) {
    if (family.count < 1)
        throw Error(ErrorKind::insufficient_data, "perturbation family must be nonempty");
    Rng rng(family.seed);
    HomogeneityCheck out;
    for (int member = 0; member < family.count; ++member) {
        SmoothSystem perturbed = sys;
        if (member > 0) {  // member 0 is the unperturbed field
            Eigen::VectorXd center(sys.dimension);
            for (int i = 0; i < sys.dimension; ++i) center[i] = rng.uniform(lo[i], hi[i]);
            Eigen::VectorXd dir = rng.direction(sys.dimension);
            double mag = family.magnitude * rng.uniform01();
            perturbed = bump_perturbed(sys, center, dir, mag, family.support_radius);
        }
        auto orbits = find_critical_orbits(perturbed, lo, hi, search, ctrl);
        // every hyperbolic critical orbit counts: a Morse-Smale field with a
        // sink and a saddle is heterogeneous even without periodic orbits
        for (const auto& o : orbits)
            if (o.hyperbolic) out.observed[o.index]++;
        ++out.members_checked;
    }
    out.homogeneous = true;
    for (const auto& [idx, cnt] : out.observed) {
        (void)cnt;
        if (idx != k) out.homogeneous = false;
    }
    return out;
}

}  // namespace shadowlab

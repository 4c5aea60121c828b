#include "shadowlab/critical.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace shadowlab {

namespace {

std::vector<std::complex<double>> spectrum(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(es.eigenvalues()[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace

CriticalOrbit classify_singularity(const SmoothSystem& sys, const PhasePoint& at) {
    CriticalOrbit o{CriticalOrbit::Kind::singularity, at, 0.0, sys.jac(at), {}, -1, false, 0};
    o.multipliers = spectrum(o.linearization);
    o.hyperbolic = true;
    o.index = 0;
    for (const auto& mu : o.multipliers) {
        if (std::abs(mu.real()) <= o.hyperbolicity_margin) o.hyperbolic = false;
        if (mu.real() < 0.0) ++o.index;
    }
    return o;
}

CriticalOrbit classify_periodic(const SmoothSystem& sys, const PhasePoint& base, double period,
                                const StepControl& ctrl) {
    auto seg = integrate_variational(sys, base, period, ctrl);
    CriticalOrbit o{CriticalOrbit::Kind::periodic,
                    base,
                    period,
                    seg.full_matrix(seg.matrices.size() - 1),
                    {},
                    -1,
                    false,
                    0};
    o.multipliers = spectrum(o.linearization);
    // flow direction: the multiplier closest to 1
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < o.multipliers.size(); ++i) {
        double d = std::abs(o.multipliers[i] - std::complex<double>(1.0, 0.0));
        if (d < best) {
            best = d;
            o.flow_multiplier = static_cast<int>(i);
        }
    }
    o.hyperbolic = true;
    for (std::size_t i = 0; i < o.multipliers.size(); ++i) {
        if (static_cast<int>(i) == o.flow_multiplier) continue;
        double mod = std::abs(o.multipliers[i]);
        if (std::abs(mod - 1.0) <= o.hyperbolicity_margin) o.hyperbolic = false;
        if (mod < 1.0) ++o.index;
    }
    return o;
}

int morse_index(const CriticalOrbit& orbit) {
    if (!orbit.hyperbolic) {
        std::ostringstream os;
        os << "morse_index: orbit is not hyperbolic; offending multiplier near ";
        double worst = std::numeric_limits<double>::infinity();
        std::complex<double> culprit;
        for (std::size_t i = 0; i < orbit.multipliers.size(); ++i) {
            if (orbit.kind == CriticalOrbit::Kind::periodic &&
                static_cast<int>(i) == orbit.flow_multiplier)
                continue;
            double d = orbit.kind == CriticalOrbit::Kind::singularity
                           ? std::abs(orbit.multipliers[i].real())
                           : std::abs(std::abs(orbit.multipliers[i]) - 1.0);
            if (d < worst) {
                worst = d;
                culprit = orbit.multipliers[i];
            }
        }
        os << "(" << culprit.real() << ", " << culprit.imag() << "i)";
        throw Error(ErrorKind::domain_error, os.str());
    }
    return orbit.index;
}

IndexConstancy check_index_constancy(const std::vector<CriticalOrbit>& orbits) {
    if (orbits.empty())
        throw Error(ErrorKind::insufficient_data, "index constancy needs at least one orbit");
    IndexConstancy out;
    for (const auto& o : orbits) {
        if (o.kind != CriticalOrbit::Kind::periodic)
            throw Error(ErrorKind::domain_error, "index constancy is defined for periodic orbits");
        out.indices[morse_index(o)]++;
    }
    out.constant = out.indices.size() == 1;
    return out;
}

namespace {

double orbit_distance(const SmoothSystem& sys, const CriticalOrbit& a, const CriticalOrbit& b,
                      const StepControl& ctrl) {
    // distance between base points and a few orbit samples; enough for dedup
    if (a.kind == CriticalOrbit::Kind::singularity && b.kind == CriticalOrbit::Kind::singularity)
        return distance(a.base, b.base);
    const CriticalOrbit& orb = a.kind == CriticalOrbit::Kind::periodic ? a : b;
    const CriticalOrbit& other = a.kind == CriticalOrbit::Kind::periodic ? b : a;
    Trajectory t = integrate(sys, orb.base, orb.period, ctrl);
    double best = std::numeric_limits<double>::infinity();
    const int M = 64;
    if (other.kind == CriticalOrbit::Kind::singularity) {
        for (int s = 0; s <= M; ++s)
            best = std::min(best, distance(t.at(orb.period * s / M), other.base));
        return best;
    }
    Trajectory u = integrate(sys, other.base, other.period, ctrl);
    for (int s = 0; s <= M; ++s)
        for (int r = 0; r <= M; ++r)
            best = std::min(best,
                            distance(t.at(orb.period * s / M), u.at(other.period * r / M)));
    return best;
}

}  // namespace

std::vector<CriticalOrbit> find_critical_orbits(const SmoothSystem& sys,
                                                const Eigen::VectorXd& lo,
                                                const Eigen::VectorXd& hi,
                                                CriticalSearchParams& params,
                                                const StepControl& ctrl) {
    const int n = sys.dimension;
    std::vector<CriticalOrbit> found;
    params.diagnostics_dropped = 0;

    auto try_add = [&](CriticalOrbit&& o) {
        for (const auto& f : found)
            if (orbit_distance(sys, f, o, ctrl) < params.merge_distance) return;
        found.push_back(std::move(o));
    };

    // seed grid over [lo, hi]
    std::vector<Eigen::VectorXd> seeds;
    const int g = params.grid_per_axis;
    std::vector<int> mi(static_cast<std::size_t>(n), 0);
    while (true) {
        Eigen::VectorXd s(n);
        for (int k = 0; k < n; ++k)
            s[k] = lo[k] + (hi[k] - lo[k]) * (mi[static_cast<std::size_t>(k)] + 0.5) / g;
        seeds.push_back(s);
        int k = n - 1;
        while (k >= 0 && ++mi[static_cast<std::size_t>(k)] == g) {
            mi[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }

    if (params.singularities) {
        for (const auto& s : seeds) {
            auto root = find_singularity(sys, PhasePoint(s, sys.chart), params.singularity_search);
            if (!root) {
                ++params.diagnostics_dropped;
                continue;
            }
            if (sys.eval(*root).norm() >= params.singularity_search.residual_tol) continue;
            try_add(classify_singularity(sys, *root));
        }
    }
    if (params.periodic) {
        for (const auto& s : seeds) {
            PhasePoint seed(s, sys.chart);
            if (sys.eval(seed).norm() < 1e-8) continue;  // sitting on a singularity
            auto orbit = find_periodic_orbit(sys, seed, params.periodic_search, ctrl);
            if (!orbit) {
                ++params.diagnostics_dropped;
                continue;
            }
            // reject returns that immediately collapse onto a singularity
            bool near_sing = false;
            for (const auto& f : found)
                if (f.kind == CriticalOrbit::Kind::singularity &&
                    distance(f.base, orbit->base) < 10 * params.merge_distance)
                    near_sing = true;
            if (near_sing) continue;
            try_add(classify_periodic(sys, orbit->base, orbit->period, ctrl));
        }
    }
    return found;
}

}  // namespace shadowlab

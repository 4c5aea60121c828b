#include "shadowlab/chain.hpp"

#include <sstream>

namespace shadowlab {

double hausdorff_distance(const Chart& chart, const std::vector<Eigen::VectorXd>& A,
                          const std::vector<Eigen::VectorXd>& B) {
    if (A.empty() || B.empty())
        throw Error(ErrorKind::domain_error, "Hausdorff distance needs nonempty sets");
    auto one_sided = [&](const std::vector<Eigen::VectorXd>& from,
                         const std::vector<Eigen::VectorXd>& to) {
        double worst = 0.0;
        for (const auto& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& b : to) best = std::min(best, chart_distance(chart, a, b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(A, B), one_sided(B, A));
}

PeriodicApprox approximate_by_periodic_orbit(const SmoothSystem& sys, const TransitionGraph& tg,
                                             const std::vector<int>& region,
                                             const PeriodicApproxParams& params,
                                             const StepControl& ctrl) {
    if (!is_chain_transitive(tg.graph, region))
        throw Error(ErrorKind::domain_error,
                    "periodic approximation requires a chain transitive region");
    std::vector<Eigen::VectorXd> centers;
    centers.reserve(region.size());
    for (int v : region) centers.push_back(tg.node_center(v));

    PeriodicApprox out;
    std::ostringstream diag;
    const std::size_t stride = std::max<std::size_t>(1, region.size() / params.seeds);
    int attempts = 0, converged = 0;
    for (std::size_t k = 0; k < region.size(); k += stride) {
        ++attempts;
        PhasePoint seed(centers[k], sys.chart);
        auto found = find_periodic_orbit(sys, seed, params.search, ctrl);
        if (!found) continue;
        ++converged;
        Trajectory orbit = integrate(sys, found->base, found->period, ctrl);
        std::vector<Eigen::VectorXd> samples;
        samples.reserve(static_cast<std::size_t>(params.orbit_samples));
        for (int s = 0; s < params.orbit_samples; ++s)
            samples.push_back(sys.chart.canonical(
                orbit.raw_at(found->period * s / params.orbit_samples)));
        double dh = hausdorff_distance(sys.chart, samples, centers);
        if (dh < out.dH) {
            out.dH = dh;
            out.orbit = std::move(orbit);
            out.period = found->period;
        }
    }
    diag << "seeds tried " << attempts << ", converged " << converged;
    out.diagnostics = diag.str();
    return out;
}

}  // namespace shadowlab

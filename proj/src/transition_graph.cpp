#include "shadowlab/transition_graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace shadowlab {

int TransitionGraph::node_of_box(long b) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), b);
    if (it == nodes.end() || *it != b) return -1;
    return static_cast<int>(it - nodes.begin());
}

TransitionGraph build_transition_graph(const SmoothSystem& sys, const BoxCover& cover,
                                       const TransitionParams& params, std::uint64_t seed,
                                       const StepControl& ctrl) {
    if (params.t_step < 1.0)
        throw Error(ErrorKind::domain_error, "t_step must be >= 1");
    TransitionParams p = params;
    if (p.delta_fat <= 0.0) p.delta_fat = cover.box_diameter();
    if (p.delta_fat < cover.box_diameter() / 2)
        throw Error(ErrorKind::domain_error, "delta_fat must be at least half a box diameter");

    TransitionGraph tg{cover, cover.active_boxes(), {}, p, seed};
    const int n_nodes = static_cast<int>(tg.nodes.size());
    tg.graph.n = n_nodes;
    tg.graph.out.assign(static_cast<std::size_t>(n_nodes), {});
    tg.graph.escaping.assign(static_cast<std::size_t>(n_nodes), 0);

    const int dim = sys.dimension;
    const int corner_count = 1 << dim;

    for (int v = 0; v < n_nodes; ++v) {
        long b = tg.nodes[static_cast<std::size_t>(v)];
        auto [lo, hi] = cover.box_bounds(b);
        Eigen::VectorXd mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);

        std::vector<Eigen::VectorXd> samples;
        // corners pulled slightly inside so box membership is unambiguous
        for (int c = 0; c < corner_count && static_cast<int>(samples.size()) < p.samples_per_box;
             ++c) {
            Eigen::VectorXd s(dim);
            for (int k = 0; k < dim; ++k)
                s[k] = mid[k] + ((c >> k) & 1 ? 0.95 : -0.95) * half[k];
            samples.push_back(s);
        }
        if (static_cast<int>(samples.size()) < p.samples_per_box) samples.push_back(mid);
        // per-box stream keyed by (seed, box id): prefixes are stable when
        // samples_per_box grows, so edge sets only grow with it
        Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(b) * 0x2545F4914F6CDD1DULL + 1);
        while (static_cast<int>(samples.size()) < p.samples_per_box) {
            Eigen::VectorXd s(dim);
            for (int k = 0; k < dim; ++k) s[k] = mid[k] + rng.uniform(-1, 1) * half[k];
            samples.push_back(s);
        }

        std::vector<int>& adj = tg.graph.out[static_cast<std::size_t>(v)];
        for (const auto& s : samples) {
            PhasePoint start(s, sys.chart);
            PhasePoint end = flow(sys, start, p.t_step, ctrl);
            if (cover.locate(end.coords) < 0) {
                tg.graph.escaping[static_cast<std::size_t>(v)] = 1;
                continue;
            }
            for (long nb : cover.boxes_near(end.coords, p.delta_fat)) {
                if (!cover.active(nb)) continue;
                int w = tg.node_of_box(nb);
                if (w >= 0) adj.push_back(w);
            }
        }
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return tg;
}

}  // namespace shadowlab

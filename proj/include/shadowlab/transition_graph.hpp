#ifndef SHADOWLAB_TRANSITION_GRAPH_HPP
#define SHADOWLAB_TRANSITION_GRAPH_HPP

#include "shadowlab/box_cover.hpp"
#include "shadowlab/digraph.hpp"
#include "shadowlab/integrate.hpp"

namespace shadowlab {

struct TransitionParams {
    double t_step = 1.0;     // >= 1 to match the duration convention
    double delta_fat = 0.0;  // 0 selects one box diameter
    int samples_per_box = 8; // corners + center + seeded random fill
};

/// Directed box-transition graph: node b has an edge to b' when some sample
/// of b flows, over t_step, to within delta_fat of b'. Boxes with a sample
/// leaving the cover are flagged escaping (and kept).
struct TransitionGraph {
    BoxCover cover;
    std::vector<long> nodes;      // active box ids, index = graph node
    Digraph graph;                // adjacency over node indices, escape flags set
    TransitionParams params;
    std::uint64_t seed = 0;

    long box_of_node(int v) const { return nodes[static_cast<std::size_t>(v)]; }
    int node_of_box(long b) const;
    Eigen::VectorXd node_center(int v) const { return cover.center(box_of_node(v)); }
};

/// Deterministic per seed; increasing samples_per_box only adds edges (the
/// per-box sample streams are prefix-stable).
TransitionGraph build_transition_graph(const SmoothSystem& sys, const BoxCover& cover,
                                       const TransitionParams& params, std::uint64_t seed,
                                       const StepControl& ctrl = {});

}  // namespace shadowlab

#endif

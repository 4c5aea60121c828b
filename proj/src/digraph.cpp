#include "shadowlab/digraph.hpp"

#include <algorithm>
#include <numeric>

namespace shadowlab {

namespace {

std::vector<char> to_mask(int n, const std::vector<int>& nodes) {
    std::vector<char> m(static_cast<std::size_t>(n), 0);
    for (int v : nodes) m[static_cast<std::size_t>(v)] = 1;
    return m;
}

std::vector<int> from_mask(const std::vector<char>& m) {
    std::vector<int> out;
    for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v]) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

Digraph Digraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Digraph g;
    g.n = n;
    g.out.assign(static_cast<std::size_t>(n), {});
    for (const auto& [a, b] : edges) g.out[static_cast<std::size_t>(a)].push_back(b);
    for (auto& adj : g.out) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return g;
}

Digraph Digraph::reversed() const {
    Digraph r;
    r.n = n;
    r.out.assign(static_cast<std::size_t>(n), {});
    r.escaping = escaping;
    for (int v = 0; v < n; ++v)
        for (int w : out[static_cast<std::size_t>(v)]) r.out[static_cast<std::size_t>(w)].push_back(v);
    return r;
}

Digraph Digraph::induced(const std::vector<int>& nodes, std::vector<int>* old_of_new) const {
    std::vector<int> new_of_old(static_cast<std::size_t>(n), -1);
    Digraph s;
    s.n = static_cast<int>(nodes.size());
    s.out.assign(nodes.size(), {});
    if (!escaping.empty()) s.escaping.assign(nodes.size(), 0);
    for (std::size_t k = 0; k < nodes.size(); ++k)
        new_of_old[static_cast<std::size_t>(nodes[k])] = static_cast<int>(k);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        int v = nodes[k];
        if (!escaping.empty()) s.escaping[k] = escaping[static_cast<std::size_t>(v)];
        for (int w : out[static_cast<std::size_t>(v)]) {
            int nw = new_of_old[static_cast<std::size_t>(w)];
            if (nw >= 0) s.out[k].push_back(nw);
        }
    }
    if (old_of_new) *old_of_new = nodes;
    return s;
}

SccResult strongly_connected_components(const Digraph& g) {
    SccResult res;
    res.comp.assign(static_cast<std::size_t>(g.n), -1);
    std::vector<int> index(static_cast<std::size_t>(g.n), -1);
    std::vector<int> low(static_cast<std::size_t>(g.n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack;
    int next_index = 0;

    // iterative Tarjan; frame = (node, next edge position)
    struct Frame {
        int v;
        std::size_t ei;
    };
    std::vector<Frame> frames;
    for (int root = 0; root < g.n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        frames.push_back({root, 0});
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& adj = g.out[static_cast<std::size_t>(f.v)];
            if (f.ei < adj.size()) {
                int w = adj[f.ei++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    res.members.emplace_back();
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        res.comp[static_cast<std::size_t>(w)] = res.count;
                        res.members.back().push_back(w);
                    } while (w != f.v);
                    ++res.count;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<std::size_t>(frames.back().v)] =
                        std::min(low[static_cast<std::size_t>(frames.back().v)],
                                 low[static_cast<std::size_t>(v)]);
            }
        }
    }
    res.has_edge.assign(static_cast<std::size_t>(res.count), 0);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.out[static_cast<std::size_t>(v)])
            if (res.comp[static_cast<std::size_t>(v)] == res.comp[static_cast<std::size_t>(w)])
                res.has_edge[static_cast<std::size_t>(res.comp[static_cast<std::size_t>(v)])] = 1;
    return res;
}

std::vector<int> forward_reachable(const Digraph& g, const std::vector<int>& seeds) {
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack;
    for (int s : seeds)
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.out[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    return from_mask(seen);
}

std::vector<char> cyclic_nodes(const Digraph& g) {
    auto scc = strongly_connected_components(g);
    std::vector<char> cyc(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v)
        if (scc.has_edge[static_cast<std::size_t>(scc.comp[static_cast<std::size_t>(v)])])
            cyc[static_cast<std::size_t>(v)] = 1;
    return cyc;
}

std::vector<int> chain_recurrent_set(const Digraph& g) { return from_mask(cyclic_nodes(g)); }

bool is_chain_transitive(const Digraph& g, const std::vector<int>& region) {
    if (region.empty())
        throw Error(ErrorKind::insufficient_data, "chain transitivity needs a nonempty region");
    Digraph sub = g.induced(region);
    return strongly_connected_components(sub).count == 1;
}

std::vector<int> omega_limit(const Digraph& g, const std::vector<int>& B, bool reverse) {
    const Digraph work = reverse ? g.reversed() : g;
    auto reach = forward_reachable(work, B);
    auto cyc = cyclic_nodes(work);
    std::vector<int> cyc_reached;
    for (int v : reach)
        if (cyc[static_cast<std::size_t>(v)]) cyc_reached.push_back(v);
    return forward_reachable(work, cyc_reached);
}

namespace {

// Cyclic-or-leaking nodes of the subgraph avoiding `avoid`; their backward
// closure within that subgraph is the dual repeller. Leaking nodes count as
// recurrent-at-infinity through the virtual absorbing vertex, unless that
// vertex itself belongs to the avoided attractor.
std::vector<int> avoiders(const Digraph& g, const std::vector<char>& avoid,
                          bool virtual_in_attractor = false) {
    std::vector<int> keep;
    for (int v = 0; v < g.n; ++v)
        if (!avoid[static_cast<std::size_t>(v)]) keep.push_back(v);
    Digraph sub = g.induced(keep);
    auto cyc = cyclic_nodes(sub);
    std::vector<int> seeds;
    for (std::size_t k = 0; k < keep.size(); ++k)
        if (cyc[k] || (!virtual_in_attractor && g.leaks(keep[k])))
            seeds.push_back(static_cast<int>(k));
    Digraph rev = sub.reversed();
    auto back = forward_reachable(rev, seeds);
    std::vector<int> out;
    out.reserve(back.size());
    for (int k : back) out.push_back(keep[static_cast<std::size_t>(k)]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<int> dual_repeller(const Digraph& g, const std::vector<int>& A) {
    return avoiders(g, to_mask(g.n, A));
}

std::vector<AttractorRecord> attractors(const Digraph& g) {
    auto scc = strongly_connected_components(g);
    std::vector<AttractorRecord> out;

    // terminal classes of the totalized graph: no edge leaves the class and
    // no member leaks to the virtual vertex
    for (int c = 0; c < scc.count; ++c) {
        bool terminal = true;
        for (int v : scc.members[static_cast<std::size_t>(c)]) {
            if (g.leaks(v)) terminal = false;
            for (int w : g.out[static_cast<std::size_t>(v)])
                if (scc.comp[static_cast<std::size_t>(w)] != c) terminal = false;
        }
        if (!terminal) continue;
        AttractorRecord rec;
        rec.boxes = scc.members[static_cast<std::size_t>(c)];
        std::sort(rec.boxes.begin(), rec.boxes.end());
        rec.dual = dual_repeller(g, rec.boxes);
        // basin: nodes that cannot avoid A forever
        auto bad = to_mask(g.n, rec.dual);
        rec.neighborhood.clear();
        auto a_mask = to_mask(g.n, rec.boxes);
        for (int v = 0; v < g.n; ++v) {
            if (a_mask[static_cast<std::size_t>(v)]) {
                rec.neighborhood.push_back(v);
                continue;
            }
            if (bad[static_cast<std::size_t>(v)]) continue;
            // v avoids the dual: every infinite walk from v is absorbed by A
            // unless it can still reach a leak or cycle outside A
            rec.neighborhood.push_back(v);
        }
        out.push_back(std::move(rec));
    }

    // the trivial attractor: the full node set
    AttractorRecord full;
    full.trivial = true;
    full.boxes.resize(static_cast<std::size_t>(g.n));
    std::iota(full.boxes.begin(), full.boxes.end(), 0);
    full.neighborhood = full.boxes;
    full.dual = {};
    out.push_back(std::move(full));
    return out;
}

namespace {

// All forward-closed node sets of the totalized graph, as masks over the SCC
// condensation, produced by DFS with a hard guard. The virtual vertex is
// modeled as an extra class that every leaking class feeds.
struct CandidateEnum {
    const Digraph& g;
    SccResult scc;
    int classes;                        // real classes + 1 virtual
    std::vector<std::vector<int>> succ;  // condensation adjacency
    std::vector<std::vector<int>> class_masks;
    bool truncated = false;
    std::size_t guard;

    CandidateEnum(const Digraph& graph, std::size_t max_candidates)
        : g(graph), scc(strongly_connected_components(graph)), guard(max_candidates) {
        classes = scc.count + 1;
        const int virt = scc.count;
        succ.assign(static_cast<std::size_t>(classes), {});
        for (int v = 0; v < g.n; ++v) {
            int cv = scc.comp[static_cast<std::size_t>(v)];
            if (g.leaks(v)) succ[static_cast<std::size_t>(cv)].push_back(virt);
            for (int w : g.out[static_cast<std::size_t>(v)]) {
                int cw = scc.comp[static_cast<std::size_t>(w)];
                if (cw != cv) succ[static_cast<std::size_t>(cv)].push_back(cw);
            }
        }
        for (auto& s : succ) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    }

    // enumerate down-sets (forward-closed class sets); calls f with the mask.
    // Tarjan emits classes in reverse topological order (successors have
    // smaller ids), so deciding the virtual sink first and then ids ascending
    // guarantees each class's successors are settled before it.
    template <typename F>
    void enumerate(F&& f) {
        std::vector<char> chosen(static_cast<std::size_t>(classes), 0);
        std::size_t count = 0;
        std::vector<int> order;
        order.push_back(scc.count);  // virtual class
        for (int c = 0; c < scc.count; ++c) order.push_back(c);
        rec(0, order, chosen, count, f);
    }

    template <typename F>
    void rec(std::size_t c, const std::vector<int>& order, std::vector<char>& chosen,
             std::size_t& count, F&& f) {
        if (truncated) return;
        if (c == order.size()) {
            if (++count > guard) {
                truncated = true;
                return;
            }
            f(chosen);
            return;
        }
        int cls = order[c];
        bool may_include = true;
        for (int s : succ[static_cast<std::size_t>(cls)])
            if (!chosen[static_cast<std::size_t>(s)]) may_include = false;
        chosen[static_cast<std::size_t>(cls)] = 0;
        rec(c + 1, order, chosen, count, f);
        if (may_include && !truncated) {
            chosen[static_cast<std::size_t>(cls)] = 1;
            rec(c + 1, order, chosen, count, f);
            chosen[static_cast<std::size_t>(cls)] = 0;
        }
    }
};

}  // namespace

ConleyCheck check_conley_identity(const Digraph& g) {
    ConleyCheck out;
    auto cr_mask = to_mask(g.n, chain_recurrent_set(g));

    // Candidates with the virtual vertex excluded have duals that contain the
    // corresponding included-variant's dual, so they never sharpen the
    // intersection; enumerating with the virtual class forced in halves the
    // work without changing the intersected set.
    CandidateEnum cands(g, 10000);
    const int virt = cands.scc.count;
    std::vector<char> intersection(static_cast<std::size_t>(g.n), 1);
    std::size_t attractor_count = 0;

    // shared buffers for the per-candidate dual computation
    const std::size_t N = static_cast<std::size_t>(g.n);
    std::vector<char> a_mask(N), alive(N), seed(N);
    std::vector<int> outdeg(N), indeg(N), stack;
    Digraph rev = g.reversed();

    cands.enumerate([&](const std::vector<char>& chosen) {
        if (!chosen[static_cast<std::size_t>(virt)]) return;  // virtual forced in
        ++attractor_count;
        for (int v = 0; v < g.n; ++v)
            a_mask[static_cast<std::size_t>(v)] =
                chosen[static_cast<std::size_t>(cands.scc.comp[static_cast<std::size_t>(v)])];

        // cyclic nodes of the A-avoiding subgraph by degree pruning: peeling
        // nodes with no in- or out-neighbors inside the subgraph leaves
        // exactly the union of its cycles
        for (int v = 0; v < g.n; ++v) {
            alive[static_cast<std::size_t>(v)] = !a_mask[static_cast<std::size_t>(v)];
            outdeg[static_cast<std::size_t>(v)] = indeg[static_cast<std::size_t>(v)] = 0;
        }
        for (int v = 0; v < g.n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            for (int w : g.out[static_cast<std::size_t>(v)])
                if (alive[static_cast<std::size_t>(w)]) {
                    ++outdeg[static_cast<std::size_t>(v)];
                    ++indeg[static_cast<std::size_t>(w)];
                }
        }
        stack.clear();
        for (int v = 0; v < g.n; ++v)
            if (alive[static_cast<std::size_t>(v)] &&
                (outdeg[static_cast<std::size_t>(v)] == 0 || indeg[static_cast<std::size_t>(v)] == 0))
                stack.push_back(v);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!alive[static_cast<std::size_t>(v)]) continue;
            alive[static_cast<std::size_t>(v)] = 0;
            for (int w : g.out[static_cast<std::size_t>(v)])
                if (alive[static_cast<std::size_t>(w)] && --indeg[static_cast<std::size_t>(w)] == 0)
                    stack.push_back(w);
            for (int w : rev.out[static_cast<std::size_t>(v)])
                if (alive[static_cast<std::size_t>(w)] && --outdeg[static_cast<std::size_t>(w)] == 0)
                    stack.push_back(w);
        }

        // dual = backward closure (within the subgraph) of its cyclic nodes;
        // leaking nodes do not seed because the virtual vertex is inside A
        stack.clear();
        for (int v = 0; v < g.n; ++v) {
            seed[static_cast<std::size_t>(v)] = alive[static_cast<std::size_t>(v)];
            if (alive[static_cast<std::size_t>(v)]) stack.push_back(v);
        }
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : rev.out[static_cast<std::size_t>(v)]) {
                if (a_mask[static_cast<std::size_t>(w)] || seed[static_cast<std::size_t>(w)])
                    continue;
                seed[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
        for (int v = 0; v < g.n; ++v)
            if (!a_mask[static_cast<std::size_t>(v)] && !seed[static_cast<std::size_t>(v)])
                intersection[static_cast<std::size_t>(v)] = 0;
    });
    out.truncated = cands.truncated;
    out.attractor_count = attractor_count;
    if (out.truncated) return out;  // inconclusive
    out.holds = true;
    for (int v = 0; v < g.n; ++v)
        if (intersection[static_cast<std::size_t>(v)] != cr_mask[static_cast<std::size_t>(v)]) {
            out.holds = false;
            out.witness = v;
            break;
        }
    return out;
}

TransitivityCheck check_transitive_iff_no_proper_attractor(const Digraph& g,
                                                           const std::vector<int>& region) {
    if (region.empty())
        throw Error(ErrorKind::insufficient_data, "region must be nonempty");
    Digraph sub = g.induced(region);
    TransitivityCheck out;
    auto scc = strongly_connected_components(sub);
    out.chain_transitive = scc.count == 1;

    // proper attractor: some class whose forward closure misses part of the
    // node set (its closure is then a proper forward-closed candidate)
    out.has_proper_attractor = false;
    for (int c = 0; c < scc.count && !out.has_proper_attractor; ++c) {
        auto reach = forward_reachable(sub, scc.members[static_cast<std::size_t>(c)]);
        if (static_cast<int>(reach.size()) < sub.n) out.has_proper_attractor = true;
    }
    out.consistent = out.chain_transitive != out.has_proper_attractor;
    return out;
}

}  // namespace shadowlab

#ifndef SHADOWLAB_DIGRAPH_HPP
#define SHADOWLAB_DIGRAPH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "shadowlab/errors.hpp"

namespace shadowlab {

/// Plain directed graph with optional escape flags. Nodes whose trajectory
/// leaves the covered region are flagged; combinatorially they behave as if
/// they had an extra edge to a virtual absorbing vertex, and so do nodes with
/// no outgoing edges. That totalization is what makes the Conley-style
/// identities below hold on every digraph.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> out;
    std::vector<std::uint8_t> escaping;  // empty means none

    static Digraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    bool is_escaping(int v) const {
        return !escaping.empty() && escaping[static_cast<std::size_t>(v)] != 0;
    }
    /// Escaping or dead-end: the node's future leaves the graph.
    bool leaks(int v) const { return is_escaping(v) || out[static_cast<std::size_t>(v)].empty(); }
    Digraph reversed() const;
    Digraph induced(const std::vector<int>& nodes, std::vector<int>* old_of_new = nullptr) const;
};

/// Strongly connected components in reverse topological order (Tarjan,
/// iterative). comp[v] is the component id; components with larger id come
/// earlier in topological order of the condensation.
struct SccResult {
    int count = 0;
    std::vector<int> comp;
    std::vector<std::vector<int>> members;
    /// true when the component has an internal edge (size > 1 or a self-loop)
    std::vector<char> has_edge;
};
SccResult strongly_connected_components(const Digraph& g);

std::vector<int> forward_reachable(const Digraph& g, const std::vector<int>& seeds);

/// Nodes lying on a closed walk (the chain recurrent nodes of the graph).
std::vector<char> cyclic_nodes(const Digraph& g);

/// Union of SCCs containing at least one edge; trivial components without a
/// self-loop are not chain recurrent.
std::vector<int> chain_recurrent_set(const Digraph& g);

/// True iff the region induces a single strongly connected component.
bool is_chain_transitive(const Digraph& g, const std::vector<int>& region);

/// omega-limit of the node set B: the nodes hit at arbitrarily large step
/// counts, i.e. the forward closure of the cyclic nodes reachable from B.
/// reverse = true computes the alpha-limit via the reversed graph.
std::vector<int> omega_limit(const Digraph& g, const std::vector<int>& B, bool reverse = false);

/// Attractor of the graph: a nonempty node set with no real edge leaving it
/// and no leaking member (escape counts as leaving), realized as the omega
/// limit of its absorbing neighborhood. Records carry the basin neighborhood
/// and the dual repeller.
struct AttractorRecord {
    std::vector<int> boxes;         // the attractor A
    std::vector<int> neighborhood;  // U_A: nodes whose every future is absorbed by A
    std::vector<int> dual;          // A*: nodes that can avoid A forever (recurrently)
    bool trivial = false;           // the full node set record
};

/// Minimal attractors (terminal SCCs of the totalized graph that stay inside
/// the real nodes) plus the trivial full-set record.
std::vector<AttractorRecord> attractors(const Digraph& g);

/// Dual repeller of an arbitrary attractor candidate: nodes admitting an
/// infinite walk that avoids A and recurs outside it (computed as the
/// backward closure, within the A-avoiding subgraph, of its cyclic and
/// leaking nodes).
std::vector<int> dual_repeller(const Digraph& g, const std::vector<int>& A);

struct ConleyCheck {
    bool holds = false;
    std::optional<int> witness;
    bool truncated = false;  // candidate enumeration hit the guard
    std::size_t attractor_count = 0;
};

/// Verifies CR(g) == intersection over all attractors A of (A union A*),
/// enumerating every forward-closed candidate (down-sets of the condensation
/// of the totalized graph) up to a 10^4 guard.
ConleyCheck check_conley_identity(const Digraph& g);

struct TransitivityCheck {
    bool chain_transitive = false;
    bool has_proper_attractor = false;
    bool consistent = false;
};

/// Evaluates the "chain transitive iff no proper attractor" equivalence on
/// the subgraph induced by region (all nodes for the global statement).
TransitivityCheck check_transitive_iff_no_proper_attractor(const Digraph& g,
                                                           const std::vector<int>& region);

}  // namespace shadowlab

#endif

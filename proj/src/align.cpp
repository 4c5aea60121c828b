#include "shadowlab/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shadowlab {

OrbitCurve OrbitCurve::from_point(const SmoothSystem& sys, const PhasePoint& x, double u_min,
                                  double u_max, const StepControl& ctrl) {
    if (u_min > 0.0 || u_max < 0.0 || u_max <= u_min)
        throw Error(ErrorKind::domain_error, "orbit curve window must contain 0");
    OrbitCurve c;
    if (u_min < 0.0) {
        c.starts_.push_back(u_min);
        c.pieces_.push_back(integrate(sys, x, u_min, ctrl));
    }
    c.starts_.push_back(0.0);
    c.pieces_.push_back(integrate(sys, x, std::max(u_max, 1e-9), ctrl));
    return c;
}

OrbitCurve OrbitCurve::from_checkpoints(const SmoothSystem& sys,
                                        const std::vector<std::pair<double, PhasePoint>>& pts,
                                        double tail, const StepControl& ctrl) {
    if (pts.empty()) throw Error(ErrorKind::domain_error, "no checkpoints");
    OrbitCurve c;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        double span = k + 1 < pts.size() ? pts[k + 1].first - pts[k].first : tail;
        if (span <= 0.0)
            throw Error(ErrorKind::domain_error, "checkpoint times must strictly increase");
        c.starts_.push_back(pts[k].first);
        c.pieces_.push_back(integrate(sys, pts[k].second, span, ctrl));
        if (k + 1 < pts.size())
            c.max_defect_ = std::max(
                c.max_defect_, distance(c.pieces_.back().endpoint(), pts[k + 1].second));
    }
    return c;
}

OrbitCurve OrbitCurve::reference(const SmoothSystem& sys, const PseudoOrbit& po,
                                 const StepControl& ctrl) {
    OrbitCurve c;
    for (int i = po.i_min(); i <= po.i_max(); ++i) {
        const TimedPoint& e = po.entry(i);
        c.starts_.push_back(po.cumulative_time(i));
        c.pieces_.push_back(integrate(sys, e.point, e.duration, ctrl));
        if (i > po.i_min()) {
            const auto& prev = c.pieces_[c.pieces_.size() - 2];
            c.max_defect_ = std::max(c.max_defect_,
                                     distance(prev.endpoint(), e.point));
        }
    }
    return c;
}

double OrbitCurve::t_max() const {
    return starts_.back() + std::abs(pieces_.back().span());
}

PhasePoint OrbitCurve::at(double t) const {
    // pieces own [start_k, start_{k+1}); clamp outside the window
    std::size_t k;
    if (t <= starts_.front()) {
        k = 0;
    } else {
        auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
        k = static_cast<std::size_t>(it - starts_.begin()) - 1;
    }
    const Trajectory& piece = pieces_[k];
    double local = t - starts_[k];
    if (piece.span() < 0.0) local += piece.span();  // backward piece covers [span, 0]
    local = std::clamp(local, std::min(0.0, piece.span()), std::max(0.0, piece.span()));
    return piece.at(local);
}

double minimax_lattice_cost(const Eigen::MatrixXd& node_cost,
                            std::vector<std::pair<int, int>>* path) {
    const int P = static_cast<int>(node_cost.rows()) - 1;  // po axis
    const int Q = static_cast<int>(node_cost.cols()) - 1;  // orbit axis
    // A path starts at (0,0), moves by (1,1), (0,1) or (1,0), and terminates
    // on first reaching the last pseudo-orbit row; the orbit endpoint is free.
    Eigen::MatrixXd suffix(P + 1, Q + 1);
    for (int k = Q; k >= 0; --k) suffix(P, k) = node_cost(P, k);
    for (int j = P - 1; j >= 0; --j)
        for (int k = Q; k >= 0; --k) {
            double best = suffix(j + 1, k);  // po advance always available
            if (k < Q) best = std::min({best, suffix(j + 1, k + 1), suffix(j, k + 1)});
            suffix(j, k) = std::max(node_cost(j, k), best);
        }
    if (path) {
        // lexicographically first optimal path under the move preference
        // diagonal > orbit advance > po advance
        path->clear();
        const double target = suffix(0, 0);
        int j = 0, k = 0;
        double acc = node_cost(0, 0);
        path->emplace_back(0, 0);
        while (j < P) {
            auto feasible = [&](int nj, int nk) {
                return std::max(acc, suffix(nj, nk)) <= target;
            };
            int nj, nk;
            if (k < Q && feasible(j + 1, k + 1)) {
                nj = j + 1;
                nk = k + 1;
            } else if (k < Q && feasible(j, k + 1)) {
                nj = j;
                nk = k + 1;
            } else {
                nj = j + 1;
                nk = k;
            }
            j = nj;
            k = nk;
            acc = std::max(acc, node_cost(j, k));
            path->emplace_back(j, k);
        }
    }
    return suffix(0, 0);
}

namespace {

// Node times for one direction: each pseudo-orbit segment contributes `g`
// subintervals; the orbit axis gets the same node count, uniform over the
// matching span.
void build_half_times(const PseudoOrbit& po, int first_seg, int last_seg, int g,
                      bool negative, double span_factor, std::vector<double>& po_times,
                      std::vector<double>& orbit_times) {
    po_times.clear();
    std::vector<double> seg_bounds;
    if (!negative) {
        for (int i = first_seg; i <= last_seg + 1; ++i)
            seg_bounds.push_back(po.cumulative_time(i));
    } else {
        for (int i = last_seg + 1; i >= first_seg; --i)
            seg_bounds.push_back(-po.cumulative_time(i));
    }
    po_times.push_back(seg_bounds.front());
    for (std::size_t s = 0; s + 1 < seg_bounds.size(); ++s) {
        double a = seg_bounds[s], b = seg_bounds[s + 1];
        for (int k = 1; k <= g; ++k)
            po_times.push_back(a + (b - a) * k / g);
    }
    const double span = (po_times.back() - po_times.front()) * span_factor;
    orbit_times.resize(po_times.size());
    for (std::size_t k = 0; k < po_times.size(); ++k)
        orbit_times[k] =
            span * static_cast<double>(k) / static_cast<double>(po_times.size() - 1);
}

// Strictly increasing PL breakpoints from a monotone lattice path; ties are
// spread by a tiny ramp, keeping the (0,0) anchor exact.
std::vector<std::pair<double, double>> strictify(
    const std::vector<std::pair<double, double>>& nodes, double eps_t, double eps_h) {
    std::vector<std::pair<double, double>> out;
    out.reserve(nodes.size());
    for (const auto& p : nodes) {
        if (out.empty()) {
            out.push_back(p);
            continue;
        }
        double t = std::max(p.first, out.back().first + eps_t);
        double h = std::max(p.second, out.back().second + eps_h);
        out.emplace_back(t, h);
    }
    return out;
}

AlignmentHalf align_half(const OrbitCurve& ref, const OrbitCurve& cand, const PseudoOrbit& po,
                         int first_seg, int last_seg, int g, bool negative,
                         double span_factor) {
    AlignmentHalf half;
    half.present = true;
    build_half_times(po, first_seg, last_seg, g, negative, span_factor, half.po_times,
                     half.orbit_times);
    const int N = static_cast<int>(half.po_times.size());
    const double sgn = negative ? -1.0 : 1.0;
    std::vector<PhasePoint> ref_pts, cand_pts;
    ref_pts.reserve(static_cast<std::size_t>(N));
    cand_pts.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        ref_pts.push_back(ref.at(sgn * half.po_times[static_cast<std::size_t>(k)]));
        cand_pts.push_back(cand.at(sgn * half.orbit_times[static_cast<std::size_t>(k)]));
    }
    Eigen::MatrixXd cost(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            cost(j, k) = distance(ref_pts[static_cast<std::size_t>(j)],
                                  cand_pts[static_cast<std::size_t>(k)]);
    half.cost = minimax_lattice_cost(cost, &half.path);
    return half;
}

}  // namespace

AlignmentResult align_detailed(const SmoothSystem& sys, const PseudoOrbit& po,
                               const OrbitCurve& candidate, const AlignmentGrid& grid) {
    if (grid.nodes_per_segment < 4)
        throw Error(ErrorKind::domain_error, "alignment grid needs >= 4 nodes per segment");
    OrbitCurve ref = OrbitCurve::reference(sys, po);

    AlignmentResult res{Reparametrization::identity(-1.0, 1.0), 0.0, {}, {}};
    const int g = grid.nodes_per_segment;
    if (po.i_max() >= 0)
        res.forward =
            align_half(ref, candidate, po, 0, po.i_max(), g, false, grid.orbit_span_factor);
    if (po.i_min() < 0)
        res.backward =
            align_half(ref, candidate, po, po.i_min(), -1, g, true, grid.orbit_span_factor);
    res.cost = std::max(res.forward.present ? res.forward.cost : 0.0,
                        res.backward.present ? res.backward.cost : 0.0);

    // assemble h from the two half-paths
    std::vector<std::pair<double, double>> nodes;
    auto path_nodes = [](const AlignmentHalf& h, double sgn) {
        std::vector<std::pair<double, double>> v;
        v.reserve(h.path.size());
        for (const auto& [j, k] : h.path)
            v.emplace_back(sgn * h.po_times[static_cast<std::size_t>(j)],
                           sgn * h.orbit_times[static_cast<std::size_t>(k)]);
        return v;
    };
    double eps_t = 1e-9, eps_h = 1e-9;
    if (res.backward.present) {
        // strictify in mirrored (increasing) time, then flip back and reverse
        auto bwd = strictify(path_nodes(res.backward, 1.0), eps_t, eps_h);
        for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
            nodes.emplace_back(-it->first, -it->second);
    }
    if (res.forward.present) {
        auto fwd = strictify(path_nodes(res.forward, 1.0), eps_t, eps_h);
        std::size_t skip = (!nodes.empty() && fwd.front().first == 0.0) ? 1 : 0;
        for (std::size_t k = skip; k < fwd.size(); ++k) nodes.push_back(fwd[k]);
    }
    if (nodes.size() < 2) nodes = {{0.0, 0.0}, {1.0, 1.0}};
    res.h = Reparametrization(std::move(nodes));
    return res;
}

AlignmentResult align_detailed(const SmoothSystem& sys, const PseudoOrbit& po,
                               const PhasePoint& x, const AlignmentGrid& grid,
                               const StepControl& ctrl) {
    const double lo = po.cumulative_time(po.i_min()) * grid.orbit_span_factor;
    const double hi = po.cumulative_time(po.i_max() + 1) * grid.orbit_span_factor;
    OrbitCurve cand = OrbitCurve::from_point(sys, x, std::min(lo, 0.0), std::max(hi, 0.0), ctrl);
    return align_detailed(sys, po, cand, grid);
}

Reparametrization align(const SmoothSystem& sys, const PseudoOrbit& po, const PhasePoint& x,
                        const AlignmentGrid& grid, const StepControl& ctrl) {
    return align_detailed(sys, po, x, grid, ctrl).h;
}

}  // namespace shadowlab

// Independent reference computations used by the unit and acceptance suites.
// Everything here recomputes expected values from first principles and must
// stay free of the library's own optimized code paths.
#ifndef SHADOWLAB_TESTS_ORACLES_HPP
#define SHADOWLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

/// Exhaustive DFS over monotone lattice paths from (0,0) that terminate on
/// first reaching the last row, minimizing the max node cost. Moves are tried
/// diagonal, then orbit advance, then po advance, and only strictly better
/// paths replace the incumbent, so the first minimal path found is the
/// lexicographically preferred one. Two exact prunes keep the search
/// tractable: (current max >= incumbent) and dominance (a revisit of a cell
/// with running max >= an earlier visit cannot improve on the earlier,
/// lexicographically preferred, subtree).
struct LatticeSearch {
    const Eigen::MatrixXd& cost;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, int>> best_path, current;
    Eigen::MatrixXd best_at;

    explicit LatticeSearch(const Eigen::MatrixXd& c) : cost(c) {
        best_at.setConstant(c.rows(), c.cols(), std::numeric_limits<double>::infinity());
    }

    void run() {
        current.emplace_back(0, 0);
        best_at(0, 0) = cost(0, 0);
        dfs(0, 0, cost(0, 0));
    }

    void dfs(int j, int k, double acc) {
        if (acc >= best) return;
        const int P = static_cast<int>(cost.rows()) - 1;
        const int Q = static_cast<int>(cost.cols()) - 1;
        if (j == P) {
            best = acc;
            best_path = current;
            return;
        }
        const std::pair<int, int> moves[3] = {{j + 1, k + 1}, {j, k + 1}, {j + 1, k}};
        for (const auto& [nj, nk] : moves) {
            if (nk > Q) continue;
            if (nj == j && nk == k) continue;
            double nacc = std::max(acc, cost(nj, nk));
            if (nacc >= best_at(nj, nk)) continue;
            best_at(nj, nk) = nacc;
            current.emplace_back(nj, nk);
            dfs(nj, nk, nacc);
            current.pop_back();
        }
    }
};

/// Second independent route to the optimal minimax cost: the smallest
/// threshold c such that the end row is reachable from (0,0) through nodes of
/// cost <= c, found by binary search over the sorted node costs with a BFS
/// feasibility check.
inline double threshold_lattice_cost(const Eigen::MatrixXd& cost) {
    const int P = static_cast<int>(cost.rows()) - 1;
    const int Q = static_cast<int>(cost.cols()) - 1;
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>((P + 1) * (Q + 1)));
    for (int j = 0; j <= P; ++j)
        for (int k = 0; k <= Q; ++k) levels.push_back(cost(j, k));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    auto feasible = [&](double c) {
        if (cost(0, 0) > c) return false;
        std::vector<std::vector<char>> seen(static_cast<std::size_t>(P + 1),
                                            std::vector<char>(static_cast<std::size_t>(Q + 1), 0));
        std::vector<std::pair<int, int>> stack = {{0, 0}};
        seen[0][0] = 1;
        while (!stack.empty()) {
            auto [j, k] = stack.back();
            stack.pop_back();
            if (j == P) return true;
            const std::pair<int, int> moves[3] = {{j + 1, k + 1}, {j, k + 1}, {j + 1, k}};
            for (const auto& [nj, nk] : moves) {
                if (nj > P || nk > Q) continue;
                if (seen[static_cast<std::size_t>(nj)][static_cast<std::size_t>(nk)]) continue;
                if (cost(nj, nk) > c) continue;
                seen[static_cast<std::size_t>(nj)][static_cast<std::size_t>(nk)] = 1;
                stack.emplace_back(nj, nk);
            }
        }
        return false;
    };

    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return levels[lo];
}

/// Closed-form shadowing corrections for the time-h map of a diagonal linear
/// field: given pseudo-orbit points x_i with unit durations and the diagonal
/// exponentials lambda_k = exp(a_k), the bounded solution of
/// w_{i+1} = L w_i + d_i (d_i the one-step defects) runs stable components
/// forward from 0 and unstable components backward from 0.
struct LinearShadowOracle {
    std::vector<Eigen::VectorXd> corrections;  // per pseudo-orbit entry
    double kappa = 0.0;                        // geometric-series shadowing constant

    static LinearShadowOracle solve(const Eigen::VectorXd& rates,
                                    const std::vector<Eigen::VectorXd>& points) {
        const int n = static_cast<int>(rates.size());
        const std::size_t K = points.size() - 1;
        std::vector<Eigen::VectorXd> defects(K);
        Eigen::VectorXd lam(n);
        for (int k = 0; k < n; ++k) lam[k] = std::exp(rates[k]);
        for (std::size_t i = 0; i < K; ++i) {
            Eigen::VectorXd mapped(n);
            for (int k = 0; k < n; ++k) mapped[k] = lam[k] * points[i][k];
            defects[i] = mapped - points[i + 1];
        }
        LinearShadowOracle out;
        out.corrections.assign(points.size(), Eigen::VectorXd::Zero(n));
        for (int k = 0; k < n; ++k) {
            if (lam[k] < 1.0) {
                double w = 0.0;  // stable: forward recursion, w_0 = 0
                for (std::size_t i = 0; i < K; ++i) {
                    w = lam[k] * w + defects[i][k];
                    out.corrections[i + 1][k] = w;
                }
            } else {
                double w = 0.0;  // unstable: backward recursion, w_K = 0
                for (std::size_t i = K; i-- > 0;) {
                    w = (w - defects[i][k]) / lam[k];
                    out.corrections[i][k] = w;
                }
            }
        }
        // empirical shadowing constant: correction size per unit defect,
        // inflated by the worst within-segment growth
        double max_corr = 0.0, max_defect = 0.0;
        for (const auto& w : out.corrections) max_corr = std::max(max_corr, w.norm());
        for (const auto& d : defects) max_defect = std::max(max_defect, d.norm());
        const double growth = std::exp(rates.cwiseAbs().maxCoeff());
        out.kappa = max_defect > 0 ? (max_corr / max_defect) * growth + 1.0 : 1.0;
        return out;
    }
};

}  // namespace oracles

#endif

#include "shadowlab/splitting.hpp"

#include <algorithm>
#include <cmath>

namespace shadowlab {

namespace {

struct LineFit {
    double slope = 0.0;
    double r2 = 0.0;
    double max_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t m = t.size();
    LineFit f;
    if (m < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += t[i];
        sy += y[i];
        sxx += t[i] * t[i];
        sxy += t[i] * y[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom <= 0) return f;
    f.slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - f.slope * sx) / m;
    double ss_res = 0, ss_tot = 0, mean = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
        double pred = intercept + f.slope * t[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
        f.max_residual = std::max(f.max_residual, std::abs(y[i] - pred));
    }
    // a flat series carries no rate information
    f.r2 = ss_tot > 1e-18 ? 1.0 - ss_res / ss_tot : 0.0;
    return f;
}

// Unit-step cocycle matrices along the trajectory.
std::vector<Eigen::MatrixXd> unit_cocycle(const SmoothSystem& sys, const Trajectory& traj,
                                          int steps, const StepControl& ctrl) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        PhasePoint x = traj.at(traj.t_begin() + k);
        auto seg = integrate_variational(sys, x, 1.0, ctrl);
        out.push_back(seg.full_matrix(seg.matrices.size() - 1));
    }
    return out;
}

}  // namespace

SplittingEstimate estimate_splitting(const SmoothSystem& sys, const Trajectory& traj, int s_dim,
                                     const StepControl& ctrl) {
    const int n = sys.dimension;
    if (s_dim < 1 || s_dim >= n)
        throw Error(ErrorKind::domain_error, "s_dim must satisfy 1 <= s_dim < n");
    const double span = traj.t_end() - traj.t_begin();
    if (span < 10.0)
        throw Error(ErrorKind::insufficient_data, "splitting estimation needs span >= 10");

    const int steps = static_cast<int>(std::floor(span));
    SplittingEstimate est;
    est.window = span;
    est.s_dim = s_dim;
    est.c_dim = n - s_dim;

    auto cocycle = unit_cocycle(sys, traj, steps, ctrl);
    Eigen::MatrixXd frame = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd accum = Eigen::VectorXd::Zero(n);
    est.times.push_back(0.0);
    est.log_sigma.push_back(accum);
    for (int k = 0; k < steps; ++k) {
        Eigen::MatrixXd pushed = cocycle[static_cast<std::size_t>(k)] * frame;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(pushed);
        Eigen::MatrixXd q = qr.householderQ();
        Eigen::MatrixXd r = q.transpose() * pushed;
        for (int j = 0; j < n; ++j) {
            double d = r(j, j);
            if (d < 0) q.col(j) *= -1.0;  // keep the frame orientation-stable
            accum[j] += std::log(std::max(std::abs(d), 1e-300));
        }
        frame = q;
        Eigen::VectorXd sorted = accum;
        std::sort(sorted.data(), sorted.data() + n);
        est.times.push_back(static_cast<double>(k + 1));
        est.log_sigma.push_back(sorted);
    }

    std::vector<double> y_contract, y_gap;
    for (std::size_t k = 0; k < est.times.size(); ++k) {
        y_contract.push_back(est.log_sigma[k][s_dim - 1]);
        y_gap.push_back(est.log_sigma[k][s_dim - 1] - est.log_sigma[k][s_dim]);
    }
    auto fc = fit_line(est.times, y_contract);
    auto fd = fit_line(est.times, y_gap);
    est.lambda_contract = -fc.slope;
    est.K_contract = std::exp(fc.max_residual);
    est.r2_contract = fc.r2;
    est.lambda_dom = -fd.slope;
    est.K_dom = std::exp(fd.max_residual);
    est.r2_dom = fd.r2;
    est.conclusive = fc.r2 > 0.9 && fd.r2 > 0.9;
    return est;
}

SectionalCheck check_sectional_expansion(const SmoothSystem& sys, const Trajectory& traj,
                                         const Eigen::MatrixXd& c_basis, int planes,
                                         std::uint64_t seed, double lambda_min,
                                         const StepControl& ctrl) {
    const int n = sys.dimension;
    const int c_dim = static_cast<int>(c_basis.cols());
    if (c_dim < 2)
        throw Error(ErrorKind::domain_error,
                    "sectional expansion needs a central bundle of dimension >= 2");
    const double span = traj.t_end() - traj.t_begin();
    const int steps = static_cast<int>(std::floor(span));
    if (steps < 4)
        throw Error(ErrorKind::insufficient_data, "sectional expansion needs span >= 4");

    auto cocycle = unit_cocycle(sys, traj, steps, ctrl);
    Rng rng(seed);
    SectionalCheck out;
    out.ok = true;
    out.worst_rate = std::numeric_limits<double>::infinity();
    // basis-pair planes first: random planes drift toward the fastest pair,
    // while invariant coordinate pairs realize the slowest area growth
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> seeds_uv;
    for (int i = 0; i < c_dim; ++i)
        for (int j = i + 1; j < c_dim; ++j)
            seeds_uv.emplace_back(c_basis.col(i), c_basis.col(j));
    while (static_cast<int>(seeds_uv.size()) < planes) {
        Eigen::VectorXd a = c_basis * rng.direction(c_dim);
        Eigen::VectorXd b(n);
        do {
            b = c_basis * rng.direction(c_dim);
            b -= a.dot(b) / a.squaredNorm() * a;
        } while (b.norm() < 1e-8);
        seeds_uv.emplace_back(a, b);
    }
    for (const auto& [sa, sb] : seeds_uv) {
        Eigen::VectorXd a = sa, b = sb;
        b -= a.dot(b) / a.squaredNorm() * a;
        if (b.norm() < 1e-12) continue;
        Eigen::VectorXd u = a.normalized(), v = b.normalized();

        double log_area = 0.0;
        std::vector<double> t{0.0}, y{0.0};
        for (int k = 0; k < steps; ++k) {
            Eigen::VectorXd pu = cocycle[static_cast<std::size_t>(k)] * u;
            Eigen::VectorXd pv = cocycle[static_cast<std::size_t>(k)] * v;
            // area factor of the parallelogram via the 2-column Gram matrix
            double g00 = pu.dot(pu), g01 = pu.dot(pv), g11 = pv.dot(pv);
            double area2 = std::max(g00 * g11 - g01 * g01, 1e-300);
            log_area += 0.5 * std::log(area2);
            // renormalize the pair
            u = pu.normalized();
            v = (pv - pv.dot(u) * u);
            v.normalize();
            t.push_back(static_cast<double>(k + 1));
            y.push_back(log_area);
        }
        double rate = fit_line(t, y).slope;
        out.worst_rate = std::min(out.worst_rate, rate);
        if (rate < lambda_min) out.ok = false;
        ++out.planes_tested;
    }
    return out;
}

}  // namespace shadowlab

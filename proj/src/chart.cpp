#include "shadowlab/chart.hpp"

#include <cmath>
#include <sstream>

namespace shadowlab {

namespace {

double wrap_into(double x, double period) {
    double y = std::fmod(x, period);
    if (y < 0.0) y += period;
    // fmod can land exactly on period after the correction
    if (y >= period) y -= period;
    return y;
}

double axis_gap(double a, double b, double period) {
    if (period <= 0.0) return std::abs(a - b);
    double d = std::abs(a - b);
    d = std::fmod(d, period);
    return std::min(d, period - d);
}

Eigen::Vector2d torus2_gap(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    Eigen::Vector2d g;
    for (int i = 0; i < 2; ++i) g[i] = axis_gap(a[i], b[i], 1.0);
    return g;
}

}  // namespace

Eigen::MatrixXd Chart::canonicalize(Eigen::VectorXd& x) const {
    Eigen::MatrixXd transport = Eigen::MatrixXd::Identity(dim_, dim_);
    if (!is_mapping_torus_) {
        for (int k = 0; k < dim_; ++k) {
            double p = periods_[static_cast<size_t>(k)];
            if (p > 0.0) x[k] = wrap_into(x[k], p);
        }
        return transport;
    }
    // Mapping torus: wrapping z by one roof applies the twist to (x0, x1).
    double z = x[2];
    long sheets = static_cast<long>(std::floor(z / roof_));
    if (sheets != 0) {
        Eigen::Matrix2i power = Eigen::Matrix2i::Identity();
        const Eigen::Matrix2i& step = sheets > 0 ? twist_ : twist_inv_;
        for (long i = 0; i < std::labs(sheets); ++i) power = step * power;
        Eigen::Vector2d w(x[0], x[1]);
        w = power.cast<double>() * w;
        x[0] = w[0];
        x[1] = w[1];
        x[2] = z - static_cast<double>(sheets) * roof_;
        transport.block<2, 2>(0, 0) = power.cast<double>();
    }
    x[0] = wrap_into(x[0], 1.0);
    x[1] = wrap_into(x[1], 1.0);
    if (x[2] >= roof_) {  // guard against floor() rounding at the boundary
        x[2] -= roof_;
        Eigen::Vector2d w(x[0], x[1]);
        w = twist_.cast<double>() * w;
        x[0] = wrap_into(w[0], 1.0);
        x[1] = wrap_into(w[1], 1.0);
        transport.block<2, 2>(0, 0) = twist_.cast<double>() * transport.block<2, 2>(0, 0);
    }
    return transport;
}

std::string Chart::describe() const {
    std::ostringstream os;
    switch (kind()) {
        case ChartKind::euclidean: os << "euclidean(" << dim_ << ")"; break;
        case ChartKind::torus: os << "torus(" << dim_ << ")"; break;
        case ChartKind::cylinder: os << "cylinder(" << dim_ << ")"; break;
        case ChartKind::mapping_torus: os << "mapping_torus(roof=" << roof_ << ")"; break;
    }
    return os.str();
}

double chart_distance(const Chart& chart, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != chart.dim() || b.size() != chart.dim())
        throw Error(ErrorKind::chart_mismatch, "distance: coordinate length mismatch");
    if (!chart.is_mapping_torus()) {
        double s = 0.0;
        for (int k = 0; k < chart.dim(); ++k) {
            double g = axis_gap(a[k], b[k], chart.periods()[static_cast<size_t>(k)]);
            s += g * g;
        }
        return std::sqrt(s);
    }
    Eigen::VectorXd ca = chart.canonical(a), cb = chart.canonical(b);
    const Eigen::Vector2d wa(ca[0], ca[1]), wb(cb[0], cb[1]);
    const double za = ca[2], zb = cb[2], roof = chart.roof();
    const Eigen::Matrix2d A = chart.twist().cast<double>();
    double best = std::numeric_limits<double>::infinity();
    for (int k = -1; k <= 1; ++k) {
        // representative of b on sheet k: (A^-k wb, zb + k*roof); the symmetric
        // min keeps d(a,b) == d(b,a) even though the twist is not an isometry.
        Eigen::Vector2d wb_k = wb, wa_k = wa;
        if (k == 1) { wb_k = A.inverse() * wb; wa_k = A * wa; }
        if (k == -1) { wb_k = A * wb; wa_k = A.inverse() * wa; }
        double dz = za - (zb + k * roof);
        double dw = std::min(torus2_gap(wa, wb_k).norm(), torus2_gap(wa_k, wb).norm());
        best = std::min(best, std::sqrt(dw * dw + dz * dz));
    }
    return best;
}

double distance(const PhasePoint& a, const PhasePoint& b) {
    if (a.chart != b.chart)
        throw Error(ErrorKind::chart_mismatch, "distance: points live on different charts");
    return chart_distance(a.chart, a.coords, b.coords);
}

namespace {
double wrap_diff(double d, double period) {
    if (period <= 0.0) return d;
    d = std::fmod(d, period);
    if (d < -0.5 * period) d += period;
    if (d >= 0.5 * period) d -= period;
    return d;
}
}  // namespace

Eigen::VectorXd chart_displacement(const Chart& chart, const Eigen::VectorXd& from,
                                   const Eigen::VectorXd& to) {
    if (!chart.is_mapping_torus()) {
        Eigen::VectorXd v = to - from;
        for (int k = 0; k < chart.dim(); ++k)
            v[k] = wrap_diff(v[k], chart.periods()[static_cast<size_t>(k)]);
        return v;
    }
    Eigen::VectorXd cf = chart.canonical(from), ct = chart.canonical(to);
    const Eigen::Matrix2d A = chart.twist().cast<double>();
    const double roof = chart.roof();
    Eigen::VectorXd best(3);
    double best_norm = std::numeric_limits<double>::infinity();
    for (int k = -1; k <= 1; ++k) {
        Eigen::Vector2d w(ct[0], ct[1]);
        if (k == 1) w = A.inverse() * w;
        if (k == -1) w = A * w;
        Eigen::VectorXd v(3);
        v[0] = wrap_diff(w[0] - cf[0], 1.0);
        v[1] = wrap_diff(w[1] - cf[1], 1.0);
        v[2] = (ct[2] + k * roof) - cf[2];
        if (v.norm() < best_norm) {
            best_norm = v.norm();
            best = v;
        }
    }
    return best;
}

}  // namespace shadowlab

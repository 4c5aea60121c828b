#include "shadowlab/box_cover.hpp"

#include <cmath>

namespace shadowlab {

BoxCover::BoxCover(const Chart& chart, Eigen::VectorXd lo, Eigen::VectorXd hi, int depth)
    : chart_(chart), lo_(std::move(lo)), hi_(std::move(hi)), depth_(depth) {
    if (lo_.size() != chart_.dim() || hi_.size() != chart_.dim())
        throw Error(ErrorKind::chart_mismatch, "box cover bounds dimension mismatch");
    if (depth_ < 0 || depth_ > 16)
        throw Error(ErrorKind::domain_error, "box cover depth out of range");
    for (int k = 0; k < chart_.dim(); ++k)
        if (!(hi_[k] > lo_[k]))
            throw Error(ErrorKind::domain_error, "box cover bounds must be nonempty");
    total_ = 1;
    for (int k = 0; k < chart_.dim(); ++k) total_ *= per_axis();
    active_.assign(static_cast<std::size_t>(total_), 1);
}

std::vector<long> BoxCover::multi_index(long idx) const {
    std::vector<long> mi(static_cast<std::size_t>(chart_.dim()));
    long rem = idx;
    for (int k = chart_.dim() - 1; k >= 0; --k) {
        mi[static_cast<std::size_t>(k)] = rem % per_axis();
        rem /= per_axis();
    }
    return mi;
}

long BoxCover::flat_index(const std::vector<long>& mi) const {
    long idx = 0;
    for (int k = 0; k < chart_.dim(); ++k) idx = idx * per_axis() + mi[static_cast<std::size_t>(k)];
    return idx;
}

Eigen::VectorXd BoxCover::center(long idx) const {
    auto mi = multi_index(idx);
    Eigen::VectorXd w = widths(), c(chart_.dim());
    for (int k = 0; k < chart_.dim(); ++k)
        c[k] = lo_[k] + (static_cast<double>(mi[static_cast<std::size_t>(k)]) + 0.5) * w[k];
    return c;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> BoxCover::box_bounds(long idx) const {
    auto mi = multi_index(idx);
    Eigen::VectorXd w = widths(), a(chart_.dim()), b(chart_.dim());
    for (int k = 0; k < chart_.dim(); ++k) {
        a[k] = lo_[k] + static_cast<double>(mi[static_cast<std::size_t>(k)]) * w[k];
        b[k] = a[k] + w[k];
    }
    return {a, b};
}

long BoxCover::locate(const Eigen::VectorXd& point) const {
    Eigen::VectorXd p = chart_.canonical(point);
    Eigen::VectorXd w = widths();
    std::vector<long> mi(static_cast<std::size_t>(chart_.dim()));
    for (int k = 0; k < chart_.dim(); ++k) {
        double rel = (p[k] - lo_[k]) / w[k];
        long i = static_cast<long>(std::floor(rel));
        if (i < 0 || i >= per_axis()) return -1;
        mi[static_cast<std::size_t>(k)] = i;
    }
    return flat_index(mi);
}

double BoxCover::distance_to_box(const Eigen::VectorXd& point, long idx) const {
    Eigen::VectorXd p = chart_.canonical(point);
    auto [a, b] = box_bounds(idx);
    double s = 0.0;
    for (int k = 0; k < chart_.dim(); ++k) {
        double period = chart_.periods()[static_cast<std::size_t>(k)];
        double g;
        if (p[k] >= a[k] && p[k] <= b[k]) {
            g = 0.0;
        } else {
            g = std::min(std::abs(p[k] - a[k]), std::abs(p[k] - b[k]));
            if (period > 0.0) {
                // the box interval may be closer across the wrap
                double wrapped = std::min(std::abs(p[k] - a[k] - period) ,
                                          std::abs(p[k] - b[k] - period));
                wrapped = std::min(wrapped, std::min(std::abs(p[k] - a[k] + period),
                                                     std::abs(p[k] - b[k] + period)));
                g = std::min(g, wrapped);
            }
        }
        s += g * g;
    }
    return std::sqrt(s);
}

std::vector<long> BoxCover::boxes_near(const Eigen::VectorXd& point, double radius) const {
    Eigen::VectorXd p = chart_.canonical(point);
    Eigen::VectorXd w = widths();
    const int n = chart_.dim();
    std::vector<std::vector<long>> axis_candidates(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double period = chart_.periods()[static_cast<std::size_t>(k)];
        long i_lo = static_cast<long>(std::floor((p[k] - radius - lo_[k]) / w[k]));
        long i_hi = static_cast<long>(std::floor((p[k] + radius - lo_[k]) / w[k]));
        for (long i = i_lo; i <= i_hi; ++i) {
            long wrapped = i;
            if (period > 0.0) {
                wrapped = i % per_axis();
                if (wrapped < 0) wrapped += per_axis();
            }
            if (wrapped < 0 || wrapped >= per_axis()) continue;
            axis_candidates[static_cast<std::size_t>(k)].push_back(wrapped);
        }
        auto& v = axis_candidates[static_cast<std::size_t>(k)];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (v.empty()) return {};
    }
    // cartesian product of the per-axis candidate ranges, filtered by distance
    std::vector<long> out;
    std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
    std::vector<long> mi(static_cast<std::size_t>(n));
    while (true) {
        for (int k = 0; k < n; ++k)
            mi[static_cast<std::size_t>(k)] =
                axis_candidates[static_cast<std::size_t>(k)][pos[static_cast<std::size_t>(k)]];
        long idx = flat_index(mi);
        if (distance_to_box(p, idx) <= radius) out.push_back(idx);
        int k = n - 1;
        while (k >= 0) {
            if (++pos[static_cast<std::size_t>(k)] <
                axis_candidates[static_cast<std::size_t>(k)].size())
                break;
            pos[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

void BoxCover::set_active(const std::vector<long>& boxes) {
    active_.assign(static_cast<std::size_t>(total_), 0);
    for (long b : boxes) active_[static_cast<std::size_t>(b)] = 1;
}

void BoxCover::activate_all() { active_.assign(static_cast<std::size_t>(total_), 1); }

std::vector<long> BoxCover::active_boxes() const {
    std::vector<long> out;
    for (long b = 0; b < total_; ++b)
        if (active_[static_cast<std::size_t>(b)]) out.push_back(b);
    return out;
}

long BoxCover::coarsen_index(long idx, int coarser_depth) const {
    if (coarser_depth > depth_)
        throw Error(ErrorKind::domain_error, "coarsen_index needs a coarser depth");
    auto mi = multi_index(idx);
    int shift = depth_ - coarser_depth;
    std::vector<long> cmi(mi.size());
    for (std::size_t k = 0; k < mi.size(); ++k) cmi[k] = mi[k] >> shift;
    long cidx = 0;
    long per = 1L << coarser_depth;
    for (std::size_t k = 0; k < cmi.size(); ++k) cidx = cidx * per + cmi[k];
    return cidx;
}

}  // namespace shadowlab

#include "shadowlab/reparam.hpp"

#include <algorithm>
#include <cmath>

namespace shadowlab {

Reparametrization::Reparametrization(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
    if (points_.size() < 2)
        throw Error(ErrorKind::domain_error, "reparametrization needs at least two breakpoints");
    if (!valid())
        throw Error(ErrorKind::domain_error,
                    "reparametrization must be strictly increasing through (0, 0)");
}

bool Reparametrization::valid() const {
    bool has_origin = false;
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (k > 0 && !(points_[k].first > points_[k - 1].first &&
                       points_[k].second > points_[k - 1].second))
            return false;
        if (points_[k].first == 0.0 && points_[k].second == 0.0) has_origin = true;
    }
    return has_origin;
}

double Reparametrization::operator()(double t) const {
    const auto& p = points_;
    if (t <= p.front().first) {
        double slope =
            (p[1].second - p[0].second) / (p[1].first - p[0].first);
        return p.front().second + slope * (t - p.front().first);
    }
    if (t >= p.back().first) {
        std::size_t m = p.size();
        double slope = (p[m - 1].second - p[m - 2].second) /
                       (p[m - 1].first - p[m - 2].first);
        return p.back().second + slope * (t - p.back().first);
    }
    auto it = std::upper_bound(p.begin(), p.end(), t,
                               [](double v, const auto& q) { return v < q.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double u = (t - lo.first) / (hi.first - lo.first);
    return lo.second + u * (hi.second - lo.second);
}

Reparametrization Reparametrization::identity(double lo, double hi) {
    return linear(1.0, lo, hi);
}

Reparametrization Reparametrization::linear(double slope, double lo, double hi) {
    std::vector<std::pair<double, double>> pts;
    if (lo < 0.0) pts.emplace_back(lo, slope * lo);
    pts.emplace_back(0.0, 0.0);
    if (hi > 0.0) pts.emplace_back(hi, slope * hi);
    if (pts.size() < 2) pts.emplace_back(1.0, slope);
    return Reparametrization(std::move(pts));
}

}  // namespace shadowlab

#ifndef SHADOWLAB_CHART_HPP
#define SHADOWLAB_CHART_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shadowlab/errors.hpp"

namespace shadowlab {

enum class ChartKind { euclidean, torus, cylinder, mapping_torus };

/// Flat chart of the phase space. Axes with period 0 are unbounded, axes with
/// a positive period are circular. The mapping-torus chart models a suspension
/// with roof height `roof`: crossing the last axis at the roof applies the
/// integer `twist` matrix to the first two coordinates (mod 1). This is the
/// only chart whose wrap acts nontrivially on tangent vectors.
class Chart {
public:
    static Chart euclidean(int dim) {
        return Chart(dim, std::vector<double>(static_cast<size_t>(dim), 0.0));
    }
    static Chart torus(std::vector<double> periods) {
        const int n = static_cast<int>(periods.size());
        return Chart(n, std::move(periods));
    }
    /// First `periods.size()` axes as given, remaining axes unbounded.
    static Chart cylinder(int dim, std::vector<double> periods) {
        periods.resize(static_cast<size_t>(dim), 0.0);
        return Chart(dim, std::move(periods));
    }
    static Chart mapping_torus(const Eigen::Matrix2i& twist, double roof) {
        Chart c(3, {1.0, 1.0, roof});
        c.twist_ = twist;
        c.roof_ = roof;
        c.is_mapping_torus_ = true;
        int det = twist(0, 0) * twist(1, 1) - twist(0, 1) * twist(1, 0);
        if (det != 1 && det != -1)
            throw Error(ErrorKind::config, "mapping torus twist must be unimodular");
        // integer inverse of a unimodular matrix
        c.twist_inv_ << det * twist(1, 1), -det * twist(0, 1),
                        -det * twist(1, 0), det * twist(0, 0);
        return c;
    }

    int dim() const { return dim_; }
    const std::vector<double>& periods() const { return periods_; }
    bool axis_periodic(int k) const { return periods_[static_cast<size_t>(k)] > 0.0; }
    bool is_mapping_torus() const { return is_mapping_torus_; }
    double roof() const { return roof_; }
    const Eigen::Matrix2i& twist() const { return twist_; }

    ChartKind kind() const {
        if (is_mapping_torus_) return ChartKind::mapping_torus;
        bool any = false, all = true;
        for (double p : periods_) {
            if (p > 0.0) any = true; else all = false;
        }
        if (!any) return ChartKind::euclidean;
        return all ? ChartKind::torus : ChartKind::cylinder;
    }

    bool operator==(const Chart& o) const {
        return dim_ == o.dim_ && periods_ == o.periods_ &&
               is_mapping_torus_ == o.is_mapping_torus_ &&
               (!is_mapping_torus_ || (twist_ == o.twist_ && roof_ == o.roof_));
    }
    bool operator!=(const Chart& o) const { return !(*this == o); }

    /// Wrap coordinates into the fundamental domain. Returns the tangent
    /// transport picked up by the wrap (identity except for mapping-torus
    /// roof crossings).
    Eigen::MatrixXd canonicalize(Eigen::VectorXd& x) const;

    /// canonicalize() discarding the transport.
    Eigen::VectorXd canonical(Eigen::VectorXd x) const {
        canonicalize(x);
        return x;
    }

    std::string describe() const;

private:
    Chart(int dim, std::vector<double> periods)
        : dim_(dim), periods_(std::move(periods)) {
        if (dim_ < 1) throw Error(ErrorKind::config, "chart dimension must be positive");
    }

    int dim_;
    std::vector<double> periods_;
    bool is_mapping_torus_ = false;
    double roof_ = 0.0;
    Eigen::Matrix2i twist_ = Eigen::Matrix2i::Identity();
    Eigen::Matrix2i twist_inv_ = Eigen::Matrix2i::Identity();
};

/// A point on a chart, stored canonically (periodic axes wrapped).
struct PhasePoint {
    Eigen::VectorXd coords;
    Chart chart;

    PhasePoint(Eigen::VectorXd c, Chart ch) : coords(std::move(c)), chart(std::move(ch)) {
        if (coords.size() != chart.dim())
            throw Error(ErrorKind::chart_mismatch, "coordinate length does not match chart dimension");
        chart.canonicalize(coords);
    }
    int dim() const { return chart.dim(); }
};

inline PhasePoint make_point(std::initializer_list<double> c, const Chart& ch) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (double x : c) v[i++] = x;
    return PhasePoint(v, ch);
}

/// Chart metric. Euclidean axes contribute plainly, periodic axes via the
/// wrap-around quotient distance. Mapping-torus distance minimizes over the
/// three nearest roof sheets with the twist applied; it is exact for points
/// less than half a roof apart in the suspension direction.
double distance(const PhasePoint& a, const PhasePoint& b);

/// Distance between raw coordinate vectors on a common chart.
double chart_distance(const Chart& chart, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Minimal displacement v with `to ~ from + v` in the chart's local frame:
/// periodic axes wrap into [-p/2, p/2), mapping-torus points pick the nearest
/// sheet representative. Meaningful for nearby points.
Eigen::VectorXd chart_displacement(const Chart& chart, const Eigen::VectorXd& from,
                                   const Eigen::VectorXd& to);

}  // namespace shadowlab

#endif

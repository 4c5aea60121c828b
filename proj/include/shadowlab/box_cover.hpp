#ifndef SHADOWLAB_BOX_COVER_HPP
#define SHADOWLAB_BOX_COVER_HPP

#include <vector>

#include "shadowlab/chart.hpp"

namespace shadowlab {

/// Uniform dyadic box cover of an axis-aligned region: every axis is bisected
/// `depth` times, giving 2^depth congruent cells per axis. Cells are indexed
/// by the flattened multi-index; `active` selects the working subset.
class BoxCover {
public:
    BoxCover(const Chart& chart, Eigen::VectorXd lo, Eigen::VectorXd hi, int depth);

    const Chart& chart() const { return chart_; }
    int depth() const { return depth_; }
    int per_axis() const { return 1 << depth_; }
    long box_count() const { return total_; }
    const Eigen::VectorXd& lo() const { return lo_; }
    const Eigen::VectorXd& hi() const { return hi_; }
    Eigen::VectorXd widths() const { return (hi_ - lo_) / per_axis(); }
    double box_diameter() const { return widths().norm(); }

    Eigen::VectorXd center(long idx) const;
    std::pair<Eigen::VectorXd, Eigen::VectorXd> box_bounds(long idx) const;
    /// Index of the box containing the point (canonicalized), or -1 outside.
    long locate(const Eigen::VectorXd& point) const;
    /// Distance from a point to a box, respecting periodic axes.
    double distance_to_box(const Eigen::VectorXd& point, long idx) const;
    /// All boxes within `radius` of the point.
    std::vector<long> boxes_near(const Eigen::VectorXd& point, double radius) const;

    void set_active(const std::vector<long>& boxes);
    void activate_all();
    bool active(long idx) const { return active_[static_cast<std::size_t>(idx)] != 0; }
    std::vector<long> active_boxes() const;

    std::vector<long> multi_index(long idx) const;
    long flat_index(const std::vector<long>& mi) const;

    /// Parent box index at a coarser depth (for refinement comparisons).
    long coarsen_index(long idx, int coarser_depth) const;

private:
    Chart chart_;
    Eigen::VectorXd lo_, hi_;
    int depth_;
    long total_;
    std::vector<std::uint8_t> active_;
};

}  // namespace shadowlab

#endif

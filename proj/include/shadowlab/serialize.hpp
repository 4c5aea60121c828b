#ifndef SHADOWLAB_SERIALIZE_HPP
#define SHADOWLAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "shadowlab/chain.hpp"
#include "shadowlab/critical.hpp"
#include "shadowlab/manifold.hpp"
#include "shadowlab/shadow.hpp"
#include "shadowlab/splitting.hpp"

namespace shadowlab {

using ordered_json = nlohmann::ordered_json;

/// All emitters are byte-stable: identical inputs produce identical text.
/// CSV numbers use %.17g (round-trip exact).

std::string trajectory_csv(const Trajectory& traj);           // t,x0,...,x{n-1}
std::string pseudo_orbit_csv(const PseudoOrbit& po);          // i,t_i,x0,...,x{n-1}
std::string gap_profile_csv(const GapProfile& profile);       // i,gap
std::string edge_list_csv(const TransitionGraph& tg);         // src,dst (box ids)
std::string manifold_csv(const ManifoldDisk& disk);           // point cloud
std::string tail_csv(const LimitTail& tail);                  // i,integral

ordered_json box_geometry_json(const BoxCover& cover);
ordered_json attractor_records_json(const TransitionGraph& tg,
                                    const std::vector<AttractorRecord>& records);
ordered_json shadow_report_json(const ShadowReport& report);
ordered_json critical_orbit_json(const CriticalOrbit& orbit);
ordered_json splitting_json(const SplittingEstimate& est);

std::string format_double(double v);

}  // namespace shadowlab

#endif

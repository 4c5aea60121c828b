#include "shadowlab/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace shadowlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t";
    for (int k = 0; k < traj.chart().dim(); ++k) os << ",x" << k;
    os << "\n";
    for (std::size_t s = 0; s < traj.size(); ++s) {
        os << format_double(traj.time(s));
        const auto& x = traj.raw_state(s);
        for (int k = 0; k < traj.chart().dim(); ++k) os << "," << format_double(x[k]);
        os << "\n";
    }
    return os.str();
}

std::string pseudo_orbit_csv(const PseudoOrbit& po) {
    std::ostringstream os;
    os << "i,t_i";
    int dim = po.entry(po.i_min()).point.dim();
    for (int k = 0; k < dim; ++k) os << ",x" << k;
    os << "\n";
    for (int i = po.i_min(); i <= po.i_max(); ++i) {
        const auto& e = po.entry(i);
        os << i << "," << format_double(e.duration);
        for (int k = 0; k < dim; ++k) os << "," << format_double(e.point.coords[k]);
        os << "\n";
    }
    return os.str();
}

std::string gap_profile_csv(const GapProfile& profile) {
    std::ostringstream os;
    os << "i,gap\n";
    for (int i = profile.i_min(); i <= profile.i_max(); ++i)
        os << i << "," << format_double(profile.gap(i)) << "\n";
    return os.str();
}

std::string edge_list_csv(const TransitionGraph& tg) {
    std::ostringstream os;
    os << "src,dst\n";
    for (int v = 0; v < tg.graph.n; ++v)
        for (int w : tg.graph.out[static_cast<std::size_t>(v)])
            os << tg.box_of_node(v) << "," << tg.box_of_node(w) << "\n";
    return os.str();
}

std::string manifold_csv(const ManifoldDisk& disk) {
    std::ostringstream os;
    int dim = disk.orbit.base.dim();
    for (int k = 0; k < dim; ++k) os << (k ? "," : "") << "x" << k;
    os << "\n";
    for (const auto& p : disk.samples) {
        for (int k = 0; k < dim; ++k) os << (k ? "," : "") << format_double(p.coords[k]);
        os << "\n";
    }
    return os.str();
}

std::string tail_csv(const LimitTail& tail) {
    std::ostringstream os;
    os << "i,integral\n";
    for (const auto& [i, v] : tail.backward) os << i << "," << format_double(v) << "\n";
    for (const auto& [i, v] : tail.forward) os << i << "," << format_double(v) << "\n";
    return os.str();
}

ordered_json box_geometry_json(const BoxCover& cover) {
    ordered_json j;
    j["chart"] = cover.chart().describe();
    j["depth"] = cover.depth();
    j["lo"] = std::vector<double>(cover.lo().data(), cover.lo().data() + cover.lo().size());
    j["hi"] = std::vector<double>(cover.hi().data(), cover.hi().data() + cover.hi().size());
    j["per_axis"] = cover.per_axis();
    j["box_diameter"] = cover.box_diameter();
    j["active"] = cover.active_boxes();
    return j;
}

ordered_json attractor_records_json(const TransitionGraph& tg,
                                    const std::vector<AttractorRecord>& records) {
    ordered_json arr = ordered_json::array();
    for (const auto& rec : records) {
        ordered_json j;
        auto boxes = [&](const std::vector<int>& nodes) {
            std::vector<long> out;
            out.reserve(nodes.size());
            for (int v : nodes) out.push_back(tg.box_of_node(v));
            return out;
        };
        j["boxes"] = boxes(rec.boxes);
        j["neighborhood"] = boxes(rec.neighborhood);
        j["dual"] = boxes(rec.dual);
        j["trivial"] = rec.trivial;
        arr.push_back(std::move(j));
    }
    return arr;
}

ordered_json shadow_report_json(const ShadowReport& report) {
    ordered_json j;
    const char* kind = "sup";
    switch (report.kind) {
        case ShadowReport::Kind::sup: kind = "sup"; break;
        case ShadowReport::Kind::average: kind = "average"; break;
        case ShadowReport::Kind::limit_tail: kind = "limit_tail"; break;
        case ShadowReport::Kind::asymptotic_average: kind = "asymptotic_average"; break;
    }
    j["kind"] = kind;
    j["value"] = report.value;
    j["tail"] = report.tail;
    j["segments"] = report.per_segment;
    j["first_index"] = report.first_index;
    j["orbit_defect"] = report.orbit_defect;
    ordered_json bps = ordered_json::array();
    for (const auto& [t, h] : report.reparam.breakpoints()) bps.push_back({t, h});
    j["reparam_breakpoints"] = std::move(bps);
    return j;
}

ordered_json critical_orbit_json(const CriticalOrbit& orbit) {
    ordered_json j;
    j["kind"] = orbit.kind == CriticalOrbit::Kind::singularity ? "singularity" : "periodic";
    j["base"] = std::vector<double>(orbit.base.coords.data(),
                                    orbit.base.coords.data() + orbit.base.coords.size());
    j["period"] = orbit.period;
    ordered_json mults = ordered_json::array();
    for (const auto& m : orbit.multipliers) mults.push_back({m.real(), m.imag()});
    j["multipliers"] = std::move(mults);
    j["hyperbolic"] = orbit.hyperbolic;
    j["index"] = orbit.index;
    return j;
}

ordered_json splitting_json(const SplittingEstimate& est) {
    ordered_json j;
    j["window"] = est.window;
    j["s_dim"] = est.s_dim;
    j["c_dim"] = est.c_dim;
    j["lambda_contract"] = est.lambda_contract;
    j["K_contract"] = est.K_contract;
    j["r2_contract"] = est.r2_contract;
    j["lambda_dom"] = est.lambda_dom;
    j["K_dom"] = est.K_dom;
    j["r2_dom"] = est.r2_dom;
    j["conclusive"] = est.conclusive;
    return j;
}

}  // namespace shadowlab

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "shadowlab/experiment.hpp"
#include "shadowlab/manifold.hpp"
#include "shadowlab/serialize.hpp"
#include "shadowlab/splitting.hpp"

namespace py = pybind11;
using namespace shadowlab;

namespace {

SmoothSystem system_by_kind(const std::string& kind,
                            const std::map<std::string, double>& params) {
    SystemSpec spec;
    spec.kind = kind;
    spec.params = params;
    return build_system(spec);
}

PhasePoint to_point(const SmoothSystem& sys, const Eigen::VectorXd& coords) {
    return PhasePoint(coords, sys.chart);
}

}  // namespace

PYBIND11_MODULE(_shadowlab, m) {
    m.doc() = "pseudo-orbit shadowing and chain dynamics laboratory";
    m.attr("__version__") = kShadowlabVersion;

    py::register_exception<Error>(m, "ShadowlabError");

    py::class_<SmoothSystem>(m, "System")
        .def_property_readonly("name", [](const SmoothSystem& s) { return s.name; })
        .def_property_readonly("dimension", [](const SmoothSystem& s) { return s.dimension; })
        .def("field", [](const SmoothSystem& s, const Eigen::VectorXd& x) { return s.field(x); })
        .def("jacobian",
             [](const SmoothSystem& s, const Eigen::VectorXd& x) { return s.jacobian(x); })
        .def("divergence",
             [](const SmoothSystem& s, const Eigen::VectorXd& x) {
                 return divergence(s, to_point(s, x));
             })
        .def("distance",
             [](const SmoothSystem& s, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                 return chart_distance(s.chart, a, b);
             });

    m.def(
        "make_system",
        [](const std::string& kind, const std::map<std::string, double>& params) {
            return system_by_kind(kind, params);
        },
        py::arg("kind"), py::arg("params") = std::map<std::string, double>{},
        "build a catalog system by kind (see catalog())");
    m.def("catalog", [] { return catalog_entries(); });

    m.def(
        "integrate",
        [](const SmoothSystem& sys, const Eigen::VectorXd& x0, double span, double abs_tol) {
            StepControl ctrl;
            ctrl.abs_tol = ctrl.rel_tol = abs_tol;
            Trajectory t = integrate(sys, to_point(sys, x0), span, ctrl);
            std::vector<double> times(t.times());
            std::vector<Eigen::VectorXd> states;
            states.reserve(t.size());
            for (std::size_t k = 0; k < t.size(); ++k) states.push_back(t.raw_state(k));
            return py::make_tuple(times, states);
        },
        py::arg("system"), py::arg("x0"), py::arg("span"), py::arg("abs_tol") = 1e-9,
        "integrate the flow; returns (times, states)");
    m.def(
        "flow_endpoint",
        [](const SmoothSystem& sys, const Eigen::VectorXd& x0, double span) {
            return flow(sys, to_point(sys, x0), span).coords;
        },
        py::arg("system"), py::arg("x0"), py::arg("span"));
    m.def(
        "monodromy",
        [](const SmoothSystem& sys, const Eigen::VectorXd& x0, double span) {
            auto seg = integrate_variational(sys, to_point(sys, x0), span);
            return seg.full_matrix(seg.matrices.size() - 1);
        },
        py::arg("system"), py::arg("x0"), py::arg("span"),
        "derivative of the time-span flow map at x0");

    py::class_<PseudoOrbit>(m, "PseudoOrbit")
        .def_property_readonly("i_min", &PseudoOrbit::i_min)
        .def_property_readonly("i_max", &PseudoOrbit::i_max)
        .def("point",
             [](const PseudoOrbit& po, int i) { return po.entry(i).point.coords; })
        .def("duration", [](const PseudoOrbit& po, int i) { return po.entry(i).duration; })
        .def("cumulative_time", &PseudoOrbit::cumulative_time);

    py::class_<GapProfile>(m, "GapProfile")
        .def_property_readonly("gaps", [](const GapProfile& g) { return g.gaps(); })
        .def_property_readonly("max_gap", &GapProfile::max_gap);

    m.def(
        "generate_noisy",
        [](const SmoothSystem& sys, const Eigen::VectorXd& x0, int segments, double delta,
           double duration, std::uint64_t seed) {
            return generate_noisy(sys, to_point(sys, x0), segments, delta, duration, seed);
        },
        py::arg("system"), py::arg("x0"), py::arg("segments"), py::arg("delta"),
        py::arg("duration") = 1.0, py::arg("seed") = 1);
    m.def("gap_profile", [](const SmoothSystem& sys, const PseudoOrbit& po) {
        return gap_profile(sys, po);
    });
    m.def("is_delta_pseudo", &is_delta_pseudo, py::arg("profile"), py::arg("delta"));
    m.def(
        "is_average_pseudo",
        [](const GapProfile& p, double delta) {
            auto r = is_average_pseudo(p, delta);
            return py::make_tuple(r.ok, r.N ? py::cast(*r.N) : py::none());
        },
        py::arg("profile"), py::arg("delta"));
    m.def(
        "is_limit_pseudo", [](const GapProfile& p) { return is_limit_pseudo(p); },
        py::arg("profile"));
    m.def("is_asymptotic_average_pseudo", &is_asymptotic_average_pseudo, py::arg("profile"),
          py::arg("tol"));

    py::class_<Reparametrization>(m, "Reparametrization")
        .def("__call__", &Reparametrization::operator())
        .def_property_readonly("breakpoints", &Reparametrization::breakpoints);

    py::class_<ShadowReport>(m, "ShadowReport")
        .def_property_readonly("value", [](const ShadowReport& r) { return r.value; })
        .def_property_readonly("orbit_defect",
                               [](const ShadowReport& r) { return r.orbit_defect; })
        .def_property_readonly("per_segment",
                               [](const ShadowReport& r) { return r.per_segment; })
        .def_property_readonly("reparam", [](const ShadowReport& r) { return r.reparam; });

    m.def(
        "search_shadowing_orbit",
        [](const SmoothSystem& sys, const PseudoOrbit& po, int candidate_seeds, int refine,
           std::uint64_t seed) {
            ShadowSearchParams params;
            params.candidate_seeds = candidate_seeds;
            params.refine = refine;
            params.seed = seed;
            params.grid.nodes_per_segment = 4;
            auto res = search_shadowing_orbit(sys, po, params);
            return py::make_tuple(res.x.coords, res.report);
        },
        py::arg("system"), py::arg("pseudo_orbit"), py::arg("candidate_seeds") = 2,
        py::arg("refine") = 8, py::arg("seed") = 1,
        "returns (best initial point, sup-kind ShadowReport)");
    m.def(
        "sup_statistic",
        [](const SmoothSystem& sys, const PseudoOrbit& po, const Eigen::VectorXd& x,
           const Reparametrization& h) {
            return sup_statistic(sys, po, to_point(sys, x), h);
        },
        py::arg("system"), py::arg("pseudo_orbit"), py::arg("x"), py::arg("h"));
    m.def("identity_reparam", [](double lo, double hi) {
        return Reparametrization::identity(lo, hi);
    });
    m.def(
        "align",
        [](const SmoothSystem& sys, const PseudoOrbit& po, const Eigen::VectorXd& x, int grid) {
            return align(sys, po, to_point(sys, x), AlignmentGrid{grid, 1.0});
        },
        py::arg("system"), py::arg("pseudo_orbit"), py::arg("x"), py::arg("grid") = 6);

    py::class_<Digraph>(m, "Digraph")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 return Digraph::from_edges(n, edges);
             }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", [](const Digraph& g) { return g.n; });
    m.def("chain_recurrent_set",
          [](const Digraph& g) { return chain_recurrent_set(g); });
    m.def("is_chain_transitive", [](const Digraph& g, const std::vector<int>& region) {
        return is_chain_transitive(g, region);
    });
    m.def(
        "omega_limit",
        [](const Digraph& g, const std::vector<int>& B, bool reverse) {
            return omega_limit(g, B, reverse);
        },
        py::arg("graph"), py::arg("B"), py::arg("reverse") = false);
    m.def("check_conley_identity", [](const Digraph& g) {
        auto r = check_conley_identity(g);
        return py::make_tuple(r.holds, r.truncated, r.attractor_count);
    });
    m.def("check_transitive_iff_no_proper_attractor",
          [](const Digraph& g, const std::vector<int>& region) {
              auto r = check_transitive_iff_no_proper_attractor(g, region);
              return py::make_tuple(r.chain_transitive, r.has_proper_attractor, r.consistent);
          });
    m.def("attractors", [](const Digraph& g) {
        std::vector<py::dict> out;
        for (const auto& rec : attractors(g)) {
            py::dict d;
            d["boxes"] = rec.boxes;
            d["neighborhood"] = rec.neighborhood;
            d["dual"] = rec.dual;
            d["trivial"] = rec.trivial;
            out.push_back(std::move(d));
        }
        return out;
    });

    py::class_<TransitionGraph>(m, "TransitionGraph")
        .def_property_readonly("node_count",
                               [](const TransitionGraph& tg) { return tg.graph.n; })
        .def_property_readonly("graph", [](const TransitionGraph& tg) { return tg.graph; })
        .def("node_center", [](const TransitionGraph& tg, int v) { return tg.node_center(v); })
        .def_property_readonly("box_diameter", [](const TransitionGraph& tg) {
            return tg.cover.box_diameter();
        });
    m.def(
        "build_transition_graph",
        [](const SmoothSystem& sys, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
           int depth, double t_step, int samples_per_box, std::uint64_t seed) {
            BoxCover cover(sys.chart, lo, hi, depth);
            TransitionParams params;
            params.t_step = t_step;
            params.samples_per_box = samples_per_box;
            return build_transition_graph(sys, cover, params, seed);
        },
        py::arg("system"), py::arg("lo"), py::arg("hi"), py::arg("depth"),
        py::arg("t_step") = 1.0, py::arg("samples_per_box") = 8, py::arg("seed") = 1);
    m.def("hausdorff_distance",
          [](const SmoothSystem& sys, const std::vector<Eigen::VectorXd>& A,
             const std::vector<Eigen::VectorXd>& B) {
              return hausdorff_distance(sys.chart, A, B);
          });

    py::class_<CriticalOrbit>(m, "CriticalOrbit")
        .def_property_readonly(
            "kind",
            [](const CriticalOrbit& o) {
                return o.kind == CriticalOrbit::Kind::singularity ? "singularity" : "periodic";
            })
        .def_property_readonly("base", [](const CriticalOrbit& o) { return o.base.coords; })
        .def_property_readonly("period", [](const CriticalOrbit& o) { return o.period; })
        .def_property_readonly("multipliers",
                               [](const CriticalOrbit& o) { return o.multipliers; })
        .def_property_readonly("hyperbolic", [](const CriticalOrbit& o) { return o.hyperbolic; })
        .def_property_readonly("index", [](const CriticalOrbit& o) { return o.index; });
    m.def(
        "find_critical_orbits",
        [](const SmoothSystem& sys, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
           int grid_per_axis, bool periodic, double max_period) {
            CriticalSearchParams params;
            params.grid_per_axis = grid_per_axis;
            params.periodic = periodic;
            params.periodic_search.max_period = max_period;
            return find_critical_orbits(sys, lo, hi, params);
        },
        py::arg("system"), py::arg("lo"), py::arg("hi"), py::arg("grid_per_axis") = 4,
        py::arg("periodic") = true, py::arg("max_period") = 8.0);
    m.def("morse_index", &morse_index);
    m.def("classify_periodic", [](const SmoothSystem& sys, const Eigen::VectorXd& base,
                                  double period) {
        return classify_periodic(sys, PhasePoint(base, sys.chart), period);
    });
    m.def(
        "estimate_splitting",
        [](const SmoothSystem& sys, const Eigen::VectorXd& x0, double span, int s_dim) {
            auto traj = integrate(sys, to_point(sys, x0), span);
            auto est = estimate_splitting(sys, traj, s_dim);
            py::dict d;
            d["lambda_contract"] = est.lambda_contract;
            d["lambda_dom"] = est.lambda_dom;
            d["r2_contract"] = est.r2_contract;
            d["r2_dom"] = est.r2_dom;
            d["conclusive"] = est.conclusive;
            return d;
        },
        py::arg("system"), py::arg("x0"), py::arg("span") = 20.0, py::arg("s_dim") = 1);

    m.def(
        "run_suite_file",
        [](const std::filesystem::path& config) {
            auto spec = load_experiment(config);
            Report report = run_suite(spec);
            emit_report(report, spec.output_dir, {"json", "csv"});
            std::vector<py::dict> verdicts;
            for (const auto& v : report.verdicts) {
                py::dict d;
                d["claim"] = v.claim_id;
                d["status"] = verdict_status_name(v.status);
                d["statistic"] = v.statistic;
                d["threshold"] = v.threshold;
                verdicts.push_back(std::move(d));
            }
            return py::make_tuple(verdicts, report.exit_code());
        },
        py::arg("config"), "run an experiment config; returns (verdicts, exit_code)");
}

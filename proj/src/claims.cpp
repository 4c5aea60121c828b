#include "shadowlab/claims.hpp"

#include <fstream>

#include "shadowlab/serialize.hpp"

namespace shadowlab {

const char* verdict_status_name(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::pass: return "pass";
        case Verdict::Status::fail: return "fail";
        case Verdict::Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void ClaimContext::write_artifact(const std::string& name, const std::string& contents) const {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write artifact " + name);
    out << contents;
    if (artifacts) artifacts->push_back(name);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> default_region(const SmoothSystem& sys) {
    Eigen::VectorXd lo(sys.dimension), hi(sys.dimension);
    if (sys.kind == "pendulum") {
        lo << 0.0, -2.5;
        hi << 2.0 * M_PI, 2.5;
    } else if (sys.kind == "gradient_morse_smale") {
        lo.setZero();
        hi.setOnes();
    } else if (sys.kind == "lorenz") {
        lo << -25.0, -25.0, 0.0;
        hi << 25.0, 25.0, 50.0;
    } else if (sys.chart.is_mapping_torus()) {
        lo << 0.0, 0.0, 0.0;
        hi << 1.0, 1.0, sys.chart.roof();
    } else {
        lo.setConstant(-2.0);
        hi.setConstant(2.0);
    }
    return {lo, hi};
}

namespace {

PhasePoint default_start(const SmoothSystem& sys, Rng& rng) {
    auto [lo, hi] = default_region(sys);
    // a point with generic dynamics: sampled inside the region, nudged off
    // exact symmetry axes
    Eigen::VectorXd x(sys.dimension);
    for (int k = 0; k < sys.dimension; ++k)
        x[k] = lo[k] + (hi[k] - lo[k]) * (0.3 + 0.4 * rng.uniform01());
    if (sys.kind == "pendulum") x[1] = 0.8;  // stay in the libration zone
    return PhasePoint(x, sys.chart);
}

bool is_conservative(const SmoothSystem& sys) {
    Rng rng(0xD1CE);
    auto [lo, hi] = default_region(sys);
    for (int t = 0; t < 32; ++t) {
        Eigen::VectorXd x(sys.dimension);
        for (int k = 0; k < sys.dimension; ++k) x[k] = rng.uniform(lo[k], hi[k]);
        if (std::abs(divergence(sys, PhasePoint(x, sys.chart))) > 1e-8) return false;
    }
    return true;
}

Verdict pass_fail(const std::string& id, bool ok, double statistic, double threshold,
                  const std::string& note = "") {
    Verdict v{id, ok ? Verdict::Status::pass : Verdict::Status::fail, statistic, threshold, note};
    return v;
}

// ---- flow-core claims ------------------------------------------------------

Verdict run_jacobian_consistency(const ClaimContext& ctx) {
    auto [lo, hi] = default_region(ctx.sys);
    double err = jacobian_consistency_error(ctx.sys, lo, hi, 128, ctx.seed());
    return pass_fail("flow.jacobian_consistency", err < 1e-5, err, 1e-5);
}

Verdict run_divergence_zero(const ClaimContext& ctx) {
    auto [lo, hi] = default_region(ctx.sys);
    Rng rng(ctx.seed() ^ 0x11);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        Eigen::VectorXd x(ctx.sys.dimension);
        for (int k = 0; k < ctx.sys.dimension; ++k) x[k] = rng.uniform(lo[k], hi[k]);
        worst = std::max(worst, std::abs(divergence(ctx.sys, PhasePoint(x, ctx.sys.chart))));
    }
    return pass_fail("flow.divergence_zero", worst < 1e-10, worst, 1e-10);
}

Verdict run_volume_preserved(const ClaimContext& ctx) {
    Rng rng(ctx.seed() ^ 0x12);
    auto x0 = default_start(ctx.sys, rng);
    auto seg = integrate_variational(ctx.sys, x0, 10.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < seg.matrices.size(); ++k)
        worst = std::max(worst, std::abs(seg.full_matrix(k).determinant() - 1.0));
    return pass_fail("flow.volume_preserved", worst < 1e-4, worst, 1e-4);
}

// ---- shadowing claims ------------------------------------------------------

struct NoisyRun {
    PseudoOrbit po;
    GapProfile profile;
};

NoisyRun make_noisy_run(const ClaimContext& ctx, double delta, int segments) {
    Rng rng(ctx.seed() ^ 0x21);
    if (ctx.sys.kind == "linear") {
        // linear fields escape along generic orbits; the meaningful window is
        // fresh noise around the fixed point, still a delta-pseudo orbit
        std::vector<TimedPoint> entries;
        for (int i = 0; i <= segments; ++i) {
            Eigen::VectorXd p = delta > 0 ? rng.in_ball(ctx.sys.dimension, delta / 4.0)
                                          : Eigen::VectorXd::Zero(ctx.sys.dimension);
            entries.push_back({PhasePoint(p, ctx.sys.chart), 1.0});
        }
        PseudoOrbit po(entries, 0, OrbitClass::plain);
        auto profile = gap_profile(ctx.sys, po);
        return {std::move(po), std::move(profile)};
    }
    auto x0 = default_start(ctx.sys, rng);
    auto po = generate_noisy(ctx.sys, x0, segments, delta, 1.0, ctx.seed() ^ 0x22);
    auto profile = gap_profile(ctx.sys, po);
    return {std::move(po), std::move(profile)};
}

// Defect-free checkpointed realization of an exact pseudo-orbit window;
// single sweeps from one point lose track on expanding systems.
OrbitCurve exact_curve(const ClaimContext& ctx, const PseudoOrbit& po) {
    std::vector<std::pair<double, PhasePoint>> cps;
    for (int i = po.i_min(); i <= po.i_max(); ++i)
        cps.emplace_back(po.cumulative_time(i), po.entry(i).point);
    return OrbitCurve::from_checkpoints(ctx.sys, cps, po.entry(po.i_max()).duration);
}

Verdict run_delta_pseudo_valid(const ClaimContext& ctx) {
    const double delta = ctx.spec.param_or("delta", 1e-3);
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 60));
    auto run = make_noisy_run(ctx, delta, segments);
    ctx.write_artifact("gaps.csv", gap_profile_csv(run.profile));
    return pass_fail("shadow.delta_pseudo_valid", is_delta_pseudo(run.profile, delta),
                     run.profile.max_gap(), delta);
}

Verdict run_sup_small(const ClaimContext& ctx) {
    const double delta = ctx.spec.param_or("delta", 1e-3);
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 60));
    const double threshold = ctx.spec.param_or("sup_threshold", 0.05);
    auto run = make_noisy_run(ctx, delta, segments);
    ShadowSearchParams params;
    params.candidate_seeds = static_cast<int>(ctx.spec.param_or("candidates", 2));
    params.refine = static_cast<int>(ctx.spec.param_or("refine", 8));
    params.seed = ctx.seed() ^ 0x23;
    params.grid.nodes_per_segment = 4;
    auto res = search_shadowing_orbit(ctx.sys, run.po, params);
    ctx.write_artifact("shadow_report.json", shadow_report_json(res.report).dump(2) + "\n");
    return pass_fail("shadow.sup_small", res.report.value < threshold, res.report.value,
                     threshold);
}

Verdict run_orbit_defect(const ClaimContext& ctx) {
    const double delta = ctx.spec.param_or("delta", 1e-3);
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 40));
    auto run = make_noisy_run(ctx, delta, segments);
    ShadowSearchParams params;
    params.candidate_seeds = 1;
    params.refine = static_cast<int>(ctx.spec.param_or("refine", 8));
    params.seed = ctx.seed() ^ 0x24;
    params.grid.nodes_per_segment = 4;
    auto res = search_shadowing_orbit(ctx.sys, run.po, params);
    return pass_fail("shadow.orbit_defect", res.best_defect < 1e-8, res.best_defect, 1e-8);
}

Verdict run_average_class(const ClaimContext& ctx) {
    const double delta = ctx.spec.param_or("delta", 1e-3);
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 60));
    auto run = make_noisy_run(ctx, delta, segments);
    auto check = is_average_pseudo(run.profile, delta);
    return pass_fail("average.class_membership", check.ok,
                     check.N ? static_cast<double>(*check.N) : -1.0,
                     static_cast<double>(run.profile.size() / 2));
}

Verdict run_average_statistic(const ClaimContext& ctx) {
    const double delta = ctx.spec.param_or("delta", 1e-3);
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 60));
    const double threshold = ctx.spec.param_or("average_threshold", 0.05);
    auto run = make_noisy_run(ctx, delta, segments);
    ShadowSearchParams params;
    params.candidate_seeds = 1;
    params.refine = 8;
    params.seed = ctx.seed() ^ 0x25;
    params.grid.nodes_per_segment = 4;
    auto res = search_shadowing_orbit(ctx.sys, run.po, params);
    double avg = average_statistic(ctx.sys, run.po, res.curve, res.report.reparam);
    return pass_fail("average.statistic_small", avg < threshold, avg, threshold);
}

Verdict run_limit_exact_passes(const ClaimContext& ctx) {
    const int segments = static_cast<int>(ctx.spec.param_or("segments", 40));
    auto run = make_noisy_run(ctx, 0.0, segments);
    auto curve = exact_curve(ctx, run.po);
    auto lt = limit_statistic(ctx.sys, run.po, curve,
                              Reparametrization::identity(0.0, static_cast<double>(segments)));
    ctx.write_artifact("limit_tail.csv", tail_csv(lt));
    return pass_fail("limit.exact_tail_passes", lt.pass(), lt.max_tail(), lt.fitted.C);
}

Verdict run_limit_falsifier(const ClaimContext& ctx) {
    // the attractor-crossing construction: backward tail at the sink, forward
    // tail at the source; no orbit can satisfy both limits
    auto sink = make_point({0.5, 0.5}, ctx.sys.chart);
    auto source = make_point({0.0, 0.0}, ctx.sys.chart);
    const int half = static_cast<int>(ctx.spec.param_or("half_window", 16));
    auto po = concat_through(ctx.sys, sink, source, half, half, OrbitClass::limit);
    ShadowSearchParams params;
    params.candidate_seeds = static_cast<int>(ctx.spec.param_or("candidates", 3));
    params.refine = 6;
    params.seed = ctx.seed() ^ 0x28;
    params.grid.nodes_per_segment = 4;

    // the attraction margin of the sink: half its distance to the saddles
    const double eps0 = 0.25;
    double worst_obstruction = std::numeric_limits<double>::infinity();
    auto res = search_shadowing_orbit(ctx.sys, po, params);
    auto lt = limit_statistic(ctx.sys, po, res.curve, res.report.reparam);
    worst_obstruction = std::min(worst_obstruction, lt.obstruction());
    ctx.write_artifact("falsifier_tail.csv", tail_csv(lt));
    bool rejected = worst_obstruction > eps0 / 2 && worst_obstruction > 0.01;
    Verdict v = pass_fail("limit.falsifier_rejected", rejected, worst_obstruction, eps0 / 2);
    v.note = "epsilon_0 = " + format_double(eps0);
    return v;
}

// Exact symmetric window [-half, half+1] (gap indices then span [-half, half]).
PseudoOrbit symmetric_exact_window(const ClaimContext& ctx, int half) {
    if (ctx.sys.kind == "linear") {
        std::vector<TimedPoint> entries(
            static_cast<std::size_t>(2 * half + 2),
            {PhasePoint(Eigen::VectorXd::Zero(ctx.sys.dimension), ctx.sys.chart), 1.0});
        return PseudoOrbit(entries, half, OrbitClass::asymptotic);
    }
    Rng rng(ctx.seed() ^ 0x29);
    auto x0 = default_start(ctx.sys, rng);
    Trajectory fwd = integrate(ctx.sys, x0, half + 2.0);
    Trajectory bwd = integrate(ctx.sys, x0, -(half + 1.0));
    std::vector<TimedPoint> entries;
    for (int i = -half; i <= half + 1; ++i) {
        PhasePoint p = i < 0 ? bwd.at(static_cast<double>(i)) : fwd.at(static_cast<double>(i));
        entries.push_back({p, 1.0});
    }
    return PseudoOrbit(entries, half, OrbitClass::asymptotic);
}

Verdict run_asymptotic_class(const ClaimContext& ctx) {
    const int half = static_cast<int>(ctx.spec.param_or("half_window", 30));
    auto po = symmetric_exact_window(ctx, half);
    auto profile = gap_profile(ctx.sys, po);
    bool ok = is_asymptotic_average_pseudo(profile, ctx.spec.param_or("tol", 1e-4));
    return pass_fail("asymptotic.class_membership", ok, profile.max_gap(),
                     ctx.spec.param_or("tol", 1e-4));
}

Verdict run_asymptotic_statistic(const ClaimContext& ctx) {
    const int half = static_cast<int>(ctx.spec.param_or("half_window", 30));
    auto po = symmetric_exact_window(ctx, half);
    auto curve = exact_curve(ctx, po);
    auto h = Reparametrization::identity(-static_cast<double>(half) - 1.0,
                                         static_cast<double>(half) + 2.0);
    auto aa = asymptotic_statistic(ctx.sys, po, curve, h);
    double tol = ctx.spec.param_or("tol", 1e-4);
    double worst = 0.0;
    for (double v : aa.forward) worst = std::max(worst, v);
    for (double v : aa.backward) worst = std::max(worst, v);
    return pass_fail("asymptotic.statistic_small", aa.pass(tol), worst, tol);
}

// ---- chain dynamics claims -------------------------------------------------

Verdict run_conley_digraphs(const ClaimContext& ctx) {
    Rng rng(ctx.seed() ^ 0x31);
    const int trials = static_cast<int>(ctx.spec.param_or("digraph_trials", 2000));
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 1 + static_cast<int>(rng.below(12));
        std::vector<std::pair<int, int>> edges;
        double p = rng.uniform(0.05, 0.6);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (rng.uniform01() < p) edges.emplace_back(a, b);
        auto g = Digraph::from_edges(n, edges);
        auto c = check_conley_identity(g);
        if (!c.holds || c.truncated) ++failures;
    }
    return pass_fail("chain.conley_digraphs", failures == 0, failures, 0);
}

Verdict run_transitive_iff_digraphs(const ClaimContext& ctx) {
    Rng rng(ctx.seed() ^ 0x32);
    const int trials = static_cast<int>(ctx.spec.param_or("digraph_trials", 2000));
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        int n = 1 + static_cast<int>(rng.below(12));
        std::vector<std::pair<int, int>> edges;
        double p = rng.uniform(0.05, 0.6);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (rng.uniform01() < p) edges.emplace_back(a, b);
        auto g = Digraph::from_edges(n, edges);
        std::vector<int> region(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) region[static_cast<std::size_t>(v)] = v;
        if (!check_transitive_iff_no_proper_attractor(g, region).consistent) ++failures;
    }
    return pass_fail("chain.transitive_iff_digraphs", failures == 0, failures, 0);
}

Verdict run_recurrence_localized(const ClaimContext& ctx) {
    const int depth = static_cast<int>(ctx.spec.param_or("depth", 6));
    auto [lo, hi] = default_region(ctx.sys);
    BoxCover cover(ctx.sys.chart, lo, hi, depth);
    TransitionParams params;
    params.samples_per_box = static_cast<int>(ctx.spec.param_or("samples_per_box", 8));
    // the recurrent cluster around a sink has radius ~ delta_fat/(1-e^{-lambda t});
    // a longer step keeps it inside the 2-diameter localization bound
    params.t_step = ctx.spec.param_or("t_step", 3.0);
    auto tg = build_transition_graph(ctx.sys, cover, params, ctx.seed() ^ 0x33);
    ctx.write_artifact("edges.csv", edge_list_csv(tg));
    ctx.write_artifact("boxes.json", box_geometry_json(cover).dump(2) + "\n");
    auto cr = chain_recurrent_set(tg.graph);
    auto crit = gradient_morse_smale_critical_points();
    double worst = 0.0;
    for (int v : cr) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : crit)
            best = std::min(best, chart_distance(ctx.sys.chart, tg.node_center(v), c));
        worst = std::max(worst, best);
    }
    double bound = 2.0 * cover.box_diameter();
    Verdict v = pass_fail("chain.recurrence_localized", worst <= bound && !cr.empty(), worst,
                          bound);
    v.note = "recurrent boxes: " + std::to_string(cr.size());
    return v;
}

Verdict run_region_no_proper_attractor(const ClaimContext& ctx) {
    const int depth = static_cast<int>(ctx.spec.param_or("depth", 6));
    auto [lo, hi] = default_region(ctx.sys);
    BoxCover cover(ctx.sys.chart, lo, hi, depth);
    auto tg = build_transition_graph(ctx.sys, cover, {}, ctx.seed() ^ 0x34);
    // libration annulus: energy strictly inside (-1, 1)
    std::vector<int> region;
    for (int v = 0; v < tg.graph.n; ++v) {
        double h = pendulum_energy(tg.node_center(v));
        if (h > -0.9 && h < 0.9) region.push_back(v);
    }
    if (region.empty())
        return Verdict{"chain.region_no_proper_attractor", Verdict::Status::inconclusive, 0, 0,
                       "empty libration region"};
    ctx.write_artifact("attractors.json",
                       attractor_records_json(tg, attractors(tg.graph)).dump(2) + "\n");
    auto check = check_transitive_iff_no_proper_attractor(tg.graph, region);
    Verdict v = pass_fail("chain.region_no_proper_attractor",
                          !check.has_proper_attractor && check.chain_transitive,
                          check.has_proper_attractor ? 1.0 : 0.0, 0.0);
    v.note = "region boxes: " + std::to_string(region.size());
    return v;
}

Verdict run_periodic_approximation(const ClaimContext& ctx) {
    const int depth = static_cast<int>(ctx.spec.param_or("depth", 5));
    auto [lo, hi] = default_region(ctx.sys);
    BoxCover cover(ctx.sys.chart, lo, hi, depth);
    const double h_mid = ctx.spec.param_or("band_energy", -0.3);
    const double h_width = ctx.spec.param_or("band_width", 0.12);
    std::vector<long> band;
    for (long b = 0; b < cover.box_count(); ++b)
        if (std::abs(pendulum_energy(cover.center(b)) - h_mid) < h_width) band.push_back(b);
    cover.set_active(band);
    auto tg = build_transition_graph(ctx.sys, cover, {}, ctx.seed() ^ 0x35);
    std::vector<int> region(static_cast<std::size_t>(tg.graph.n));
    for (int v = 0; v < tg.graph.n; ++v) region[static_cast<std::size_t>(v)] = v;
    auto res = approximate_by_periodic_orbit(ctx.sys, tg, region);
    if (!res.orbit)
        return Verdict{"chain.periodic_approximation", Verdict::Status::fail, res.dH,
                       2 * cover.box_diameter(), res.diagnostics};
    ctx.write_artifact("periodic_orbit.csv", trajectory_csv(*res.orbit));
    return pass_fail("chain.periodic_approximation", res.dH < 2 * cover.box_diameter(), res.dH,
                     2 * cover.box_diameter(), res.diagnostics);
}

// ---- hyperbolicity claims --------------------------------------------------

Verdict run_critical_orbits_verified(const ClaimContext& ctx) {
    auto [lo, hi] = default_region(ctx.sys);
    CriticalSearchParams params;
    params.grid_per_axis = static_cast<int>(ctx.spec.param_or("grid_per_axis", 4));
    params.periodic_search.max_period = ctx.spec.param_or("max_period", 8.0);
    auto orbits = find_critical_orbits(ctx.sys, lo, hi, params);
    double worst = 0.0;
    ordered_json arr = ordered_json::array();
    for (const auto& o : orbits) {
        arr.push_back(critical_orbit_json(o));
        if (o.kind == CriticalOrbit::Kind::singularity)
            worst = std::max(worst, ctx.sys.eval(o.base).norm());
    }
    ctx.write_artifact("critical_orbits.json", arr.dump(2) + "\n");
    Verdict v = pass_fail("hyper.critical_orbits_verified", worst < 1e-9, worst, 1e-9);
    v.note = "orbits found: " + std::to_string(orbits.size());
    return v;
}

Verdict run_splitting_rates(const ClaimContext& ctx) {
    Rng rng(ctx.seed() ^ 0x41);
    auto x0 = default_start(ctx.sys, rng);
    // settle transients, then estimate over a 20-unit window
    PhasePoint settled = flow(ctx.sys, x0, ctx.spec.param_or("settle", 10.0));
    auto traj = integrate(ctx.sys, settled, ctx.spec.param_or("window", 20.0));
    auto est = estimate_splitting(ctx.sys, traj, static_cast<int>(ctx.spec.param_or("s_dim", 1)));
    ctx.write_artifact("splitting.json", splitting_json(est).dump(2) + "\n");
    if (!est.conclusive)
        return Verdict{"hyper.splitting_rates", Verdict::Status::inconclusive,
                       est.lambda_contract, 0.0, "fit R^2 below 0.9"};
    return pass_fail("hyper.splitting_rates", est.lambda_contract > 0.0, est.lambda_contract,
                     0.0);
}

Verdict run_index_constancy(const ClaimContext& ctx) {
    auto [lo, hi] = default_region(ctx.sys);
    CriticalSearchParams params;
    params.grid_per_axis = static_cast<int>(ctx.spec.param_or("grid_per_axis", 3));
    params.periodic_search.max_period = ctx.spec.param_or("max_period", 8.0);
    auto orbits = find_critical_orbits(ctx.sys, lo, hi, params);
    std::vector<CriticalOrbit> periodic;
    for (auto& o : orbits)
        if (o.kind == CriticalOrbit::Kind::periodic && o.hyperbolic) periodic.push_back(o);
    if (periodic.empty()) {
        // constancy over an empty collection is vacuous; fields without
        // periodic orbits (linear, gradients) pass without a histogram
        Verdict v = pass_fail("hyper.index_constancy", true, 0.0, 1.0);
        v.note = "vacuous: no hyperbolic periodic orbits found";
        return v;
    }
    auto r = check_index_constancy(periodic);
    std::string hist;
    for (const auto& [idx, cnt] : r.indices)
        hist += std::to_string(idx) + "x" + std::to_string(cnt) + " ";
    Verdict v = pass_fail("hyper.index_constancy", r.constant,
                          static_cast<double>(r.indices.size()), 1.0);
    v.note = "indices: " + hist;
    return v;
}

// ---- manifold claims -------------------------------------------------------

std::optional<CriticalOrbit> first_saddle(const ClaimContext& ctx) {
    auto [lo, hi] = default_region(ctx.sys);
    CriticalSearchParams params;
    params.grid_per_axis = 4;
    params.periodic = false;
    auto orbits = find_critical_orbits(ctx.sys, lo, hi, params);
    for (const auto& o : orbits)
        if (o.hyperbolic && o.index > 0 && o.index < ctx.sys.dimension) return o;
    return std::nullopt;
}

Verdict run_manifold_inequality(const ClaimContext& ctx) {
    auto saddle = first_saddle(ctx);
    if (!saddle)
        return Verdict{"manifold.defining_inequality", Verdict::Status::inconclusive, 0, 0,
                       "no hyperbolic saddle singularity found"};
    const double eps = ctx.spec.param_or("eps", 0.4);
    const double horizon = ctx.spec.param_or("horizon", 20.0);
    double worst = 0.0;
    for (auto side : {ManifoldSide::stable, ManifoldSide::unstable}) {
        auto disk = local_manifold(ctx.sys, *saddle, side, eps, {}, horizon);
        ctx.write_artifact(side == ManifoldSide::stable ? "stable_disk.csv" : "unstable_disk.csv",
                           manifold_csv(disk));
        double dir = side == ManifoldSide::stable ? 1.0 : -1.0;
        for (const auto& y : disk.samples) {
            Trajectory check = integrate(ctx.sys, y, dir * horizon);
            for (std::size_t k = 0; k < check.size(); ++k)
                worst = std::max(worst, distance(check.point(k), saddle->base) - eps);
        }
    }
    return pass_fail("manifold.defining_inequality", worst <= 0.0, worst, 0.0);
}

Verdict run_intersection_symmetry(const ClaimContext& ctx) {
    auto saddle = first_saddle(ctx);
    if (!saddle)
        return Verdict{"manifold.intersection_symmetry", Verdict::Status::inconclusive, 0, 0,
                       "no hyperbolic saddle singularity found"};
    const double eps = ctx.spec.param_or("eps", 0.4);
    const double tol = ctx.spec.param_or("tol", 1e-4);
    auto ws = local_manifold(ctx.sys, *saddle, ManifoldSide::stable, eps);
    auto wu = local_manifold(ctx.sys, *saddle, ManifoldSide::unstable, eps);
    IntersectionParams ip;
    ip.propagate_time = ctx.spec.param_or("propagate", 10.0);
    auto a = detect_intersection(ctx.sys, ws, wu, tol, ip);
    auto b = detect_intersection(ctx.sys, wu, ws, tol, ip);
    if (a.empty() && b.empty())
        return Verdict{"manifold.intersection_symmetry", Verdict::Status::inconclusive, 0, tol,
                       "no intersections at this resolution"};
    if (a.empty() != b.empty())
        return pass_fail("manifold.intersection_symmetry", false, -1.0, tol);
    std::vector<Eigen::VectorXd> pa, pb;
    for (const auto& p : a) pa.push_back(p.coords);
    for (const auto& p : b) pb.push_back(p.coords);
    double dh = hausdorff_distance(ctx.sys.chart, pa, pb);
    return pass_fail("manifold.intersection_symmetry", dh < tol, dh, tol);
}

bool any_system(const SmoothSystem&) { return true; }

bool gradient_only(const SmoothSystem& sys) { return sys.kind == "gradient_morse_smale"; }

bool pendulum_only(const SmoothSystem& sys) { return sys.kind == "pendulum"; }

}  // namespace

const std::vector<ClaimInfo>& claim_registry() {
    static const std::vector<ClaimInfo> registry = [] {
        std::vector<ClaimInfo> r;
        auto all_suites = std::vector<Suite>{
            Suite::shadowing,     Suite::average_shadowing, Suite::limit_shadowing,
            Suite::asymptotic_shadowing, Suite::chain_dynamics, Suite::hyperbolicity,
            Suite::manifolds};
        r.push_back({"flow.jacobian_consistency",
                     "field and Jacobian agree under finite differences",
                     "flow-core.SmoothSystem", all_suites, any_system, run_jacobian_consistency});
        r.push_back({"flow.divergence_zero", "divergence vanishes at random sample points",
                     "flow-core.divergence", all_suites, is_conservative, run_divergence_zero});
        r.push_back({"flow.volume_preserved", "det DX_t stays within 1e-4 of 1 for t <= 10",
                     "flow-core.integrate_variational", all_suites, is_conservative,
                     run_volume_preserved});
        r.push_back({"shadow.delta_pseudo_valid", "noisy generation respects its delta bound",
                     "pseudo-orbit.is_delta_pseudo", {Suite::shadowing}, any_system,
                     run_delta_pseudo_valid});
        r.push_back({"shadow.sup_small", "noisy pseudo-orbits are sup-shadowed below threshold",
                     "shadow-verify.sup_statistic", {Suite::shadowing}, any_system,
                     run_sup_small});
        r.push_back({"shadow.orbit_defect", "the shadowing search produces a near-orbit",
                     "shadow-verify.search_shadowing_orbit", {Suite::shadowing}, any_system,
                     run_orbit_defect});
        r.push_back({"average.class_membership", "noisy windows lie in the average class",
                     "pseudo-orbit.is_average_pseudo", {Suite::average_shadowing}, any_system,
                     run_average_class});
        r.push_back({"average.statistic_small", "average statistic below threshold",
                     "shadow-verify.average_statistic", {Suite::average_shadowing}, any_system,
                     run_average_statistic});
        r.push_back({"limit.exact_tail_passes", "exact orbit windows pass the limit tails",
                     "shadow-verify.limit_statistic", {Suite::limit_shadowing}, any_system,
                     run_limit_exact_passes});
        r.push_back({"limit.falsifier_rejected",
                     "attractor-crossing pseudo-orbit fails limit shadowing",
                     "shadow-verify.limit_statistic", {Suite::limit_shadowing}, gradient_only,
                     run_limit_falsifier});
        r.push_back({"asymptotic.class_membership", "symmetric exact windows are in the class",
                     "pseudo-orbit.is_asymptotic_average_pseudo", {Suite::asymptotic_shadowing},
                     any_system, run_asymptotic_class});
        r.push_back({"asymptotic.statistic_small", "asymptotic averages decay below tolerance",
                     "shadow-verify.asymptotic_statistic", {Suite::asymptotic_shadowing},
                     any_system, run_asymptotic_statistic});
        r.push_back({"chain.conley_digraphs",
                     "chain recurrence equals the attractor-dual intersection on digraphs",
                     "chain-graph.check_conley_identity", {Suite::chain_dynamics}, any_system,
                     run_conley_digraphs});
        r.push_back({"chain.transitive_iff_digraphs",
                     "chain transitivity iff no proper attractor on digraphs",
                     "chain-graph.check_transitive_iff_no_proper_attractor",
                     {Suite::chain_dynamics}, any_system, run_transitive_iff_digraphs});
        r.push_back({"chain.recurrence_localized",
                     "chain recurrent boxes localize at the critical points",
                     "chain-graph.chain_recurrent_set", {Suite::chain_dynamics}, gradient_only,
                     run_recurrence_localized});
        r.push_back({"chain.region_no_proper_attractor",
                     "the libration annulus has no proper attractor",
                     "chain-graph.attractors", {Suite::chain_dynamics}, pendulum_only,
                     run_region_no_proper_attractor});
        r.push_back({"chain.periodic_approximation",
                     "a chain transitive band is approximated by a periodic orbit",
                     "chain-graph.approximate_by_periodic_orbit", {Suite::chain_dynamics},
                     pendulum_only, run_periodic_approximation});
        r.push_back({"hyper.critical_orbits_verified",
                     "located critical orbits re-verify their residuals",
                     "hyperbolicity.find_critical_orbits", {Suite::hyperbolicity}, any_system,
                     run_critical_orbits_verified});
        r.push_back({"hyper.splitting_rates", "finite-time contraction rate is positive",
                     "hyperbolicity.estimate_splitting", {Suite::hyperbolicity}, any_system,
                     run_splitting_rates});
        r.push_back({"hyper.index_constancy", "hyperbolic periodic orbits share one index",
                     "hyperbolicity.check_index_constancy", {Suite::hyperbolicity}, any_system,
                     run_index_constancy});
        r.push_back({"manifold.defining_inequality",
                     "manifold disk samples satisfy the defining inequality",
                     "hyperbolicity.local_manifold", {Suite::manifolds}, any_system,
                     run_manifold_inequality});
        r.push_back({"manifold.intersection_symmetry",
                     "intersection detection is symmetric in its arguments",
                     "hyperbolicity.detect_intersection", {Suite::manifolds}, any_system,
                     run_intersection_symmetry});
        return r;
    }();
    return registry;
}

std::vector<const ClaimInfo*> claims_for(Suite suite) {
    std::vector<const ClaimInfo*> out;
    for (const auto& c : claim_registry()) {
        if (suite == Suite::full) {
            out.push_back(&c);
            continue;
        }
        for (Suite s : c.suites)
            if (s == suite) {
                out.push_back(&c);
                break;
            }
    }
    return out;
}

}  // namespace shadowlab

#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "shadowlab/experiment.hpp"
#include "shadowlab/serialize.hpp"

using namespace shadowlab;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("shadowlab_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("toml subset parses sections, numbers, strings and arrays") {
    const std::string text =
        "# experiment\n"
        "suite = \"chain_dynamics\"\n"
        "seed = 7\n"
        "output_dir = \"out\"\n"
        "[system]\n"
        "kind = \"pendulum\"\n"
        "[params]\n"
        "depth = 5\n"
        "band_width = 0.12\n";
    auto doc = toml_subset_to_json(text);
    CHECK(doc["suite"] == "chain_dynamics");
    CHECK(doc["seed"] == 7);
    CHECK(doc["system"]["kind"] == "pendulum");
    CHECK(doc["params"]["depth"] == 5);
    CHECK(doc["params"]["band_width"] == 0.12);

    auto spec = experiment_from_json(doc);
    CHECK(spec.suite == Suite::chain_dynamics);
    CHECK(spec.seed == 7);
    CHECK(spec.system.kind == "pendulum");
    CHECK(spec.param_or("depth", 0) == 5.0);
}

TEST_CASE("toml parse errors carry line information") {
    try {
        toml_subset_to_json("key = \n");
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("experiment schema: missing seed and unknown keys are rejected") {
    nlohmann::ordered_json doc;
    doc["system"]["kind"] = "pendulum";
    doc["suite"] = "shadowing";
    try {
        experiment_from_json(doc);
        FAIL("expected schema error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("seed") != std::string::npos);
    }

    doc["seed"] = 3;
    doc["bogus"] = 1;
    CHECK_THROWS_AS(experiment_from_json(doc), Error);
    doc.erase("bogus");
    CHECK_NOTHROW(experiment_from_json(doc));

    // defaults fill in for a minimal valid config
    auto spec = experiment_from_json(doc);
    CHECK(spec.output_dir == "shadowlab_out");
    CHECK(spec.params.empty());
}

TEST_CASE("experiment specs round-trip through their canonical form") {
    nlohmann::ordered_json doc;
    doc["system"]["kind"] = "lorenz";
    doc["system"]["params"]["sigma"] = 10.0;
    doc["suite"] = "hyperbolicity";
    doc["seed"] = 11;
    doc["params"]["window"] = 20.0;
    auto spec = experiment_from_json(doc);
    auto rt = experiment_from_json(experiment_to_json(spec));
    CHECK(experiment_to_json(rt) == experiment_to_json(spec));
    CHECK(config_hash(rt) == config_hash(spec));
}

TEST_CASE("build_system validates custom polynomial jacobians") {
    SystemSpec spec;
    spec.kind = "custom_polynomial";
    spec.params["n"] = 2;
    // x' = -y + x^2, y' = x
    spec.poly = {{{-1.0, {0, 1}}, {1.0, {2, 0}}}, {{1.0, {1, 0}}}};
    auto sys = build_system(spec);
    auto f = sys.field(Eigen::Vector2d(0.5, 0.25));
    CHECK(f[0] == doctest::Approx(-0.25 + 0.25));
    CHECK(f[1] == doctest::Approx(0.5));
}

TEST_CASE("suite runs are deterministic and reports byte-stable") {
    ExperimentSpec spec;
    spec.system.kind = "gradient_morse_smale";
    spec.suite = Suite::limit_shadowing;
    spec.seed = 5;
    spec.params["segments"] = 20;
    spec.params["half_window"] = 10;
    auto dir1 = temp_dir("rep1"), dir2 = temp_dir("rep2");
    spec.output_dir = dir1.string();
    Report r1 = run_suite(spec);
    emit_report(r1, dir1, {"json", "csv"});
    spec.output_dir = dir2.string();
    Report r2 = run_suite(spec);
    emit_report(r2, dir2, {"json", "csv"});

    CHECK(slurp(dir1 / "report.json") == slurp(dir2 / "report.json"));
    CHECK(slurp(dir1 / "verdicts.csv") == slurp(dir2 / "verdicts.csv"));
    REQUIRE(r1.verdicts.size() == r2.verdicts.size());
    for (std::size_t i = 0; i < r1.verdicts.size(); ++i) {
        CHECK(r1.verdicts[i].claim_id == r2.verdicts[i].claim_id);
        CHECK(r1.verdicts[i].statistic == r2.verdicts[i].statistic);
    }
    // artifact files are byte-identical as well
    for (const auto& name : r1.artifacts) CHECK(slurp(dir1 / name) == slurp(dir2 / name));
}

TEST_CASE("limit shadowing suite on the gradient system reaches its verdicts") {
    ExperimentSpec spec;
    spec.system.kind = "gradient_morse_smale";
    spec.suite = Suite::limit_shadowing;
    spec.seed = 9;
    spec.params["segments"] = 20;
    spec.params["half_window"] = 10;
    spec.output_dir = temp_dir("falsifier").string();
    Report report = run_suite(spec);
    bool saw_falsifier = false;
    for (const auto& v : report.verdicts) {
        if (v.claim_id == "limit.falsifier_rejected") {
            saw_falsifier = true;
            CHECK(v.status == Verdict::Status::pass);
            CHECK(v.statistic > 0.01);
        }
        if (v.claim_id == "limit.exact_tail_passes") CHECK(v.status == Verdict::Status::pass);
    }
    CHECK(saw_falsifier);
}

TEST_CASE("claim registry is complete and well-formed") {
    const auto& reg = claim_registry();
    CHECK(reg.size() >= 20);
    std::set<std::string> ids;
    for (const auto& c : reg) {
        CHECK(ids.insert(c.id).second);  // unique ids
        CHECK(!c.summary.empty());
        CHECK(c.op_ref.find('.') != std::string::npos);  // module.op reference
        CHECK(!c.suites.empty());
        // every scheduled claim is part of the full suite selection
        auto full = claims_for(Suite::full);
        CHECK(std::find_if(full.begin(), full.end(),
                           [&](const ClaimInfo* p) { return p->id == c.id; }) != full.end());
    }
}

TEST_CASE("report exit codes follow the pass/fail/inconclusive convention") {
    Report r;
    r.verdicts.push_back({"a", Verdict::Status::pass, 0, 0, ""});
    CHECK(r.exit_code() == 0);
    r.verdicts.push_back({"b", Verdict::Status::inconclusive, 0, 0, ""});
    CHECK(r.exit_code() == 2);
    r.verdicts.push_back({"c", Verdict::Status::fail, 0, 0, ""});
    CHECK(r.exit_code() == 1);
}

TEST_CASE("serialization emitters are stable and parseable") {
    auto sys = make_pendulum();
    auto traj = integrate(sys, make_point({0.5, 0.5}, sys.chart), 2.0);
    auto csv = trajectory_csv(traj);
    CHECK(csv.rfind("t,x0,x1\n", 0) == 0);
    CHECK(csv == trajectory_csv(traj));

    auto po = generate_noisy(sys, make_point({0.5, 0.5}, sys.chart), 5, 1e-3, 1.0, 2);
    auto pcsv = pseudo_orbit_csv(po);
    CHECK(pcsv.rfind("i,t_i,x0,x1\n", 0) == 0);
    auto prof = gap_profile(sys, po);
    CHECK(gap_profile_csv(prof).rfind("i,gap\n", 0) == 0);
}

TEST_CASE("graph exports parse and round-trip stably") {
    auto sys = make_gradient_morse_smale();
    BoxCover cover(sys.chart, Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1), 3);
    TransitionParams params;
    params.t_step = 3.0;
    auto tg = build_transition_graph(sys, cover, params, 21);

    auto edges = edge_list_csv(tg);
    CHECK(edges.rfind("src,dst\n", 0) == 0);
    CHECK(edges == edge_list_csv(tg));

    auto geom = box_geometry_json(cover);
    CHECK(geom["depth"] == 3);
    CHECK(geom["per_axis"] == 8);
    CHECK(geom["active"].size() == 64);

    auto recs = attractors(tg.graph);
    auto ar = attractor_records_json(tg, recs);
    REQUIRE(ar.is_array());
    REQUIRE(ar.size() == recs.size());
    for (const auto& rec : ar) {
        CHECK(rec.contains("boxes"));
        CHECK(rec.contains("neighborhood"));
        CHECK(rec.contains("dual"));
    }
    // byte stability
    CHECK(ar.dump(2) == attractor_records_json(tg, recs).dump(2));
}

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shadowlab/align.hpp"
#include "shadowlab/catalog.hpp"

using namespace shadowlab;

TEST_CASE("alignment of an exact sampling is near the identity") {
    auto sys = make_pendulum();
    auto x = make_point({0.8, 0.2}, sys.chart);
    auto po = generate_noisy(sys, x, 8, 0.0, 1.0, 3);
    AlignmentGrid grid{6, 1.0};
    auto res = align_detailed(sys, po, x, grid);
    CHECK(res.cost < 1e-6);
    const double step = 1.0 / grid.nodes_per_segment;
    for (const auto& [t, ht] : res.h.breakpoints()) CHECK(std::abs(ht - t) < step);
    CHECK(res.h.valid());
}

TEST_CASE("doubled durations align to a half-speed time map") {
    // slow rotation; entries advance 1 time unit along the orbit but declare
    // duration 2, so the matching map runs at slope ~1/2
    Eigen::MatrixXd rot(2, 2);
    rot << 0, -0.2, 0.2, 0;
    auto sys = make_linear_system(rot);
    auto x = make_point({1, 0}, sys.chart);
    Trajectory traj = integrate(sys, x, 10.0);
    std::vector<TimedPoint> entries;
    for (int i = 0; i <= 10; ++i) entries.push_back({traj.at(static_cast<double>(i)), 2.0});
    PseudoOrbit po(entries, 0, OrbitClass::plain);
    auto res = align_detailed(sys, po, x, AlignmentGrid{6, 1.0});
    // compare h against t/2 away from the clamped ends
    for (const auto& [t, ht] : res.h.breakpoints())
        if (t > 1.0 && t < 15.0) CHECK(ht == doctest::Approx(0.5 * t).epsilon(0.35));
}

TEST_CASE("lattice DP equals exhaustive enumeration with identical tie-break") {
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        int P = 3 + static_cast<int>(rng.below(6));
        int Q = 3 + static_cast<int>(rng.below(6));
        Eigen::MatrixXd cost(P + 1, Q + 1);
        for (int j = 0; j <= P; ++j)
            for (int k = 0; k <= Q; ++k)
                // coarse values force ties so the tie-break is exercised
                cost(j, k) = std::round(rng.uniform(0, 4)) / 4.0;
        std::vector<std::pair<int, int>> path;
        double dp = minimax_lattice_cost(cost, &path);

        oracles::LatticeSearch brute(cost);
        brute.run();
        CHECK(dp == brute.best);
        REQUIRE(path.size() == brute.best_path.size());
        for (std::size_t i = 0; i < path.size(); ++i) CHECK(path[i] == brute.best_path[i]);

        CHECK(dp == oracles::threshold_lattice_cost(cost));
    }
}

TEST_CASE("reparametrization validity is enforced") {
    CHECK_THROWS_AS(Reparametrization({{0.0, 0.0}}), Error);
    CHECK_THROWS_AS(Reparametrization({{0.0, 0.0}, {1.0, 0.0}}), Error);
    CHECK_THROWS_AS(Reparametrization({{1.0, 1.0}, {2.0, 2.0}}), Error);  // no origin
    auto h = Reparametrization::identity(-2.0, 3.0);
    CHECK(h(1.5) == doctest::Approx(1.5));
    CHECK(h(-1.0) == doctest::Approx(-1.0));
    auto s = Reparametrization::linear(0.5, 0.0, 4.0);
    CHECK(s(2.0) == doctest::Approx(1.0));
    CHECK(s(6.0) == doctest::Approx(3.0));  // extrapolation keeps the end slope
}

TEST_CASE("alignment output reparametrization is always valid") {
    auto sys = make_pendulum();
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto x0 = make_point({rng.uniform(-1, 1), rng.uniform(-1, 1)}, sys.chart);
        auto po = generate_noisy(sys, x0, 6, 0.02, 1.0, 100 + trial);
        auto res = align_detailed(sys, po, x0, AlignmentGrid{4, 1.0});
        CHECK(res.h.valid());
    }
}

TEST_CASE("bi-directional window anchors h at the origin") {
    auto sys = make_pendulum();
    auto x = make_point({0.5, 0.6}, sys.chart);
    // exact window [-4, 4] built from orbit samples
    Trajectory fwd = integrate(sys, x, 5.0);
    Trajectory bwd = integrate(sys, x, -5.0);
    std::vector<TimedPoint> entries;
    for (int i = -4; i <= 4; ++i) {
        PhasePoint p = i < 0 ? bwd.at(static_cast<double>(i)) : fwd.at(static_cast<double>(i));
        entries.push_back({p, 1.0});
    }
    PseudoOrbit po(entries, 4, OrbitClass::plain);
    auto res = align_detailed(sys, po, x, AlignmentGrid{5, 1.0});
    CHECK(res.h(0.0) == 0.0);
    CHECK(res.cost < 1e-5);
    CHECK(res.backward.present);
    CHECK(res.forward.present);
}

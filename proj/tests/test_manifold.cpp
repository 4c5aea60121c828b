#include <cmath>

#include "doctest.h"
#include "shadowlab/catalog.hpp"
#include "shadowlab/chain.hpp"
#include "shadowlab/manifold.hpp"

using namespace shadowlab;

namespace {

CriticalOrbit pendulum_saddle(const SmoothSystem& sys) {
    return classify_singularity(sys, make_point({M_PI, 0.0}, sys.chart));
}

}  // namespace

TEST_CASE("linear saddle stable disk lies on the contracting axis") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -1.0;
    A(1, 1) = 1.0;
    auto sys = make_linear_system(A);
    auto orbit = classify_singularity(sys, make_point({0, 0}, sys.chart));
    auto disk = local_manifold(sys, orbit, ManifoldSide::stable, 0.5);
    REQUIRE(disk.samples.size() >= 8);
    for (const auto& s : disk.samples) {
        CHECK(std::abs(s.coords[1]) < 1e-6);  // the stable axis is exact
        CHECK(s.coords.norm() < 0.5);
    }
    // unstable disk sits on the expanding axis
    auto up = local_manifold(sys, orbit, ManifoldSide::unstable, 0.5);
    for (const auto& s : up.samples) CHECK(std::abs(s.coords[0]) < 1e-6);
}

TEST_CASE("manifold samples survive re-verification with doubled horizon") {
    // weak saddle: the doubled backward horizon stays within float fidelity
    // (transverse error grows like e^{lambda t})
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -0.4;
    A(1, 1) = 0.4;
    auto sys = make_linear_system(A);
    auto saddle = classify_singularity(sys, make_point({0, 0}, sys.chart));
    const double eps = 0.3, horizon = 20.0;
    auto disk = local_manifold(sys, saddle, ManifoldSide::unstable, eps, {}, horizon);
    REQUIRE(!disk.samples.empty());
    for (const auto& y : disk.samples) {
        Trajectory check = integrate(sys, y, -2.0 * horizon);
        for (std::size_t k = 0; k < check.size(); ++k)
            CHECK(distance(check.point(k), saddle.base) < 2.0 * eps);
    }
}

TEST_CASE("pendulum unstable disk carries the separatrix energy") {
    auto sys = make_pendulum();
    auto saddle = pendulum_saddle(sys);
    auto disk = local_manifold(sys, saddle, ManifoldSide::unstable, 0.4, {}, 20.0);
    REQUIRE(!disk.samples.empty());
    for (const auto& y : disk.samples)
        CHECK(std::abs(pendulum_energy(y.coords) - 1.0) < 1e-5);
}

TEST_CASE("the pendulum center has no hyperbolic manifold") {
    auto sys = make_pendulum();
    auto center = classify_singularity(sys, make_point({0.0, 0.0}, sys.chart));
    CHECK_FALSE(center.hyperbolic);
    CHECK_THROWS_AS(local_manifold(sys, center, ManifoldSide::stable, 0.3), Error);
}

TEST_CASE("a sink has no unstable disk") {
    Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(2, 2);
    auto sys = make_linear_system(A);
    auto sink = classify_singularity(sys, make_point({0, 0}, sys.chart));
    CHECK_THROWS_AS(local_manifold(sys, sink, ManifoldSide::unstable, 0.3), Error);
}

TEST_CASE("pendulum homoclinic separatrix is detected with the energy oracle") {
    auto sys = make_pendulum();
    auto saddle = pendulum_saddle(sys);
    auto wu = local_manifold(sys, saddle, ManifoldSide::unstable, 0.4);
    auto ws = local_manifold(sys, saddle, ManifoldSide::stable, 0.4);
    const double tol = 1e-4;
    IntersectionParams ip;
    ip.propagate_time = 10.0;
    ip.time_samples = 300;
    auto pts = detect_intersection(sys, ws, wu, tol, ip);
    CHECK(pts.size() >= 10);
    for (const auto& p : pts) CHECK(std::abs(pendulum_energy(p.coords) - 1.0) < 1e-4);

    // symmetry of the two argument orders, as sets
    auto pts2 = detect_intersection(sys, wu, ws, tol, ip);
    REQUIRE(!pts2.empty());
    std::vector<Eigen::VectorXd> a, b;
    for (const auto& p : pts) a.push_back(p.coords);
    for (const auto& p : pts2) b.push_back(p.coords);
    CHECK(hausdorff_distance(sys.chart, a, b) < tol);

    // same-side request is rejected
    CHECK_THROWS_AS(detect_intersection(sys, wu, wu, tol, ip), Error);
}

TEST_CASE("linear saddle manifolds meet only near the origin") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -1.0;
    A(1, 1) = 1.0;
    auto sys = make_linear_system(A);
    auto orbit = classify_singularity(sys, make_point({0, 0}, sys.chart));
    auto ws = local_manifold(sys, orbit, ManifoldSide::stable, 0.5);
    auto wu = local_manifold(sys, orbit, ManifoldSide::unstable, 0.5);
    const double tol = 1e-3;
    auto pts = detect_intersection(sys, ws, wu, tol);
    for (const auto& p : pts) CHECK(p.coords.norm() < tol);
}

TEST_CASE("strong homogeneity sampling on the suspension and a gradient field") {
    auto cat = make_suspended_cat();
    PerturbationFamily fam;
    fam.count = 3;
    fam.magnitude = 1e-3;
    CriticalSearchParams search;
    search.grid_per_axis = 2;
    search.periodic_search.max_period = 4.0;
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, 0.05);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 0.9);
    auto r = sampled_strong_homogeneity(cat, fam, lo, hi, 1, search);
    CHECK(r.homogeneous);
    CHECK(r.members_checked == 3);
    REQUIRE(!r.observed.empty());
    for (const auto& [idx, cnt] : r.observed) {
        (void)cnt;
        CHECK(idx == 1);
    }

    // sink + saddle field is heterogeneous
    auto grad = make_gradient_morse_smale();
    CriticalSearchParams search2;
    search2.grid_per_axis = 5;
    search2.periodic = false;
    PerturbationFamily fam2;
    fam2.count = 1;
    Eigen::VectorXd lo2 = Eigen::VectorXd::Constant(2, 0.0);
    Eigen::VectorXd hi2 = Eigen::VectorXd::Constant(2, 1.0);
    auto r2 = sampled_strong_homogeneity(grad, fam2, lo2, hi2, 1, search2);
    CHECK_FALSE(r2.homogeneous);

    PerturbationFamily empty;
    empty.count = 0;
    CHECK_THROWS_AS(sampled_strong_homogeneity(grad, empty, lo2, hi2, 1, search2), Error);
}

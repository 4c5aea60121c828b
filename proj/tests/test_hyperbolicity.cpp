#include <cmath>

#include "doctest.h"
#include "shadowlab/catalog.hpp"
#include "shadowlab/critical.hpp"
#include "shadowlab/splitting.hpp"

using namespace shadowlab;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

bool contains_point(const std::vector<CriticalOrbit>& orbits, const PhasePoint& p, double tol) {
    for (const auto& o : orbits)
        if (o.kind == CriticalOrbit::Kind::singularity && distance(o.base, p) < tol) return true;
    return false;
}

}  // namespace

TEST_CASE("pendulum singularities: center and saddle") {
    auto sys = make_pendulum();
    Eigen::VectorXd lo(2), hi(2);
    lo << 0.0, -2.0;
    hi << 2.0 * M_PI, 2.0;
    CriticalSearchParams params;
    params.periodic = false;
    auto orbits = find_critical_orbits(sys, lo, hi, params);
    // oracle: sin x = 0, y = 0 gives exactly x in {0, pi}
    CHECK(contains_point(orbits, make_point({0.0, 0.0}, sys.chart), 1e-6));
    CHECK(contains_point(orbits, make_point({M_PI, 0.0}, sys.chart), 1e-6));
    int singular = 0;
    for (const auto& o : orbits)
        if (o.kind == CriticalOrbit::Kind::singularity) ++singular;
    CHECK(singular == 2);
    // the center is non-hyperbolic, the saddle has index 1
    for (const auto& o : orbits) {
        if (o.kind != CriticalOrbit::Kind::singularity) continue;
        if (distance(o.base, make_point({M_PI, 0.0}, sys.chart)) < 1e-6) {
            CHECK(o.hyperbolic);
            CHECK(morse_index(o) == 1);
        } else {
            CHECK_FALSE(o.hyperbolic);
            CHECK_THROWS_AS(morse_index(o), Error);
        }
    }
}

TEST_CASE("linear saddle has the origin as its only critical orbit") {
    auto sys = make_linear_system(diag2(-1.0, 1.0));
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -2.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 2.0);
    CriticalSearchParams params;
    auto orbits = find_critical_orbits(sys, lo, hi, params);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].kind == CriticalOrbit::Kind::singularity);
    CHECK(orbits[0].base.coords.norm() < 1e-9);
    CHECK(morse_index(orbits[0]) == 1);
}

TEST_CASE("Lorenz equilibria match the symbolic roots") {
    double sigma = 10.0, rho = 28.0, beta = 8.0 / 3.0;
    auto sys = make_lorenz(sigma, rho, beta);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -20.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 40.0);
    CriticalSearchParams params;
    params.grid_per_axis = 4;
    params.periodic = false;
    auto orbits = find_critical_orbits(sys, lo, hi, params);
    const double c = std::sqrt(beta * (rho - 1.0));
    CHECK(contains_point(orbits, make_point({0, 0, 0}, sys.chart), 1e-6));
    CHECK(contains_point(orbits, make_point({c, c, rho - 1.0}, sys.chart), 1e-6));
    CHECK(contains_point(orbits, make_point({-c, -c, rho - 1.0}, sys.chart), 1e-6));
    int singular = 0;
    for (const auto& o : orbits)
        if (o.kind == CriticalOrbit::Kind::singularity) ++singular;
    CHECK(singular == 3);
}

TEST_CASE("morse index closed forms") {
    auto saddle = classify_singularity(make_linear_system(diag2(-2.0, 1.0)),
                                       make_point({0, 0}, Chart::euclidean(2)));
    CHECK(morse_index(saddle) == 1);
    auto sink = classify_singularity(make_linear_system(diag2(-1.0, -2.0)),
                                     make_point({0, 0}, Chart::euclidean(2)));
    CHECK(morse_index(sink) == 2);

    // periodic multipliers {1, 0.5, 2} -> index 1: realize them as the time-1
    // monodromy of the diagonal field diag(0, log 0.5, log 2) and classify
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
    D(1, 1) = std::log(0.5);
    D(2, 2) = std::log(2.0);
    auto per = classify_periodic(make_linear_system(D), make_point({0, 0, 0}, Chart::euclidean(3)),
                                 1.0);
    REQUIRE(per.multipliers.size() == 3);
    CHECK(per.hyperbolic);
    CHECK(morse_index(per) == 1);
}

TEST_CASE("suspension fixed fiber is a hyperbolic periodic orbit of index 1") {
    auto sys = make_suspended_cat();
    auto o = classify_periodic(sys, make_point({0, 0, 0}, sys.chart), suspended_cat_roof());
    CHECK(o.hyperbolic);
    CHECK(morse_index(o) == 1);
    // multipliers are {1/mu, 1, mu} with mu = (3+sqrt 5)/2
    const double mu = (3.0 + std::sqrt(5.0)) / 2.0;
    std::vector<double> mods;
    for (auto m : o.multipliers) mods.push_back(std::abs(m));
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == doctest::Approx(1.0 / mu).epsilon(1e-6));
    CHECK(mods[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mods[2] == doctest::Approx(mu).epsilon(1e-6));
}

TEST_CASE("index constancy verdicts") {
    auto sys = make_suspended_cat();
    std::vector<CriticalOrbit> orbits;
    // fixed fiber and the period-2 fibers of the cat map (fixed points of A^2)
    orbits.push_back(classify_periodic(sys, make_point({0, 0, 0}, sys.chart),
                                       suspended_cat_roof()));
    orbits.push_back(classify_periodic(sys, make_point({0.4, 0.2, 0.0}, sys.chart),
                                       2 * suspended_cat_roof()));
    orbits.push_back(classify_periodic(sys, make_point({0.2, 0.6, 0.0}, sys.chart),
                                       2 * suspended_cat_roof()));
    auto r = check_index_constancy(orbits);
    CHECK(r.constant);
    REQUIRE(r.indices.size() == 1);
    CHECK(r.indices.begin()->first == 1);

    // a mixed multiset is reported as non-constant
    CriticalOrbit fake = orbits[0];
    fake.index = 2;
    orbits.push_back(fake);
    auto r2 = check_index_constancy(orbits);
    CHECK_FALSE(r2.constant);
    CHECK(r2.indices.at(1) == 3);
    CHECK(r2.indices.at(2) == 1);

    CHECK_THROWS_AS(check_index_constancy({}), Error);
}

TEST_CASE("index additivity under time reversal") {
    auto sink = classify_singularity(make_linear_system(diag2(-1.0, -2.0)),
                                     make_point({0, 0}, Chart::euclidean(2)));
    auto source = classify_singularity(make_linear_system(diag2(-1.0, -2.0)).reversed(),
                                       make_point({0, 0}, Chart::euclidean(2)));
    CHECK(morse_index(sink) == 2);
    CHECK(morse_index(source) == 2 - morse_index(sink));

    auto sys = make_suspended_cat();
    auto fwd = classify_periodic(sys, make_point({0, 0, 0}, sys.chart), suspended_cat_roof());
    auto bwd = classify_periodic(sys.reversed(), make_point({0, 0, 0}, sys.chart),
                                 suspended_cat_roof());
    CHECK(morse_index(bwd) == (3 - 1) - morse_index(fwd));
}

TEST_CASE("splitting rates on the closed-form linear system") {
    auto sys = make_linear_system(diag2(-2.0, 1.0));
    auto traj = integrate(sys, make_point({1e-8, 1e-8}, sys.chart), 20.0);
    auto est = estimate_splitting(sys, traj, 1);
    CHECK(est.conclusive);
    CHECK(est.lambda_contract == doctest::Approx(2.0).epsilon(0.05));
    CHECK(est.lambda_dom == doctest::Approx(3.0).epsilon(0.05));
    CHECK(est.r2_contract > 0.9);
    CHECK(est.r2_dom > 0.9);
}

TEST_CASE("splitting is inconclusive on the zero field") {
    auto sys = make_linear_system(Eigen::MatrixXd::Zero(2, 2));
    auto traj = integrate(sys, make_point({0.3, 0.4}, sys.chart), 15.0);
    auto est = estimate_splitting(sys, traj, 1);
    CHECK_FALSE(est.conclusive);
}

TEST_CASE("Lorenz trajectories contract strongly in one direction") {
    auto sys = make_lorenz();
    // settle onto the attractor first
    auto x0 = flow(sys, make_point({1.0, 1.0, 25.0}, sys.chart), 30.0);
    auto traj = integrate(sys, x0, 20.0);
    auto est = estimate_splitting(sys, traj, 1);
    CHECK(est.lambda_contract > 0.0);
    CHECK(est.r2_contract > 0.9);
}

TEST_CASE("splitting-rate soundness on random diagonal systems") {
    Rng rng(61);
    for (int trial = 0; trial < 8; ++trial) {
        double a = rng.uniform(-3.0, -0.5);
        double b = rng.uniform(0.5, 2.5);
        auto sys = make_linear_system(diag2(a, b));
        auto traj = integrate(sys, make_point({1e-9, 1e-9}, sys.chart), 20.0);
        auto est = estimate_splitting(sys, traj, 1);
        CHECK(est.lambda_contract == doctest::Approx(-a).epsilon(0.05));
        CHECK(est.lambda_dom == doctest::Approx(b - a).epsilon(0.05));
    }
}

TEST_CASE("sectional expansion closed forms") {
    auto grow = make_linear_system(diag2(1.0, 2.0));
    auto traj = integrate(grow, make_point({1e-9, 1e-9}, grow.chart), 15.0);
    auto r = check_sectional_expansion(grow, traj, Eigen::MatrixXd::Identity(2, 2), 16, 5);
    CHECK(r.ok);
    CHECK(r.worst_rate == doctest::Approx(3.0).epsilon(0.05));

    auto mixed = make_linear_system(diag2(-1.0, 2.0));
    auto traj2 = integrate(mixed, make_point({1e-9, 1e-9}, mixed.chart), 15.0);
    auto r2 = check_sectional_expansion(mixed, traj2, Eigen::MatrixXd::Identity(2, 2), 16, 5);
    CHECK(r2.worst_rate == doctest::Approx(1.0).epsilon(0.05));

    // one-dimensional central bundle is rejected
    CHECK_THROWS_AS(
        check_sectional_expansion(grow, traj, Eigen::MatrixXd::Identity(2, 2).leftCols(1), 4, 5),
        Error);
}

TEST_CASE("sectional consistency: worst rate matches the minimal eigenvalue pair sum") {
    Rng rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
        std::vector<double> ev = {rng.uniform(0.3, 1.0), rng.uniform(1.1, 2.0),
                                  rng.uniform(2.1, 3.0)};
        for (int i = 0; i < 3; ++i) A(i, i) = ev[static_cast<std::size_t>(i)];
        auto sys = make_linear_system(A);
        auto traj = integrate(sys, make_point({1e-9, 1e-9, 1e-9}, sys.chart), 15.0);
        auto r = check_sectional_expansion(sys, traj, Eigen::MatrixXd::Identity(3, 3), 100, 5);
        double min_pair = ev[0] + ev[1];
        CHECK(r.worst_rate == doctest::Approx(min_pair).epsilon(0.05));
    }
}

TEST_CASE("Lorenz central plane is sectionally expanding") {
    auto sys = make_lorenz();
    auto x0 = flow(sys, make_point({1.0, 1.0, 25.0}, sys.chart), 30.0);
    auto traj = integrate(sys, x0, 20.0);
    // central bundle surrogate: flow direction plus a transverse vector
    Eigen::MatrixXd c_basis(3, 2);
    c_basis.col(0) = sys.eval(x0).normalized();
    c_basis.col(1) = Eigen::Vector3d(1, 0, 0);
    auto r = check_sectional_expansion(sys, traj, c_basis, 12, 7);
    CHECK(r.worst_rate > 0.0);
}

#include <cmath>

#include "doctest.h"
#include "shadowlab/catalog.hpp"
#include "shadowlab/integrate.hpp"

using namespace shadowlab;

TEST_CASE("chart distance closed forms") {
    auto e2 = Chart::euclidean(2);
    CHECK(distance(make_point({0, 0}, e2), make_point({3, 4}, e2)) == doctest::Approx(5.0));

    auto t1 = Chart::torus({1.0});
    CHECK(distance(make_point({0.1}, t1), make_point({0.9}, t1)) == doctest::Approx(0.2));

    auto p = make_point({0.3, -1.7}, e2);
    CHECK(distance(p, p) == 0.0);

    CHECK_THROWS_AS(distance(make_point({0, 0}, e2), make_point({0.0}, t1)), Error);
}

TEST_CASE("metric axioms on random triples per chart") {
    std::vector<Chart> charts = {Chart::euclidean(3), Chart::torus({1.0, 2.0}),
                                 Chart::cylinder(2, {2.0 * M_PI})};
    Rng rng(7);
    for (const auto& chart : charts) {
        for (int trial = 0; trial < 1000; ++trial) {
            Eigen::VectorXd a(chart.dim()), b(chart.dim()), c(chart.dim());
            for (int i = 0; i < chart.dim(); ++i) {
                a[i] = rng.uniform(-3, 3);
                b[i] = rng.uniform(-3, 3);
                c[i] = rng.uniform(-3, 3);
            }
            PhasePoint pa(a, chart), pb(b, chart), pc(c, chart);
            double ab = distance(pa, pb), ba = distance(pb, pa);
            CHECK(ab == ba);  // exact symmetry
            CHECK(ab >= 0.0);
            CHECK(distance(pa, pa) == 0.0);
            CHECK(ab <= distance(pa, pc) + distance(pc, pb) + 1e-12);
        }
    }
}

TEST_CASE("mapping torus distance is symmetric and locally product-like") {
    auto sys = make_suspended_cat();
    const auto& chart = sys.chart;
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        Eigen::VectorXd a(3), b(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.uniform(-2, 2);
            b[i] = rng.uniform(-2, 2);
        }
        PhasePoint pa(a, chart), pb(b, chart);
        CHECK(distance(pa, pb) == distance(pb, pa));
        CHECK(distance(pa, pa) == 0.0);
    }
    // points straddling the roof: (w, roof - eps) is close to (A w, eps)
    Eigen::Matrix2d A = chart.twist().cast<double>();
    Eigen::Vector2d w(0.31, 0.12), Aw = A * w;
    PhasePoint lower = make_point({w[0], w[1], chart.roof() - 1e-3}, chart);
    PhasePoint upper = make_point({Aw[0], Aw[1], 1e-3}, chart);
    CHECK(distance(lower, upper) == doctest::Approx(2e-3).epsilon(0.05));
}

TEST_CASE("integrate closed forms") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -1.0;
    auto sys = make_linear_system(A);
    auto x0 = make_point({1, 0}, sys.chart);
    auto end = flow(sys, x0, 1.0);
    CHECK(end.coords[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    CHECK(std::abs(end.coords[1]) < 1e-9);

    auto zero = make_linear_system(Eigen::MatrixXd::Zero(2, 2));
    auto fixed = flow(zero, make_point({0.4, -2.0}, zero.chart), 10.0);
    CHECK((fixed.coords - Eigen::Vector2d(0.4, -2.0)).norm() < 1e-12);
}

TEST_CASE("pendulum conserves energy over span 20") {
    auto sys = make_pendulum();
    auto x0 = make_point({1.2, 0.4}, sys.chart);
    double h0 = pendulum_energy(x0.coords);
    auto traj = integrate(sys, x0, 20.0);
    for (std::size_t k = 0; k < traj.size(); ++k)
        CHECK(std::abs(pendulum_energy(traj.raw_state(k)) - h0) < 1e-6);
}

TEST_CASE("trajectory sample invariants and determinism") {
    auto sys = make_pendulum();
    auto x0 = make_point({0.5, 1.1}, sys.chart);
    StepControl ctrl;
    auto traj = integrate(sys, x0, 5.0, ctrl);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        CHECK(traj.time(k) > traj.time(k - 1));
        CHECK(traj.time(k) - traj.time(k - 1) <= ctrl.base_step + 1e-12);
    }
    auto again = integrate(sys, x0, 5.0, ctrl);
    REQUIRE(again.size() == traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        CHECK((again.raw_state(k) - traj.raw_state(k)).norm() == 0.0);
    // re-integrating from the first sample reproduces the endpoint
    auto re = flow(sys, traj.point(0), 5.0, ctrl);
    CHECK(distance(re, traj.endpoint()) < 1e-7);
}

TEST_CASE("backward span integrates the negated field") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -1.0;
    A(1, 1) = 0.5;
    auto sys = make_linear_system(A);
    auto x0 = make_point({1, 1}, sys.chart);
    auto traj = integrate(sys, x0, -1.0);
    CHECK(traj.t_begin() == doctest::Approx(-1.0));
    CHECK(traj.t_end() == doctest::Approx(0.0));
    auto end = traj.endpoint();
    CHECK(end.coords[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-7));
    CHECK(end.coords[1] == doctest::Approx(std::exp(-0.5)).epsilon(1e-7));
}

TEST_CASE("flow property under composition") {
    auto sys = make_pendulum();
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        double s = rng.uniform(0, 5), t = rng.uniform(0, 5);
        auto x0 = make_point({rng.uniform(-2, 2), rng.uniform(-1.5, 1.5)}, sys.chart);
        auto direct = flow(sys, x0, s + t);
        auto composed = flow(sys, flow(sys, x0, s), t);
        CHECK(distance(direct, composed) < 10 * 1e-6);
    }
}

TEST_CASE("variational closed form for diag(-2,1)") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -2.0;
    A(1, 1) = 1.0;
    auto sys = make_linear_system(A);
    auto seg = integrate_variational(sys, make_point({0.3, 0.7}, sys.chart), 1.0);
    CHECK((seg.matrices.front() - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
    Eigen::MatrixXd dx1 = seg.full_matrix(seg.matrices.size() - 1);
    CHECK(dx1(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-5));
    CHECK(dx1(1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-5));
    CHECK(std::abs(dx1(0, 1)) < 1e-8);
    CHECK(std::abs(dx1(1, 0)) < 1e-8);
}

TEST_CASE("variational with zero span is the identity") {
    auto sys = make_lorenz();
    auto seg = integrate_variational(sys, make_point({1, 1, 1}, sys.chart), 0.0);
    REQUIRE(seg.matrices.size() == 1);
    CHECK((seg.matrices[0] - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("cocycle property on Lorenz") {
    auto sys = make_lorenz();
    auto x0 = make_point({1.0, 2.0, 20.0}, sys.chart);
    auto seg2 = integrate_variational(sys, x0, 2.0);
    Eigen::MatrixXd dx2 = seg2.full_matrix(seg2.matrices.size() - 1);
    auto seg1 = integrate_variational(sys, x0, 1.0);
    Eigen::MatrixXd dx1 = seg1.full_matrix(seg1.matrices.size() - 1);
    auto mid = flow(sys, x0, 1.0);
    auto seg1b = integrate_variational(sys, mid, 1.0);
    Eigen::MatrixXd dx1b = seg1b.full_matrix(seg1b.matrices.size() - 1);
    Eigen::MatrixXd composed = dx1b * dx1;
    CHECK((composed - dx2).norm() / dx2.norm() < 1e-4);
}

TEST_CASE("variational matches finite differences of the flow") {
    auto sys = make_pendulum();
    auto x0 = make_point({0.9, 0.2}, sys.chart);
    auto seg = integrate_variational(sys, x0, 1.0);
    Eigen::MatrixXd dx = seg.full_matrix(seg.matrices.size() - 1);
    const double h = 1e-6;
    for (int c = 0; c < 2; ++c) {
        Eigen::VectorXd dp = x0.coords, dm = x0.coords;
        dp[c] += h;
        dm[c] -= h;
        Eigen::VectorXd col =
            (integrate(sys, PhasePoint(dp, sys.chart), 1.0).raw_at(1.0) -
             integrate(sys, PhasePoint(dm, sys.chart), 1.0).raw_at(1.0)) /
            (2 * h);
        CHECK((dx.col(c) - col).norm() / col.norm() < 1e-3);
    }
}

TEST_CASE("divergence closed forms") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = -2.0;
    A(1, 1) = 1.0;
    auto lin = make_linear_system(A);
    CHECK(divergence(lin, make_point({3, -1}, lin.chart)) == doctest::Approx(-1.0));

    auto pend = make_pendulum();
    CHECK(divergence(pend, make_point({0.7, 0.1}, pend.chart)) == 0.0);

    auto lor = make_lorenz();
    CHECK(divergence(lor, make_point({1, 2, 3}, lor.chart)) ==
          doctest::Approx(-41.0 / 3.0));
}

TEST_CASE("volume preservation for divergence-free systems") {
    for (auto* name : {"pendulum", "cat"}) {
        SmoothSystem sys = std::string(name) == "pendulum" ? make_pendulum() : make_suspended_cat();
        PhasePoint x0 = sys.dimension == 2 ? make_point({0.4, 0.8}, sys.chart)
                                           : make_point({0.2, 0.6, 0.1}, sys.chart);
        auto seg = integrate_variational(sys, x0, 10.0);
        for (std::size_t k = 0; k < seg.matrices.size(); ++k) {
            double det = seg.full_matrix(k).determinant();
            CHECK(std::abs(det - 1.0) < 1e-4);
        }
    }
}

TEST_CASE("suspension flow has the fixed fiber periodic orbit") {
    auto sys = make_suspended_cat();
    double period = suspended_cat_roof();
    auto x0 = make_point({0, 0, 0}, sys.chart);
    auto back = flow(sys, x0, period);
    CHECK(distance(back, x0) < 1e-9);
    // monodromy over one period is the twist plus the flow direction
    auto seg = integrate_variational(sys, x0, period);
    Eigen::MatrixXd m = seg.full_matrix(seg.matrices.size() - 1);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3);
    expected(0, 0) = 2;
    expected(0, 1) = 1;
    expected(1, 0) = 1;
    expected(1, 1) = 1;
    CHECK((m - expected).norm() < 1e-9);
    // generic point advances by the twist on the base
    auto p = make_point({0.3, 0.9, 0.0}, sys.chart);
    auto q = flow(sys, p, period);
    Eigen::Vector2d w(0.3, 0.9);
    Eigen::Vector2d Aw = sys.chart.twist().cast<double>() * w;
    auto expect = make_point({Aw[0], Aw[1], 0.0}, sys.chart);
    CHECK(distance(q, expect) < 1e-9);
}

TEST_CASE("catalog systems pass the jacobian consistency gate") {
    for (const auto& [kind, blurb] : catalog_entries()) {
        (void)blurb;
        if (kind == "custom_polynomial") continue;
        SystemSpec spec;
        spec.kind = kind;
        CHECK_NOTHROW(build_system(spec));
    }
}

TEST_CASE("integration failure reports the last good time") {
    // blow-up field x' = 1 + x^2 escapes in finite time and underflows the step
    SmoothSystem sys;
    sys.name = "blowup";
    sys.dimension = 2;
    sys.chart = Chart::euclidean(2);
    sys.field = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd f(2);
        f << 1.0 + x[0] * x[0], 0.0;
        return f;
    };
    sys.jacobian = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
        j(0, 0) = 2.0 * x[0];
        return j;
    };
    try {
        integrate(sys, make_point({1, 0}, sys.chart), 10.0);
        FAIL("expected integration failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::integration_failure);
        CHECK(std::string(e.what()).find("last good time") != std::string::npos);
    }
}

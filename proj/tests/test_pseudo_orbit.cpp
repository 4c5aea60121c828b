#include <cmath>

#include "doctest.h"
#include "shadowlab/catalog.hpp"
#include "shadowlab/pseudo_orbit.hpp"

using namespace shadowlab;

namespace {

GapProfile profile_from(std::vector<double> gaps, int zero_offset = 0) {
    return GapProfile(std::move(gaps), zero_offset);
}

// independent scan over every (n, k) pair, straight from the defining sum
std::optional<int> brute_average_N(const std::vector<double>& gaps, double delta) {
    const int G = static_cast<int>(gaps.size());
    std::optional<int> best;
    for (int N = 1; N <= G; ++N) {
        bool all_ok = true;
        for (int n = N; n <= G && all_ok; ++n)
            for (int k = 0; k + n <= G; ++k) {
                double s = 0.0;
                for (int i = k; i < k + n; ++i) s += gaps[static_cast<std::size_t>(i)];
                if (!(s / n < delta)) {
                    all_ok = false;
                    break;
                }
            }
        if (all_ok) {
            best = N;
            break;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("gap profile of an exact orbit sampling is tiny") {
    auto sys = make_pendulum();
    auto po = generate_noisy(sys, make_point({0.7, 0.3}, sys.chart), 40, 0.0, 1.0, 5);
    auto prof = gap_profile(sys, po);
    CHECK(prof.max_gap() < 1e-6);
    CHECK(prof.max_gap() <= 10 * 1e-6);  // 10x integrator tolerance headroom
}

TEST_CASE("an artificial jump appears as the max gap") {
    auto sys = make_pendulum();
    auto po = generate_noisy(sys, make_point({0.7, 0.3}, sys.chart), 20, 0.0, 1.0, 5);
    auto entries = po.entries();
    entries[10].point =
        PhasePoint(entries[10].point.coords + Eigen::Vector2d(0.5, 0.0), sys.chart);
    // the jump perturbs both the gap into entry 10 and out of it; the max is
    // the inserted 0.5 up to flow distortion of the outgoing segment
    auto prof = gap_profile(sys, PseudoOrbit(entries, 0, OrbitClass::plain));
    CHECK(prof.gap(9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(prof.max_gap() >= 0.5 - 1e-6);
}

TEST_CASE("noisy generation respects its bound and reproduces bitwise") {
    auto sys = make_lorenz();
    auto x0 = make_point({1.0, 1.0, 25.0}, sys.chart);
    auto po = generate_noisy(sys, x0, 500, 0.01, 1.0, 42);
    auto prof = gap_profile(sys, po);
    CHECK(is_delta_pseudo(prof, 0.01));
    CHECK(prof.max_gap() < 0.01);

    auto again = generate_noisy(sys, x0, 500, 0.01, 1.0, 42);
    auto prof2 = gap_profile(sys, again);
    for (std::size_t k = 0; k < prof.size(); ++k)
        CHECK(prof.gaps()[k] == prof2.gaps()[k]);  // bitwise identical

    auto other = generate_noisy(sys, x0, 500, 0.01, 1.0, 43);
    bool differs = false;
    for (std::size_t k = 0; k < po.size(); ++k)
        if (po.entries()[k].point.coords != other.entries()[k].point.coords) differs = true;
    CHECK(differs);
}

TEST_CASE("generate_noisy escape error names the segment") {
    auto sys = make_lorenz();
    auto x0 = make_point({1.0, 1.0, 25.0}, sys.chart);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, -1.0);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(3, 1.0);
    try {
        generate_noisy(sys, x0, 50, 0.0, 1.0, 1, std::make_pair(lo, hi));
        FAIL("expected escape");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::escape);
        CHECK(std::string(e.what()).find("segment") != std::string::npos);
    }
}

TEST_CASE("delta-pseudo predicate is strict") {
    CHECK(is_delta_pseudo(profile_from({0.0, 0.0, 0.0}), 0.1));
    CHECK_FALSE(is_delta_pseudo(profile_from({0.5}), 0.4));
    CHECK_FALSE(is_delta_pseudo(profile_from({0.1, 0.1, 0.1}), 0.1));
}

TEST_CASE("average-pseudo closed forms") {
    // constant gaps: ok iff g < delta, with N = 1
    auto c = is_average_pseudo(profile_from(std::vector<double>(40, 0.05)), 0.1);
    CHECK(c.ok);
    CHECK(*c.N == 1);
    auto c2 = is_average_pseudo(profile_from(std::vector<double>(40, 0.2)), 0.1);
    CHECK_FALSE(c2.ok);
    CHECK_FALSE(c2.N.has_value());

    // one unit spike among zeros, delta = 0.1: smallest n with 1/n < 0.1 is 11
    std::vector<double> spike(60, 0.0);
    spike[30] = 1.0;
    auto s = is_average_pseudo(profile_from(spike), 0.1);
    CHECK(s.ok);
    CHECK(*s.N == 11);

    // alternating 0, 0.4 with delta 0.3: single gaps violate, pairs average 0.2
    std::vector<double> alt(40);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 0.0 : 0.4;
    auto a = is_average_pseudo(profile_from(alt), 0.3);
    CHECK(a.ok);
    CHECK(*a.N == 2);
}

TEST_CASE("average-pseudo matches the exhaustive window scan") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        int G = 4 + static_cast<int>(rng.below(12));
        std::vector<double> gaps(static_cast<std::size_t>(G));
        for (auto& g : gaps) g = rng.uniform01() < 0.3 ? rng.uniform(0, 1) : 0.0;
        double delta = rng.uniform(0.05, 0.6);
        auto mine = is_average_pseudo(profile_from(gaps), delta);
        auto oracle = brute_average_N(gaps, delta);
        CHECK(mine.N.has_value() == oracle.has_value());
        if (oracle) {
            CHECK(*mine.N == *oracle);
            CHECK(mine.ok == (*oracle <= G / 2));
        }
    }
}

TEST_CASE("average check needs a minimal window") {
    CHECK_THROWS_AS(is_average_pseudo(profile_from({0.1, 0.1}), 0.5), Error);
}

TEST_CASE("limit-pseudo tail schedules") {
    // gaps 1/(1+|i|) follow the default schedule
    std::vector<double> decay;
    int half = 40;
    for (int i = -half; i < half; ++i) decay.push_back(1.0 / (1.0 + std::abs(i)));
    CHECK(is_limit_pseudo(profile_from(decay, half)));

    // constant gaps have no decay
    CHECK_FALSE(is_limit_pseudo(profile_from(std::vector<double>(80, 0.3), 40)));

    // 2^{-|i|} decays faster than every polynomial schedule
    std::vector<double> geo;
    for (int i = -half; i < half; ++i) geo.push_back(std::pow(2.0, -std::abs(i)));
    CHECK(is_limit_pseudo(profile_from(geo, half)));
}

TEST_CASE("asymptotic average closed forms") {
    // all zero
    CHECK(is_asymptotic_average_pseudo(profile_from(std::vector<double>(81, 0.0), 40), 0.1));
    // constant 0.3 vs tol 0.1
    CHECK_FALSE(
        is_asymptotic_average_pseudo(profile_from(std::vector<double>(81, 0.3), 40), 0.1));
    // single unit spike at i=0, window n=100, tol 0.05: averages fall like 1/n
    std::vector<double> spike(201, 0.0);
    spike[100] = 1.0;
    CHECK(is_asymptotic_average_pseudo(profile_from(spike, 100), 0.05));
    // asymmetric window is rejected
    CHECK_THROWS_AS(is_asymptotic_average_pseudo(profile_from(std::vector<double>(10, 0.0), 2), 0.1),
                    Error);
}

TEST_CASE("plain implies average at the same delta") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        int G = 6 + static_cast<int>(rng.below(30));
        double delta = rng.uniform(0.01, 1.0);
        std::vector<double> gaps(static_cast<std::size_t>(G));
        for (auto& g : gaps) g = rng.uniform(0.0, delta * 0.999);
        auto prof = profile_from(gaps);
        REQUIRE(is_delta_pseudo(prof, delta));
        auto avg = is_average_pseudo(prof, delta);
        CHECK(avg.ok);
        CHECK(*avg.N == 1);
    }
}

TEST_CASE("cumulative times are exact partial sums") {
    auto sys = make_pendulum();
    std::vector<TimedPoint> entries;
    std::vector<double> durations = {1.0, 2.5, 1.25, 3.0, 1.0, 0.5, 2.0};
    for (double d : durations) entries.push_back({make_point({0.1, 0.2}, sys.chart), d});
    PseudoOrbit po(entries, 3, OrbitClass::plain);
    CHECK(po.i_min() == -3);
    CHECK(po.i_max() == 3);
    CHECK(po.cumulative_time(0) == 0.0);
    for (int m = po.i_min(); m <= po.i_max(); ++m)
        for (int n = m + 1; n <= po.i_max() + 1; ++n) {
            double sum = 0.0;
            for (int i = m; i < n; ++i) sum += po.entry(i).duration;
            CHECK(po.cumulative_time(n) - po.cumulative_time(m) == sum);
        }
}

TEST_CASE("duration class gates") {
    auto sys = make_pendulum();
    std::vector<TimedPoint> entries = {{make_point({0, 0}, sys.chart), 0.5},
                                       {make_point({0, 0}, sys.chart), 0.5}};
    CHECK_NOTHROW(PseudoOrbit(entries, 0, OrbitClass::plain));
    CHECK_THROWS_AS(PseudoOrbit(entries, 0, OrbitClass::average), Error);
    CHECK_THROWS_AS(PseudoOrbit(entries, 0, OrbitClass::limit), Error);
}

TEST_CASE("concatenation through a pair of points") {
    // rotation field: every point is periodic, p = q gives a pure orbit
    Eigen::MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;
    auto sys = make_linear_system(rot);
    auto p = make_point({1, 0}, sys.chart);
    auto po = concat_through(sys, p, p, 6, 6, OrbitClass::limit);
    auto prof = gap_profile(sys, po);
    CHECK(prof.max_gap() < 1e-7);

    // chain with max gap delta/2 dominates the concatenation's profile
    auto pend = make_pendulum();
    const double delta = 0.02;
    auto start = make_point({0.4, 0.1}, pend.chart);
    auto chain = generate_noisy(pend, start, 8, delta / 2, 1.0, 7);
    auto chain_prof = gap_profile(pend, chain);
    REQUIRE(chain_prof.max_gap() < delta / 2);
    auto q = chain.entry(chain.i_max()).point;
    auto glued = concat_through(pend, start, chain, q, 5, 5, delta, OrbitClass::plain);
    auto glued_prof = gap_profile(pend, glued);
    CHECK(glued_prof.max_gap() == doctest::Approx(chain_prof.max_gap()).epsilon(1e-5));

    // junction mismatch raises
    auto far = make_point({2.0, 1.5}, pend.chart);
    CHECK_THROWS_AS(concat_through(pend, far, chain, q, 5, 5, delta, OrbitClass::plain), Error);
}

TEST_CASE("attractor-crossing construction is a limit-pseudo orbit") {
    auto sys = make_gradient_morse_smale();
    auto sink = make_point({0.5, 0.5}, sys.chart);
    auto source = make_point({0.0, 0.0}, sys.chart);
    auto po = concat_through(sys, sink, source, 40, 40, OrbitClass::limit);
    auto prof = gap_profile(sys, po);
    // every gap vanishes except the junction, which is d(sink, source)
    int nonzero = 0;
    for (int i = prof.i_min(); i <= prof.i_max(); ++i)
        if (prof.gap(i) > 1e-6) {
            ++nonzero;
            CHECK(i == -1);
            CHECK(prof.gap(i) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
        }
    CHECK(nonzero == 1);
    CHECK(is_limit_pseudo(prof));
}

TEST_CASE("gap profile window statistics") {
    GapProfile prof({0.1, 0.3, 0.0, 0.5, 0.1}, 2);  // i in [-2, 2]
    CHECK(prof.max_gap() == 0.5);
    CHECK(prof.cesaro_average(-2, 5) == doctest::Approx(0.2));
    CHECK(prof.cesaro_average(0, 2) == doctest::Approx(0.25));
    CHECK(prof.tail_supremum(2) == 0.1);
    CHECK(prof.tail_supremum(1) == 0.5);
    CHECK_THROWS_AS(prof.cesaro_average(2, 2), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cmlecon/errors.hpp"
#include "cmlecon/ricker.hpp"

using namespace cmlecon;
using ricker::MapParams;

TEST_CASE("map values") {
    const MapParams p(4.0, 0.6);
    CHECK(ricker::step(0.0, p) == 0.0);
    CHECK(ricker::step(1.0, p) == doctest::Approx(2.681280184142557).epsilon(1e-12));
    const double x0 = std::log(4.0) / 0.4; // 3.46574
    CHECK(ricker::step(x0, p) == doctest::Approx(x0).epsilon(1e-12));

    CHECK_THROWS_AS(ricker::step(-1.0, p), DomainError);
    CHECK_THROWS_AS(ricker::step(std::numeric_limits<double>::infinity(), p), DomainError);
    CHECK_THROWS_AS(MapParams(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(MapParams(2.0, -0.5), DomainError);
}

TEST_CASE("change of variable y = |1-a| x") {
    CHECK(ricker::to_generic(5.0, MapParams(2.0, 0.6)) == 2.0);
    CHECK(ricker::to_generic(3.75, MapParams(2.0, 0.0)) == 3.75); // c = 1
    CHECK_THROWS_AS(ricker::to_generic(1.0, MapParams(2.0, 1.0)), SingularParameterError);
}

TEST_CASE("fixed point ln r / |1-a|") {
    CHECK(ricker::fixed_point(MapParams(4.0, 0.6)) ==
          doctest::Approx(3.4657359027997265).epsilon(1e-12));
    CHECK(ricker::fixed_point(MapParams(8.0, 0.92)) == doctest::Approx(25.9930).epsilon(1e-4));
    CHECK_THROWS_AS(ricker::fixed_point(MapParams(1.0, 0.5)), NoFixedPointError);
    CHECK_THROWS_AS(ricker::fixed_point(MapParams(0.5, 0.5)), NoFixedPointError);
    CHECK_THROWS_AS(ricker::fixed_point(MapParams(4.0, 1.0)), SingularParameterError);
}

TEST_CASE("fixed point residual stays below 1e-12 relative") {
    for (const double r : {1.5, 2.0, 4.0, 7.0, 12.0}) {
        for (const double a : {0.0, 0.3, 0.92, 1.8}) {
            const MapParams p(r, a);
            const double x0 = ricker::fixed_point(p);
            CHECK(std::fabs(ricker::step(x0, p) - x0) <= 1e-12 * x0);
        }
    }
}

TEST_CASE("multiplier 1 - ln r") {
    const double e2 = std::exp(2.0);
    CHECK(ricker::multiplier(MapParams(e2, 0.0)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ricker::multiplier(MapParams(std::exp(1.0), 0.5)) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(ricker::multiplier(MapParams(4.0, 0.3)) ==
          doctest::Approx(1.0 - std::log(4.0)).epsilon(1e-12)); // -0.38629
    // independent of a
    CHECK(ricker::multiplier(MapParams(4.0, 0.3)) == ricker::multiplier(MapParams(4.0, 1.9)));
    CHECK_THROWS_AS(ricker::multiplier(MapParams(0.9, 0.0)), NoFixedPointError);
    CHECK_THROWS_AS(ricker::multiplier(MapParams(4.0, 1.0)), SingularParameterError);
}

TEST_CASE("multiplier agrees with a central finite difference at the fixed point") {
    for (const double r : {2.0, 4.0, 7.389, 9.0}) {
        for (const double a : {0.0, 0.6, 1.4}) {
            const MapParams p(r, a);
            const double x0 = ricker::fixed_point(p);
            const double h = 1e-6;
            const double fd = (ricker::step(x0 + h, p) - ricker::step(x0 - h, p)) / (2.0 * h);
            CHECK(fd == doctest::Approx(ricker::multiplier(p)).epsilon(1e-5));
        }
    }
}

TEST_CASE("conjugacy: generic trajectory equals c times the x trajectory") {
    const struct {
        double r, a;
    } cases[] = {{0.6, 0.3}, {2.0, 0.3}, {4.0, 0.6}, {8.0, 1.7}};
    for (const auto& [r, a] : cases) {
        CAPTURE(r);
        CAPTURE(a);
        const MapParams p(r, a);
        const MapParams generic(r, 0.0); // c = 1: y -> r y e^{-y}
        double x = 0.8;
        double y = ricker::to_generic(x, p);
        for (int t = 0; t < 1000; ++t) {
            x = ricker::step(x, p);
            y = ricker::step(y, generic);
            const double cx = ricker::to_generic(x, p);
            REQUIRE(std::fabs(y - cx) <= 1e-12 * std::max(std::fabs(y), std::fabs(cx)));
        }
    }
}

TEST_CASE("iterate composes the map") {
    const MapParams p(3.0, 0.5);
    const double two = ricker::step(ricker::step(0.7, p), p);
    CHECK(ricker::iterate(0.7, p, 2) == two);
    CHECK(ricker::iterate(0.7, p, 0) == 0.7);
}

TEST_CASE("orbit records kept samples after the transient") {
    const ricker::Orbit orb = ricker::orbit(MapParams(4.0, 0.0), 100, 32);
    CHECK(orb.samples.size() == 32);
    CHECK(orb.kept == 32);
    CHECK(orb.transient == 100);
    for (const double v : orb.samples) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
    CHECK_THROWS_AS(ricker::orbit(MapParams(4.0, 0.0), 10, 8, -1.0), DomainError);
}

TEST_CASE("bifurcation scan: collapse, fixed point, period 2") {
    SUBCASE("r < 1 relaxes to zero") {
        const auto orbits = ricker::bifurcation_scan(Range{0.5, 0.5, 1.0}, 0.0);
        REQUIRE(orbits.size() == 1);
        for (const double v : orbits[0].samples) {
            CHECK(v < 1e-6);
        }
    }
    SUBCASE("r = 4 sits on the stable fixed point ln 4") {
        const auto orbits = ricker::bifurcation_scan(Range{4.0, 4.0, 1.0}, 0.0);
        REQUIRE(orbits.size() == 1);
        for (const double v : orbits[0].samples) {
            CHECK(v == doctest::Approx(std::log(4.0)).epsilon(1e-6));
        }
        CHECK(ricker::detect_period(orbits[0].samples) == 1);
    }
    SUBCASE("r = 8 alternates on a period-2 orbit") {
        const auto orbits = ricker::bifurcation_scan(Range{8.0, 8.0, 1.0}, 0.0);
        REQUIRE(orbits.size() == 1);
        const auto& s = orbits[0].samples;
        CHECK(ricker::detect_period(s) == 2);
        CHECK(std::fabs(s[0] - s[1]) > 1e-3);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            CHECK(s[i] == doctest::Approx(s[i + 2]).epsilon(1e-9));
        }
    }
    SUBCASE("the range is walked inclusively") {
        const auto orbits = ricker::bifurcation_scan(Range{1.0, 2.0, 0.5}, 0.0, 10, 4);
        REQUIRE(orbits.size() == 3);
        CHECK(orbits[0].params.r == 1.0);
        CHECK(orbits[2].params.r == 2.0);
    }
    CHECK_THROWS_AS(ricker::bifurcation_scan(Range{2.0, 3.0, 0.5}, 1.0), SingularParameterError);
}

TEST_CASE("detect_period") {
    const std::vector<double> constant(40, 1.25);
    CHECK(ricker::detect_period(constant) == 1);

    std::vector<double> alternating;
    for (int i = 0; i < 40; ++i) {
        alternating.push_back(i % 2 == 0 ? 1.0 : 2.0);
    }
    CHECK(ricker::detect_period(alternating) == 2);

    // deep in the chaotic band of the generic map
    const ricker::Orbit chaos = ricker::orbit(MapParams(30.0, 0.0), 2000, 256);
    CHECK_FALSE(ricker::detect_period(chaos.samples).has_value());

    const std::vector<double> zeros(16, 0.0);
    CHECK(ricker::detect_period(zeros) == 1);
}

TEST_CASE("flip onset located by bisection at e^2") {
    const double onset = ricker::find_flip_onset(2.0, 10.0, 1e-9);
    CHECK(std::fabs(onset - std::exp(2.0)) < 1e-6);
    CHECK_THROWS_AS(ricker::find_flip_onset(2.0, 3.0, 1e-9), DomainError); // no sign change
    CHECK_THROWS_AS(ricker::find_flip_onset(0.5, 10.0, 1e-9), DomainError);
}

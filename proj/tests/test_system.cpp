#include <doctest.h>

#include <cmath>

#include "comotion/system.hpp"

using namespace comotion;

TEST_CASE("oscillator maps onto the linear system and round-trips") {
    OscillatorParams p{2.0, 3.0, 0.5, 1.25, 0.75};
    const ForcedLinearSystem s = to_system(p);
    CHECK(s.a == -9.0);
    CHECK(s.b == -0.25);
    CHECK(s.force(0.0) == 0.0);
    CHECK(s.force(1.0) == doctest::Approx(1.25 / 2.0 * std::sin(0.75)).epsilon(1e-15));
    // recover the parameters from (a, b)
    CHECK(std::sqrt(-s.a) == doctest::Approx(p.omega).epsilon(1e-15));
    CHECK(-s.b * p.m == doctest::Approx(p.lambda).epsilon(1e-15));
}

TEST_CASE("parameter validation names the field") {
    OscillatorParams p;
    p.m = -1.0;
    CHECK_THROWS_WITH_AS(p.validate(), "OscillatorParams.m must be finite and > 0",
                         std::invalid_argument);
    p.m = 1.0;
    p.omega = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.omega = 1.0;
    p.lambda = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("damping classification") {
    SUBCASE("zero damping is underdamped with discriminant omega^2") {
        const DampingRegime r = classify_damping({1.0, 1.0, 0.0, 0.0, 0.0});
        CHECK(r.kind == DampingKind::Underdamped);
        CHECK(r.discriminant == 1.0);
    }
    SUBCASE("lambda = 2 m omega is critical, discriminant 0") {
        const DampingRegime r = classify_damping({1.0, 1.0, 2.0, 0.0, 0.0});
        CHECK(r.kind == DampingKind::Critical);
        CHECK(r.discriminant == 0.0);
    }
    SUBCASE("omega = 0.5, lambda = 4 is overdamped, discriminant -3.75") {
        const DampingRegime r = classify_damping({1.0, 0.5, 4.0, 0.0, 0.0});
        CHECK(r.kind == DampingKind::Overdamped);
        CHECK(r.discriminant == doctest::Approx(-3.75).epsilon(1e-15));
    }
    SUBCASE("tolerance band is relative") {
        OscillatorParams p{1.0, 1.0, 2.0 * (1.0 + 1e-12), 0.0, 0.0};
        CHECK(classify_damping(p, 1e-9).kind == DampingKind::Critical);
        CHECK(classify_damping(p, 1e-15).kind == DampingKind::Overdamped);
    }
}

#include <doctest.h>

#include <cmath>

#include "comotion/integrate.hpp"
#include "comotion/particular.hpp"

using namespace comotion;

namespace {

const ForcedLinearSystem kFreeOscillator{-1.0, 0.0, nullptr};

ForcedLinearSystem forced_sin2t() {
    return {-1.0, 0.0, [](double t) { return std::sin(2.0 * t); }};
}

}  // namespace

TEST_CASE("RK4 reproduces cos(t) over one period") {
    const Trajectory traj =
        integrate(kFreeOscillator, 1.0, 0.0, {0.0, 2.0 * M_PI, 1e-3});
    const State last = traj.states.back();
    CHECK(std::abs(last.x - std::cos(traj.times.back())) <= 1e-10);
    CHECK(std::abs(last.v + std::sin(traj.times.back())) <= 1e-10);
    CHECK(traj.meta.integrator == "rk4");
    CHECK(traj.times.size() == traj.states.size());
}

TEST_CASE("equilibrium stays at the origin") {
    const Trajectory traj = integrate(kFreeOscillator, 0.0, 0.0, {0.0, 5.0, 1e-2});
    for (const State& s : traj.states) {
        CHECK(s.x == 0.0);
        CHECK(s.v == 0.0);
    }
}

TEST_CASE("launching on the particular solution stays on it") {
    // x0 = alpha(0) = 0, v0 = beta(0) = -2/3 for f = sin 2t, a = -1
    const Trajectory traj =
        integrate(forced_sin2t(), 0.0, -2.0 / 3.0, {0.0, 20.0, 1e-3});
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        worst = std::max(worst,
                         std::abs(traj.states[i].x + std::sin(2.0 * traj.times[i]) / 3.0));
    CHECK(worst <= 1e-9);
}

TEST_CASE("halving h reduces the RK4 final-state error 16x") {
    auto final_error = [](double h) {
        const Trajectory traj = integrate(kFreeOscillator, 1.0, 0.0, {0.0, 10.0, h});
        const double t = traj.times.back();
        return std::hypot(traj.states.back().x - std::cos(t),
                          traj.states.back().v + std::sin(t));
    };
    const double ratio = final_error(2e-3) / final_error(1e-3);
    CHECK(ratio >= 16.0 * 0.75);
    CHECK(ratio <= 16.0 * 1.25);
}

TEST_CASE("superposition: integrating f1 + f2 from rest is the sum of the parts") {
    auto f1 = [](double t) { return std::sin(2.0 * t); };
    auto f2 = [](double t) { return 0.7 * std::cos(0.5 * t); };
    const ForcedLinearSystem s1{-1.0, -0.2, f1};
    const ForcedLinearSystem s2{-1.0, -0.2, f2};
    const ForcedLinearSystem s12{-1.0, -0.2, [f1, f2](double t) { return f1(t) + f2(t); }};
    const TimeGrid grid{0.0, 10.0, 1e-3};
    const Trajectory a = integrate(s1, 0.0, 0.0, grid);
    const Trajectory b = integrate(s2, 0.0, 0.0, grid);
    const Trajectory ab = integrate(s12, 0.0, 0.0, grid);
    for (std::size_t i = 0; i < ab.times.size(); i += 100) {
        CHECK(std::abs(ab.states[i].x - a.states[i].x - b.states[i].x) <= 1e-9);
        CHECK(std::abs(ab.states[i].v - a.states[i].v - b.states[i].v) <= 1e-9);
    }
}

TEST_CASE("RK45 matches the exact flow on the grid") {
    Tolerances tol{1e-12, 1e-12};
    const Trajectory traj =
        integrate(kFreeOscillator, 1.0, 0.0, {0.0, 10.0, 0.1}, Method::RK45, tol);
    CHECK(traj.meta.integrator == "rk45");
    CHECK(traj.times.size() == 101);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        worst = std::max(worst, std::abs(traj.states[i].x - std::cos(traj.times[i])));
    CHECK(worst <= 1e-8);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((TimeGrid{0.0, -1.0, 1e-3}).size(), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 0.0}).size(), std::invalid_argument);
    TimeGrid too_fine{0.0, 1e4, 1e-6};
    too_fine.max_samples = 1000;
    CHECK_THROWS_AS(too_fine.size(), std::invalid_argument);
}

TEST_CASE("numeric particular solution") {
    SUBCASE("zero forcing gives the zero solution") {
        const ParticularSolution ps =
            particular_solution_numeric(kFreeOscillator, {0.0, 5.0, 1e-2});
        CHECK(ps.provenance == SolutionProvenance::Numeric);
        CHECK(ps.alpha(2.345) == 0.0);
        CHECK(ps.beta(2.345) == 0.0);
    }
    SUBCASE("self-residual at off-grid points") {
        const ForcedLinearSystem sys = forced_sin2t();
        const ParticularSolution ps = particular_solution_numeric(sys, {0.0, 20.0, 1e-3});
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double t = 0.31 + i * 0.0387;  // deliberately off-grid
            const double h = 1e-4;
            const double fd_beta = (ps.alpha(t + h) - ps.alpha(t - h)) / (2.0 * h);
            const double fd_acc = (ps.beta(t + h) - ps.beta(t - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd_beta - ps.beta(t)));
            worst = std::max(worst, std::abs(fd_acc - ps.alpha_ddot(t)));
        }
        CHECK(worst <= 1e-7);  // O(h^2) differencing on O(h^4) dense output
    }
    SUBCASE("difference from the closed form is a homogeneous solution") {
        const ForcedLinearSystem sys = forced_sin2t();
        const ParticularSolution num = particular_solution_numeric(sys, {0.0, 20.0, 1e-3});
        // closed form for a = -1, f = sin 2t: alpha = -sin(2t)/3
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = 0.05 + i * 0.099;
            const double d_alpha = num.alpha(t) + std::sin(2.0 * t) / 3.0;
            const double d_ddot = num.alpha_ddot(t) - 4.0 * std::sin(2.0 * t) / 3.0;
            // homogeneous: d'' = a d  (b = 0 here)
            worst = std::max(worst, std::abs(d_ddot - sys.a * d_alpha));
        }
        CHECK(worst <= 1e-8);
    }
}

#include "comotion/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace comotion {

namespace {

struct Vec2 {
    double x = 0.0, v = 0.0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, v + o.v}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, v - o.v}; }
    Vec2 operator*(double s) const { return {x * s, v * s}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(v); }
};
Vec2 operator*(double s, Vec2 a) { return a * s; }

Vec2 rhs(const ForcedLinearSystem& sys, double t, Vec2 y) {
    return {y.v, sys.acceleration(y.x, y.v, t)};
}

Vec2 rk4_step(const ForcedLinearSystem& sys, double t, Vec2 y, double h) {
    const Vec2 k1 = rhs(sys, t, y);
    const Vec2 k2 = rhs(sys, t + 0.5 * h, y + 0.5 * h * k1);
    const Vec2 k3 = rhs(sys, t + 0.5 * h, y + 0.5 * h * k2);
    const Vec2 k4 = rhs(sys, t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) with Hairer's fourth-order dense output.
struct Dopri5Step {
    double t0, h;
    Vec2 r1, r2, r3, r4, r5;  // dense-output coefficients

    Vec2 at(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

class Dopri5 {
  public:
    Dopri5(const ForcedLinearSystem& sys, Tolerances tol) : sys_(sys), tol_(tol) {}

    // Advances (t, y) by one accepted step and returns the dense interpolant.
    Dopri5Step step(double& t, Vec2& y, double t_end) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                                c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                                e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;
        static constexpr double d1 = -12715105075.0 / 11282082432.0,
                                d3 = 87487479700.0 / 32700410799.0,
                                d4 = -10690763975.0 / 1880347072.0,
                                d5 = 701980252875.0 / 199316789632.0,
                                d6 = -1453857185.0 / 822651844.0,
                                d7 = 69997945.0 / 29380423.0;

        if (!have_k1_) {
            k1_ = rhs(sys_, t, y);
            have_k1_ = true;
        }
        if (h_ <= 0.0) h_ = initial_step(t, y);

        for (int attempt = 0; attempt < 100; ++attempt) {
            const double h = std::min(h_, t_end - t);
            const Vec2 k1 = k1_;
            const Vec2 k2 = rhs(sys_, t + c2 * h, y + h * (a21 * k1));
            const Vec2 k3 = rhs(sys_, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
            const Vec2 k4 =
                rhs(sys_, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vec2 k5 = rhs(sys_, t + c5 * h,
                                y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec2 k6 =
                rhs(sys_, t + h,
                    y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vec2 y1 =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec2 k7 = rhs(sys_, t + h, y1);
            const Vec2 err =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            if (!y1.finite())
                throw NumericalAbort("non-finite state in RK45 step", t + h);

            const double scx = tol_.abs_tol +
                               tol_.rel_tol * std::max(std::abs(y.x), std::abs(y1.x));
            const double scv = tol_.abs_tol +
                               tol_.rel_tol * std::max(std::abs(y.v), std::abs(y1.v));
            const double enorm = std::sqrt(
                0.5 * ((err.x / scx) * (err.x / scx) + (err.v / scv) * (err.v / scv)));

            double fac = 0.9 * std::pow(std::max(enorm, 1e-16), -0.2);
            fac = std::clamp(fac, 0.2, 10.0);

            if (enorm <= 1.0) {
                Dopri5Step dense;
                dense.t0 = t;
                dense.h = h;
                const Vec2 ydiff = y1 - y;
                dense.r1 = y;
                dense.r2 = ydiff;
                dense.r3 = h * k1 - ydiff;
                dense.r4 = ydiff - h * k7 - dense.r3;
                dense.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 +
                                d7 * k7);
                t += h;
                y = y1;
                k1_ = k7;  // FSAL
                h_ = h * fac;
                return dense;
            }
            h_ = h * fac;
        }
        throw NumericalAbort("RK45 step size control failed to converge", t);
    }

  private:
    double initial_step(double t, Vec2 y) const {
        const Vec2 f = rhs(sys_, t, y);
        const double d0 = std::max({std::abs(y.x), std::abs(y.v), 1e-6});
        const double d1 = std::max({std::abs(f.x), std::abs(f.v), 1e-6});
        return std::clamp(0.01 * d0 / d1, 1e-8, 0.1);
    }

    const ForcedLinearSystem& sys_;
    Tolerances tol_;
    Vec2 k1_;
    bool have_k1_ = false;
    double h_ = 0.0;
};

}  // namespace

std::size_t TimeGrid::size() const {
    if (!(std::isfinite(t_start) && std::isfinite(t_end) && t_end > t_start))
        throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
    if (!(std::isfinite(h) && h > 0.0))
        throw std::invalid_argument("TimeGrid: h must be > 0");
    const double n = std::floor((t_end - t_start) / h + 1e-9);
    if (n + 1.0 > static_cast<double>(max_samples))
        throw std::invalid_argument("TimeGrid: sample count exceeds max_samples");
    return static_cast<std::size_t>(n) + 1;
}

Trajectory integrate(const ForcedLinearSystem& system, double x0, double v0,
                     const TimeGrid& grid, Method method, Tolerances tol) {
    const std::size_t n = grid.size();
    Trajectory traj;
    traj.times.reserve(n);
    traj.states.reserve(n);
    traj.meta = {method == Method::RK4 ? "rk4" : "rk45",
                 grid.h, x0, v0, system.a, system.b};

    if (method == Method::RK4) {
        Vec2 y{x0, v0};
        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.time(i);
            traj.times.push_back(t);
            traj.states.push_back({y.x, y.v});
            if (i + 1 < n) {
                y = rk4_step(system, t, y, grid.h);
                if (!y.finite())
                    throw NumericalAbort("non-finite state in RK4 step", grid.time(i + 1));
            }
        }
        return traj;
    }

    Dopri5 stepper(system, tol);
    Vec2 y{x0, v0};
    double t = grid.t_start;
    std::size_t next = 0;
    traj.times.push_back(t);
    traj.states.push_back({y.x, y.v});
    ++next;
    const double t_final = grid.time(n - 1);
    while (next < n) {
        const Dopri5Step dense = stepper.step(t, y, t_final);
        while (next < n && grid.time(next) <= t + 1e-12 * std::max(1.0, std::abs(t))) {
            const Vec2 yi = dense.at(std::min(grid.time(next), t));
            traj.times.push_back(grid.time(next));
            traj.states.push_back({yi.x, yi.v});
            ++next;
        }
    }
    return traj;
}

namespace {

struct HermiteTable {
    double t0, h;
    std::vector<double> val, der;

    // Cubic Hermite on the interval containing t; extrapolates with the
    // boundary interval outside the grid.
    double at(double t) const {
        const std::size_t last = val.size() - 2;
        double u = (t - t0) / h;
        std::size_t i = u <= 0.0 ? 0
                                 : std::min(static_cast<std::size_t>(u), last);
        const double s = u - static_cast<double>(i);
        const double y0 = val[i], y1 = val[i + 1];
        const double d0 = der[i] * h, d1 = der[i + 1] * h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
               (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
    }
};

}  // namespace

ParticularSolution particular_solution_numeric(const ForcedLinearSystem& system,
                                               const TimeGrid& grid) {
    const std::size_t n = grid.size();
    if (n < 2)
        throw std::invalid_argument("particular_solution_numeric: grid too coarse");

    auto alpha_tab = std::make_shared<HermiteTable>();
    auto beta_tab = std::make_shared<HermiteTable>();
    alpha_tab->t0 = beta_tab->t0 = grid.t_start;
    alpha_tab->h = beta_tab->h = grid.h;
    alpha_tab->val.reserve(n);
    beta_tab->val.reserve(n);

    Vec2 y{0.0, 0.0};  // canonical choice: zero initial data
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.time(i);
        alpha_tab->val.push_back(y.x);
        beta_tab->val.push_back(y.v);
        alpha_tab->der.push_back(y.v);
        beta_tab->der.push_back(system.acceleration(y.x, y.v, t));
        if (i + 1 < n) {
            y = rk4_step(system, t, y, grid.h);
            if (!y.finite())
                throw NumericalAbort("non-finite state integrating the particular solution",
                                     grid.time(i + 1));
        }
    }

    ParticularSolution ps;
    ps.alpha = [alpha_tab](double t) { return alpha_tab->at(t); };
    ps.beta = [beta_tab](double t) { return beta_tab->at(t); };
    ps.alpha_ddot = [alpha_tab, beta_tab, a = system.a, b = system.b,
                     f = system.forcing](double t) {
        return a * alpha_tab->at(t) + b * beta_tab->at(t) + (f ? f(t) : 0.0);
    };
    ps.provenance = SolutionProvenance::Numeric;
    return ps;
}

}  // namespace comotion

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "comotion/particular.hpp"
#include "comotion/system.hpp"

namespace comotion {

/// Uniform sampling grid on [t_start, t_end] with step h.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    double h = 1e-3;
    std::size_t max_samples = 10'000'000;

    /// Number of samples including both endpoints. Throws on invalid grids.
    std::size_t size() const;
    double time(std::size_t i) const { return t_start + static_cast<double>(i) * h; }
};

enum class Method { RK4, RK45 };

struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

struct State {
    double x;
    double v;
};

struct TrajectoryMeta {
    std::string integrator;
    double h = 0.0;
    double x0 = 0.0;
    double v0 = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct Trajectory {
    std::vector<double> times;   // strictly increasing
    std::vector<State> states;   // same length as times
    TrajectoryMeta meta;
};

class NumericalAbort : public std::runtime_error {
  public:
    NumericalAbort(const std::string& what, double t)
        : std::runtime_error(what), t_fail(t) {}
    double t_fail;
};

/// Samples the flow of the system on the grid. RK4 steps on the grid itself;
/// RK45 (Dormand-Prince 5(4)) steps adaptively and fills the grid from its
/// fourth-order dense output. Throws NumericalAbort on non-finite states.
Trajectory integrate(const ForcedLinearSystem& system, double x0, double v0,
                     const TimeGrid& grid, Method method = Method::RK4,
                     Tolerances tol = {});

/// Numeric particular solution: integrates alpha'' = a alpha + b beta + f
/// from alpha(t_start) = beta(t_start) = 0 with RK4 on the grid. alpha and
/// beta evaluate off-grid by cubic Hermite interpolation of the stored
/// nodes; alpha_ddot evaluates through the right-hand side.
ParticularSolution particular_solution_numeric(const ForcedLinearSystem& system,
                                               const TimeGrid& grid);

}  // namespace comotion

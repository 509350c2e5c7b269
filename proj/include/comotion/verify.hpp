#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "comotion/integrate.hpp"
#include "comotion/invariants.hpp"

namespace comotion {

/// Absolute floor for the relative-drift scale, so k0 ~ 0 does not blow up
/// the quotient.
inline constexpr double kDriftFloor = 1e-12;

/// A maximal trajectory segment on which the invariant is single-valued
/// under the active policy. Under Unwrapped there is exactly one arc.
struct Arc {
    std::size_t begin = 0;  // sample index, inclusive
    std::size_t end = 0;    // sample index, exclusive
    double k_ref = 0.0;     // K at the first sample of the arc
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;
};

struct DriftReport {
    std::vector<double> k_values;  // K along the trajectory (NaN where singular)
    double k0 = 0.0;               // K at t_start
    double max_abs_drift = 0.0;    // worst within-arc |K - k_ref|
    double max_rel_drift = 0.0;    // worst within-arc relative drift
    double scale = 0.0;            // max(|k0|, max |K|, floor) of the worst arc
    double floor = kDriftFloor;
    AnglePolicy policy = AnglePolicy::PrincipalBranch;
    std::vector<Arc> arcs;
};

/// Evaluates the invariant along the trajectory and reports drift.
/// Under PrincipalBranch with a singular locus, the trajectory is split into
/// arcs at sign changes of x - locus(t) and drift is measured per arc.
/// Throws std::invalid_argument when the trajectory metadata does not match
/// the invariant's system coefficients.
DriftReport drift(const InvariantEvaluator& invariant, const Trajectory& traj,
                  double floor = kDriftFloor);

/// Central-difference residual of the defining transport equation
///   v dK/dx + (a x + b v + f(t)) dK/dv + dK/dt
/// with per-coordinate steps h * max(1, |coordinate|).
double pde_residual(const InvariantEvaluator& invariant,
                    const ForcedLinearSystem& system, double x, double v,
                    double t, double h);

struct ResidualSample {
    double x = 0.0, v = 0.0, t = 0.0;
    std::vector<double> residuals;  // one per step size
    double order_estimate = 0.0;    // least-squares slope of log|r| vs log h
};

struct ResidualReport {
    std::vector<double> steps;
    std::vector<ResidualSample> samples;
    double order_estimate = 0.0;  // median of per-sample slopes
    std::uint64_t seed = 0;
};

/// Sampling box for residual studies; points are rejected while closer than
/// min_locus_distance to the invariant's singular locus.
struct SampleBox {
    double x_max = 2.0;
    double v_max = 2.0;
    double t_max = 10.0;
    double min_locus_distance = 0.3;
};

/// Residual convergence study at n seeded random points over >= 3 step sizes
/// in geometric progression.
ResidualReport residual_study(const InvariantEvaluator& invariant,
                              const ForcedLinearSystem& system,
                              std::size_t n_points,
                              const std::vector<double>& steps,
                              std::uint64_t seed, SampleBox box = {});

struct RefinementStudy {
    std::vector<double> steps;
    std::vector<double> drifts;   // max_rel_drift per step
    double order_estimate = 0.0;  // least-squares slope of log(drift) vs log(h)
    bool conclusive = true;       // false when drift sits at the rounding floor
};

/// Integrates the system with RK4 at each step size and fits the drift order.
RefinementStudy refinement_study(const InvariantEvaluator& invariant,
                                 const ForcedLinearSystem& system, double x0,
                                 double v0, double t_start, double t_end,
                                 const std::vector<double>& steps,
                                 double floor = kDriftFloor);

nlohmann::json to_json(const DriftReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const RefinementStudy& r);

/// Least-squares slope of log|y| vs log(x); helper shared by the studies.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace comotion

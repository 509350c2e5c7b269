#include "comotion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace comotion {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_metadata(const InvariantEvaluator& inv, const TrajectoryMeta& meta) {
    if (!inv.has_system) return;
    const double tol_a = 1e-9 * std::max(1.0, std::abs(inv.system_a));
    const double tol_b = 1e-9 * std::max(1.0, std::abs(inv.system_b));
    if (std::abs(inv.system_a - meta.a) > tol_a ||
        std::abs(inv.system_b - meta.b) > tol_b)
        throw std::invalid_argument(
            "drift: trajectory system coefficients do not match the invariant");
}

void finish_arc(Arc& arc, double floor, DriftReport& report) {
    if (arc.end <= arc.begin) return;
    double kmax = std::abs(arc.k_ref);
    double max_abs = 0.0;
    for (std::size_t i = arc.begin; i < arc.end; ++i) {
        const double k = report.k_values[i];
        if (std::isnan(k)) continue;
        kmax = std::max(kmax, std::abs(k));
        max_abs = std::max(max_abs, std::abs(k - arc.k_ref));
    }
    const double scale = std::max({std::abs(arc.k_ref), kmax, floor});
    arc.max_abs_drift = max_abs;
    arc.max_rel_drift = max_abs / scale;
    if (arc.max_rel_drift >= report.max_rel_drift) {
        report.max_rel_drift = arc.max_rel_drift;
        report.max_abs_drift = arc.max_abs_drift;
        report.scale = scale;
    }
    report.arcs.push_back(arc);
}

}  // namespace

DriftReport drift(const InvariantEvaluator& invariant, const Trajectory& traj,
                  double floor) {
    if (traj.times.empty() || traj.times.size() != traj.states.size())
        throw std::invalid_argument("drift: malformed trajectory");
    check_metadata(invariant, traj.meta);

    DriftReport report;
    report.policy = invariant.angle_policy;
    report.floor = floor;
    report.k_values.resize(traj.times.size(), kNaN);

    const bool unwrapped = invariant.angle_policy == AnglePolicy::Unwrapped;
    WindingState winding;  // confined to this call

    Arc arc;
    bool arc_open = false;
    int prev_sign = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const auto [x, v] = traj.states[i];

        // Arc boundary: the phase point crosses the singular locus.
        if (!unwrapped && invariant.singular_locus) {
            const double d = x - invariant.singular_locus(t);
            const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (arc_open && s != prev_sign) {
                arc.end = i;
                finish_arc(arc, floor, report);
                arc_open = false;
            }
            prev_sign = s;
        }

        double k = kNaN;
        try {
            k = unwrapped ? invariant.eval_tracked(x, v, t, winding)
                          : invariant.eval(x, v, t);
        } catch (const SingularEvaluation&) {
            // sample on the singular locus: leave NaN, close the arc
            if (arc_open) {
                arc.end = i;
                finish_arc(arc, floor, report);
                arc_open = false;
            }
            continue;
        }
        report.k_values[i] = k;
        if (!arc_open) {
            arc = Arc{};
            arc.begin = i;
            arc.k_ref = k;
            arc_open = true;
        }
    }
    if (arc_open) {
        arc.end = traj.times.size();
        finish_arc(arc, floor, report);
    }
    report.k0 = report.k_values.empty() ? kNaN : report.k_values.front();
    return report;
}

double pde_residual(const InvariantEvaluator& invariant,
                    const ForcedLinearSystem& system, double x, double v,
                    double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("pde_residual: h must be > 0");
    const double hx = h * std::max(1.0, std::abs(x));
    const double hv = h * std::max(1.0, std::abs(v));
    const double ht = h * std::max(1.0, std::abs(t));
    if (invariant.singular_locus &&
        std::abs(x - invariant.singular_locus(t)) < 2.0 * hx)
        throw SingularEvaluation("pde_residual: point too close to the singular locus");
    const auto& K = invariant.eval;
    const double kx = (K(x + hx, v, t) - K(x - hx, v, t)) / (2.0 * hx);
    const double kv = (K(x, v + hv, t) - K(x, v - hv, t)) / (2.0 * hv);
    const double kt = (K(x, v, t + ht) - K(x, v, t - ht)) / (2.0 * ht);
    return v * kx + system.acceleration(x, v, t) * kv + kt;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 matched samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(std::abs(x[i]));
        const double ly = std::log(std::max(std::abs(y[i]), 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResidualReport residual_study(const InvariantEvaluator& invariant,
                              const ForcedLinearSystem& system,
                              std::size_t n_points,
                              const std::vector<double>& steps,
                              std::uint64_t seed, SampleBox box) {
    if (steps.size() < 3)
        throw std::invalid_argument("residual_study: need >= 3 step sizes");
    const double h_max = *std::max_element(steps.begin(), steps.end());

    ResidualReport report;
    report.steps = steps;
    report.seed = seed;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-box.x_max, box.x_max);
    std::uniform_real_distribution<double> uv(-box.v_max, box.v_max);
    std::uniform_real_distribution<double> ut(0.0, box.t_max);

    std::size_t lead_index = 0;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i] == h_max) lead_index = i;

    // Gather a pool of candidate points first. Points where the leading h^2
    // coefficient nearly vanishes give residuals dominated by higher-order
    // terms and rounding; their measured slopes say nothing about the
    // scheme's order, so points whose leading residual is far below the
    // pool median are dropped before fitting.
    std::vector<ResidualSample> pool;
    const std::size_t pool_target = 5 * n_points + 20;
    std::size_t attempts = 0;
    while (pool.size() < pool_target && attempts < 200 * pool_target + 1000) {
        ++attempts;
        ResidualSample s;
        s.x = ux(rng);
        s.v = uv(rng);
        s.t = ut(rng);
        if (invariant.singular_locus &&
            std::abs(s.x - invariant.singular_locus(s.t)) < box.min_locus_distance)
            continue;
        bool ok = true;
        for (double h : steps) {
            try {
                s.residuals.push_back(pde_residual(invariant, system, s.x, s.v, s.t, h));
            } catch (const SingularEvaluation&) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        pool.push_back(std::move(s));
    }

    std::vector<double> leads;
    leads.reserve(pool.size());
    for (const ResidualSample& s : pool)
        leads.push_back(std::abs(s.residuals[lead_index]));
    std::sort(leads.begin(), leads.end());
    const double median_lead = leads.empty() ? 0.0 : leads[leads.size() / 2];
    const double cutoff = std::max(1e-12, 0.02 * median_lead);

    std::vector<double> slopes;
    for (ResidualSample& s : pool) {
        if (report.samples.size() >= n_points) break;
        if (std::abs(s.residuals[lead_index]) < cutoff) continue;
        s.order_estimate = loglog_slope(steps, s.residuals);
        slopes.push_back(s.order_estimate);
        report.samples.push_back(std::move(s));
    }
    if (!slopes.empty()) {
        std::sort(slopes.begin(), slopes.end());
        report.order_estimate = slopes[slopes.size() / 2];
    }
    return report;
}

RefinementStudy refinement_study(const InvariantEvaluator& invariant,
                                 const ForcedLinearSystem& system, double x0,
                                 double v0, double t_start, double t_end,
                                 const std::vector<double>& steps,
                                 double floor) {
    if (steps.size() < 3)
        throw std::invalid_argument("refinement_study: need >= 3 step sizes");
    RefinementStudy study;
    study.steps = steps;
    for (double h : steps) {
        TimeGrid grid{t_start, t_end, h};
        const Trajectory traj = integrate(system, x0, v0, grid, Method::RK4);
        study.drifts.push_back(drift(invariant, traj, floor).max_rel_drift);
    }
    study.order_estimate = loglog_slope(steps, study.drifts);
    // Drift at the rounding floor says nothing about the integrator order.
    study.conclusive =
        *std::min_element(study.drifts.begin(), study.drifts.end()) >
        64.0 * std::numeric_limits<double>::epsilon();
    return study;
}

nlohmann::json to_json(const DriftReport& r) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& a : r.arcs)
        arcs.push_back({{"begin", a.begin},
                        {"end", a.end},
                        {"k_ref", a.k_ref},
                        {"max_abs_drift", a.max_abs_drift},
                        {"max_rel_drift", a.max_rel_drift}});
    return {{"max_abs_drift", r.max_abs_drift},
            {"max_rel_drift", r.max_rel_drift},
            {"k0", r.k0},
            {"scale", r.scale},
            {"floor", r.floor},
            {"n_samples", r.k_values.size()},
            {"policy", to_string(r.policy)},
            {"arcs", arcs}};
}

nlohmann::json to_json(const ResidualReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const ResidualSample& s : r.samples)
        samples.push_back({{"x", s.x},
                           {"v", s.v},
                           {"t", s.t},
                           {"residuals", s.residuals},
                           {"order_estimate", s.order_estimate}});
    return {{"order_estimate", r.order_estimate},
            {"steps", r.steps},
            {"seed", r.seed},
            {"samples", samples}};
}

nlohmann::json to_json(const RefinementStudy& r) {
    return {{"order_estimate", r.order_estimate},
            {"steps", r.steps},
            {"drifts", r.drifts},
            {"conclusive", r.conclusive}};
}

}  // namespace comotion

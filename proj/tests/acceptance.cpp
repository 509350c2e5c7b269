// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "comotion/verify.hpp"

using namespace comotion;

namespace {

int g_failures = 0;

void check(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double drift_on(const InvariantEvaluator& inv, const OscillatorParams& p,
                double x0, double v0, double t_end, double h) {
    const Trajectory traj = integrate(to_system(p), x0, v0, {0.0, t_end, h});
    return drift(inv, traj).max_rel_drift;
}

const OscillatorParams kNonRes{1.0, 1.0, 0.0, 1.0, 2.0};
const OscillatorParams kRes{1.0, 1.0, 0.0, 1.0, 1.0};
const OscillatorParams kDamped{1.0, 1.0, 0.1, 1.0, 2.0};

void drift_suite() {
    const double d11 = drift_on(k_undamped_forced_nonresonant(kNonRes), kNonRes,
                                1.0, 0.0, 50.0, 1e-3);
    check("drift: undamped non-resonant invariant <= 1e-6", d11 <= 1e-6,
          "max_rel_drift=" + num(d11));

    const double d13 =
        drift_on(k_undamped_forced_resonant(kRes), kRes, 1.0, 0.0, 50.0, 1e-3);
    check("drift: undamped resonant invariant <= 1e-6", d13 <= 1e-6,
          "max_rel_drift=" + num(d13));

    const double d18 = drift_on(k_damped_forced(kDamped, AnglePolicy::Unwrapped),
                                kDamped, 1.0, 0.0, 50.0, 1e-3);
    check("drift: damped exact invariant (unwrapped) <= 1e-6", d18 <= 1e-6,
          "max_rel_drift=" + num(d18));

    OscillatorParams weak = kNonRes;
    weak.lambda = 0.02;
    // The truncated form is accurate only while (lambda/m)*G stays small, so
    // its drift is measured per arc under the principal branch, where the
    // angle term is bounded.
    const double w1 = drift_on(k_weak_dissipation(weak, AnglePolicy::PrincipalBranch),
                               weak, 1.0, 0.0, 50.0, 1e-3);
    check("drift: weak-dissipation approximation <= 1e-3 at lambda=0.02",
          w1 <= 1e-3, "max_rel_drift=" + num(w1));

    weak.lambda = 0.01;
    const double w2 = drift_on(k_weak_dissipation(weak, AnglePolicy::PrincipalBranch),
                               weak, 1.0, 0.0, 50.0, 1e-3);
    const double ratio = w1 / w2;
    check("drift: weak-dissipation drift scales as lambda^2 (ratio in [3.5, 4.5])",
          ratio >= 3.5 && ratio <= 4.5, "ratio=" + num(ratio));
}

void pde_suite() {
    struct Case {
        const char* name;
        InvariantEvaluator inv;
        OscillatorParams p;
    };
    const std::vector<Case> cases = {
        {"undamped non-resonant", k_undamped_forced_nonresonant(kNonRes), kNonRes},
        {"undamped resonant", k_undamped_forced_resonant(kRes), kRes},
        {"damped exact", k_damped_forced(kDamped), kDamped},
        {"autonomous damped", k_autonomous_damped({1.0, 1.0, 0.1, 0.0, 0.0}),
         {1.0, 1.0, 0.1, 0.0, 0.0}},
    };
    for (const Case& c : cases) {
        const ResidualReport r = residual_study(c.inv, to_system(c.p), 20,
                                                {1e-2, 5e-3, 2.5e-3}, 20260826);
        bool ok = r.samples.size() == 20;
        double worst = r.order_estimate;
        for (const ResidualSample& s : r.samples) {
            if (std::abs(s.order_estimate - 2.0) > std::abs(worst - 2.0))
                worst = s.order_estimate;
            if (std::abs(s.order_estimate - 2.0) > 0.2) ok = false;
        }
        check(std::string("pde residual: order 2.0 +/- 0.2 at 20 points, ") + c.name,
              ok, "worst order=" + num(worst));
    }
}

void refinement_suite() {
    struct Case {
        const char* name;
        InvariantEvaluator inv;
        OscillatorParams p;
    };
    const std::vector<Case> cases = {
        {"undamped non-resonant", k_undamped_forced_nonresonant(kNonRes), kNonRes},
        {"undamped resonant", k_undamped_forced_resonant(kRes), kRes},
        {"damped exact", k_damped_forced(kDamped, AnglePolicy::Unwrapped), kDamped},
    };
    for (const Case& c : cases) {
        const RefinementStudy s = refinement_study(c.inv, to_system(c.p), 1.0, 0.0,
                                                   0.0, 50.0, {4e-3, 2e-3, 1e-3});
        // A study whose drift sits at the rounding floor is reported, not failed.
        const bool ok =
            !s.conclusive || (s.order_estimate >= 3.5 && s.order_estimate <= 4.5);
        check(std::string("refinement: drift slope 4.0 +/- 0.5, ") + c.name, ok,
              "slope=" + num(s.order_estimate) +
                  (s.conclusive ? "" : ", inconclusive (drift at rounding floor)"));
    }
}

double spread(const InvariantEvaluator& a, const InvariantEvaluator& b,
              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng), v = u(rng), t = ut(rng);
        const double d = a(x, v, t) - b(x, v, t);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

void composition_suite() {
    const InvariantEvaluator c_nonres = shift_invariant(
        energy_invariant(kNonRes), particular_solution_sinusoidal(kNonRes));
    const double s1 = spread(c_nonres, k_undamped_forced_nonresonant(kNonRes), 11);
    check("composition: shifted energy minus non-resonant closed form is constant",
          s1 <= 1e-10, "spread=" + num(s1));

    const InvariantEvaluator c_res = shift_invariant(
        energy_invariant(kRes), particular_solution_sinusoidal(kRes));
    const double s2 = spread(c_res, k_undamped_forced_resonant(kRes), 12);
    check("composition: shifted energy minus resonant closed form is constant",
          s2 <= 1e-10, "spread=" + num(s2));
}

void limit_suite() {
    OscillatorParams tiny = kNonRes;
    tiny.lambda = 1e-8;
    const ParticularSolution a_damped = particular_solution_sinusoidal(tiny);
    const ParticularSolution a_undamped = particular_solution_sinusoidal(kNonRes);
    double worst_alpha = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 10.0 * i / 1000.0;
        worst_alpha =
            std::max(worst_alpha, std::abs(a_damped.alpha(t) - a_undamped.alpha(t)));
    }
    check("limit: damped alpha at lambda=1e-8 matches undamped alpha within 1e-6",
          worst_alpha <= 1e-6, "max|diff|=" + num(worst_alpha));

    // Normalized comparison of the damped invariant at lambda = 1e-8 against
    // the lambda = 0 composed invariant at 50 off-singular points.
    const InvariantEvaluator kd = k_damped_forced(tiny, AnglePolicy::Unwrapped);
    const InvariantEvaluator kc = shift_invariant(
        energy_invariant(kNonRes), particular_solution_sinusoidal(kNonRes));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    const double ref_d = kd(3.0, 0.5, 0.0);
    const double ref_c = kc(3.0, 0.5, 0.0);
    double worst = 0.0;
    int used = 0;
    while (used < 50) {
        const double x = u(rng), v = u(rng), t = ut(rng);
        if (std::abs(x - a_damped.alpha(t)) < 0.3) continue;
        ++used;
        const double nd = kd(x, v, t) / ref_d;
        const double nc = kc(x, v, t) / ref_c;
        worst = std::max(worst, std::abs(nd - nc) / std::max(1.0, std::abs(nc)));
    }
    check("limit: damped invariant at lambda=1e-8 matches composed within 1e-6",
          worst <= 1e-6, "max rel diff=" + num(worst));
}

void negative_controls() {
    const double d = drift_on(energy_invariant(kNonRes), kNonRes, 1.0, 0.0, 50.0, 1e-3);
    check("negative control: energy drifts > 1e-2 under forcing", d > 1e-2,
          "max_rel_drift=" + num(d));

    const ForcedLinearSystem sys = to_system(kNonRes);
    const InvariantEvaluator e = energy_invariant(kNonRes);
    bool ok = true;
    double worst = 0.0;
    for (const auto& [x, v, t] :
         std::vector<std::array<double, 3>>{{0.7, -0.3, 1.1}, {1.5, 0.8, 4.0}, {-0.9, 1.2, 2.3}}) {
        const double limit = sys.force(t) * kNonRes.m * v;
        const double rel =
            std::abs(pde_residual(e, sys, x, v, t, 1e-4) - limit) / std::abs(limit);
        worst = std::max(worst, rel);
        if (rel > 0.05) ok = false;
    }
    check("negative control: energy residual converges to f(t) m v within 5%", ok,
          "worst rel err=" + num(worst));
}

void numeric_alpha_suite() {
    const ForcedLinearSystem sys{-1.0, 0.0, [](double t) { return std::sin(2.0 * t); }};
    const ParticularSolution ps = particular_solution_numeric(sys, {0.0, 20.0, 1e-3});
    const InvariantEvaluator inv =
        shift_invariant(energy_invariant({1.0, 1.0, 0.0, 0.0, 0.0}), ps);
    const Trajectory traj = integrate(sys, 1.0, 0.0, {0.0, 20.0, 1e-3});
    const double d = drift(inv, traj).max_rel_drift;
    check("numeric alpha: composed invariant drift <= 1e-6 for f = sin 2t",
          d <= 1e-6, "max_rel_drift=" + num(d));
}

void adjudication_suite() {
    const OscillatorParams crit{1.0, 1.0, 2.0, 0.0, 0.0};  // lambda = 2 m omega
    const double adjudicated =
        drift_on(k_autonomous_damped(crit, AnglePolicy::Unwrapped,
                                     CriticalBranchSign::Adjudicated),
                 crit, 1.0, 0.0, 50.0, 1e-3);
    const double printed =
        drift_on(k_autonomous_damped(crit, AnglePolicy::Unwrapped,
                                     CriticalBranchSign::AsPrinted),
                 crit, 1.0, 0.0, 50.0, 1e-3);
    const bool exactly_one = (adjudicated <= 1e-6) != (printed <= 1e-6);
    check("branch adjudication: exactly one critical-branch sign is invariant",
          exactly_one && adjudicated <= 1e-6,
          "adjudicated drift=" + num(adjudicated) + ", as-printed drift=" + num(printed));
}

}  // namespace

int main() {
    drift_suite();
    pde_suite();
    refinement_suite();
    composition_suite();
    limit_suite();
    negative_controls();
    numeric_alpha_suite();
    adjudication_suite();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}

#include "comotion/invariants.hpp"

#include <cmath>
#include <numbers>

namespace comotion {

namespace {

/// Continuation of a principal angle: shifts `raw` by the multiple of 2*pi
/// closest to the previous continuous angle.
double unwrap(double raw, WindingState& ws) {
    if (!ws.primed) {
        ws.primed = true;
        ws.angle = raw;
        return raw;
    }
    const double two_pi = 2.0 * std::numbers::pi;
    const double turns = std::round((ws.angle - raw) / two_pi);
    ws.angle = raw + turns * two_pi;
    return ws.angle;
}

struct DampedCore {
    double m, lambda, half;  // half = lambda/2m
    double w2;
    DampingKind kind;
    double root;  // nu (underdamped) or mu (overdamped), 0 when critical
    CriticalBranchSign sign;

    double quadratic(double s1, double s2) const {
        return 0.5 * m * (s2 * s2 + (lambda / m) * s1 * s2 + w2 * s1 * s1);
    }

    // G written with both arguments scaled by s1, so u = half*s1 + s2.
    double g_scaled_principal(double s1, double s2) const {
        const double u = half * s1 + s2;
        switch (kind) {
            case DampingKind::Overdamped: {
                const double num = u - root * s1;
                const double den = u + root * s1;
                if (den == 0.0 || num / den <= 0.0)
                    throw SingularEvaluation(
                        "g: overdamped log argument is zero or non-positive");
                return std::log(num / den) / (2.0 * root);
            }
            case DampingKind::Critical: {
                if (u == 0.0)
                    throw SingularEvaluation("g: critical-branch pole (lambda/2m + xi = 0)");
                const double g = -s1 / u;
                return sign == CriticalBranchSign::Adjudicated ? g : -g;
            }
            case DampingKind::Underdamped:
                return std::atan(u / (root * s1)) / root;  // principal arctan
        }
        return 0.0;
    }

    double g_scaled_tracked(double s1, double s2, WindingState& ws) const {
        const double u = half * s1 + s2;
        switch (kind) {
            case DampingKind::Overdamped: {
                const double num = u - root * s1;
                const double den = u + root * s1;
                if (num == 0.0 || den == 0.0)
                    throw SingularEvaluation("g: overdamped log pole");
                return std::log(std::abs(num / den)) / (2.0 * root);
            }
            case DampingKind::Critical: {
                if (u == 0.0)
                    throw SingularEvaluation("g: critical-branch pole (lambda/2m + xi = 0)");
                const double g = -s1 / u;
                return sign == CriticalBranchSign::Adjudicated ? g : -g;
            }
            case DampingKind::Underdamped:
                return unwrap(std::atan2(u, root * s1), ws) / root;
        }
        return 0.0;
    }

    double k_principal(double s1, double s2) const {
        if (s1 == 0.0)
            throw SingularEvaluation("damped invariant: x on the singular locus "
                                     "under PrincipalBranch");
        return quadratic(s1, s2) *
               std::exp(-(lambda / m) * g_scaled_principal(s1, s2));
    }

    double k_tracked(double s1, double s2, WindingState& ws) const {
        if (kind != DampingKind::Underdamped && s1 == 0.0 && half * s1 + s2 == 0.0)
            throw SingularEvaluation("damped invariant: singular point");
        return quadratic(s1, s2) *
               std::exp(-(lambda / m) * g_scaled_tracked(s1, s2, ws));
    }
};

DampedCore make_core(const OscillatorParams& p, CriticalBranchSign sign,
                     double eps_crit = kDefaultEpsCrit) {
    const DampingRegime regime = classify_damping(p, eps_crit);
    DampedCore core;
    core.m = p.m;
    core.lambda = p.lambda;
    core.half = p.lambda / (2.0 * p.m);
    core.w2 = p.omega * p.omega;
    core.kind = regime.kind;
    core.root = regime.kind == DampingKind::Critical
                    ? 0.0
                    : std::sqrt(std::abs(regime.discriminant));
    core.sign = sign;
    return core;
}

}  // namespace

double g_function(double xi, const OscillatorParams& p, double eps_crit,
                  CriticalBranchSign sign) {
    p.validate();
    if (!std::isfinite(xi)) throw std::invalid_argument("g_function: xi must be finite");
    const DampedCore core = make_core(p, sign, eps_crit);
    // s1 = 1 reproduces the xi-argument form.
    return core.g_scaled_principal(1.0, xi);
}

InvariantEvaluator energy_invariant(const OscillatorParams& p) {
    p.validate();
    const double m = p.m;
    const double w2 = p.omega * p.omega;
    InvariantEvaluator inv;
    inv.eval = [m, w2](double x, double v, double) {
        return 0.5 * m * (v * v + w2 * x * x);
    };
    inv.eval_tracked = [eval = inv.eval](double x, double v, double t,
                                         WindingState&) { return eval(x, v, t); };
    inv.kind = InvariantKind::AutonomousOnly;
    inv.system_a = -w2;
    inv.system_b = 0.0;
    inv.has_system = true;
    return inv;
}

InvariantEvaluator k_autonomous_damped(const OscillatorParams& p,
                                       AnglePolicy policy,
                                       CriticalBranchSign sign) {
    p.validate();
    if (p.lambda == 0.0) {
        InvariantEvaluator inv = energy_invariant(p);
        inv.angle_policy = policy;
        return inv;
    }
    const DampedCore core = make_core(p, sign);
    InvariantEvaluator inv;
    inv.eval = [core](double x, double v, double) { return core.k_principal(x, v); };
    inv.eval_tracked = [core](double x, double v, double, WindingState& ws) {
        return core.k_tracked(x, v, ws);
    };
    inv.kind = InvariantKind::AutonomousOnly;
    inv.angle_policy = policy;
    inv.system_a = -core.w2;
    inv.system_b = -(p.lambda / p.m);
    inv.has_system = true;
    inv.singular_locus = [](double) { return 0.0; };
    return inv;
}

InvariantEvaluator k_undamped_forced_nonresonant(const OscillatorParams& p,
                                                 double eps_res) {
    p.validate();
    if (p.lambda != 0.0)
        throw std::invalid_argument("k_undamped_forced_nonresonant: lambda must be 0");
    if (p.amp != 0.0 && in_resonance_band(p, eps_res))
        throw std::domain_error(
            "k_undamped_forced_nonresonant: Omega inside the resonance band");
    const double m = p.m, w2 = p.omega * p.omega, amp = p.amp, om = p.cap_omega;
    const double dd = om * om - w2;  // Omega^2 - omega^2
    InvariantEvaluator inv;
    inv.eval = [m, w2, amp, om, dd](double x, double v, double t) {
        const double s = std::sin(om * t);
        const double c = std::cos(om * t);
        return 0.5 * m * v * v + 0.5 * m * w2 * x * x +
               amp / dd * (om * v * c + w2 * x * s) -
               amp * amp / (2.0 * m * dd) * s * s;
    };
    inv.eval_tracked = [eval = inv.eval](double x, double v, double t,
                                         WindingState&) { return eval(x, v, t); };
    inv.kind = InvariantKind::UndampedNonResonant;
    inv.normalization =
        "additive constant A^2 Omega^2 / (2 m (Omega^2 - omega^2)^2) dropped";
    inv.system_a = -w2;
    inv.system_b = 0.0;
    inv.has_system = true;
    return inv;
}

InvariantEvaluator k_undamped_forced_resonant(const OscillatorParams& p) {
    p.validate();
    if (p.lambda != 0.0)
        throw std::invalid_argument("k_undamped_forced_resonant: lambda must be 0");
    // Both frequencies are the natural frequency here.
    const double m = p.m, w = p.omega, amp = p.amp;
    InvariantEvaluator inv;
    inv.eval = [m, w, amp](double x, double v, double t) {
        const double s = std::sin(w * t);
        const double c = std::cos(w * t);
        return 0.5 * m * v * v + 0.5 * m * w * w * x * x +
               amp / (4.0 * w) *
                   ((v + 2.0 * x * w * w * t) * c - (x * w + 2.0 * v * w * t) * s) +
               amp * amp * t / (8.0 * m * w) * (w * t - std::sin(2.0 * w * t));
    };
    inv.eval_tracked = [eval = inv.eval](double x, double v, double t,
                                         WindingState&) { return eval(x, v, t); };
    inv.kind = InvariantKind::UndampedResonant;
    inv.normalization = "additive constant A^2/(32 m omega^2) dropped";
    inv.system_a = -(w * w);
    inv.system_b = 0.0;
    inv.has_system = true;
    return inv;
}

InvariantEvaluator k_damped_forced(const OscillatorParams& p, AnglePolicy policy,
                                   CriticalBranchSign sign) {
    p.validate();
    if (p.lambda <= 0.0)
        throw std::invalid_argument("k_damped_forced: lambda must be > 0");
    const DampedCore core = make_core(p, sign);
    const ParticularSolution ps = particular_solution_sinusoidal(p);
    InvariantEvaluator inv;
    inv.eval = [core, a = ps.alpha, b = ps.beta](double x, double v, double t) {
        return core.k_principal(x - a(t), v - b(t));
    };
    inv.eval_tracked = [core, a = ps.alpha, b = ps.beta](
                           double x, double v, double t, WindingState& ws) {
        return core.k_tracked(x - a(t), v - b(t), ws);
    };
    inv.kind = InvariantKind::DampedExact;
    inv.angle_policy = policy;
    inv.system_a = -core.w2;
    inv.system_b = -(p.lambda / p.m);
    inv.has_system = true;
    inv.singular_locus = ps.alpha;
    return inv;
}

InvariantEvaluator k_weak_dissipation(const OscillatorParams& p,
                                      AnglePolicy policy) {
    p.validate();
    const double half = p.lambda / (2.0 * p.m);
    if (half >= p.omega)
        throw std::invalid_argument(
            "k_weak_dissipation: requires lambda/2m < omega (underdamped)");
    const ParticularSolution ps = particular_solution_sinusoidal(p);
    const double m = p.m, w = p.omega, lam = p.lambda;
    auto value = [m, w, lam](double s1, double s2, double angle) {
        const double quad = s2 * s2 + w * w * s1 * s1;
        return 0.5 * m * quad + 0.5 * lam * s1 * s2 -
               lam / (2.0 * w) * quad * angle;
    };
    InvariantEvaluator inv;
    inv.eval = [value, w, a = ps.alpha, b = ps.beta](double x, double v, double t) {
        const double s1 = x - a(t);
        const double s2 = v - b(t);
        if (s1 == 0.0)
            throw SingularEvaluation(
                "k_weak_dissipation: x on the singular locus under PrincipalBranch");
        return value(s1, s2, std::atan(s2 / (w * s1)));
    };
    inv.eval_tracked = [value, w, a = ps.alpha, b = ps.beta](
                           double x, double v, double t, WindingState& ws) {
        const double s1 = x - a(t);
        const double s2 = v - b(t);
        if (s1 == 0.0 && s2 == 0.0)
            throw SingularEvaluation("k_weak_dissipation: singular point");
        return value(s1, s2, unwrap(std::atan2(s2, w * s1), ws));
    };
    inv.kind = InvariantKind::WeakDissipation;
    inv.angle_policy = policy;
    inv.system_a = -(w * w);
    inv.system_b = -(lam / m);
    inv.has_system = true;
    inv.singular_locus = ps.alpha;
    return inv;
}

InvariantEvaluator shift_invariant(const InvariantEvaluator& k0,
                                   const ParticularSolution& ps) {
    InvariantEvaluator inv;
    inv.eval = [e = k0.eval, a = ps.alpha, b = ps.beta](double x, double v, double t) {
        return e(x - a(t), v - b(t), t);
    };
    inv.eval_tracked = [e = k0.eval_tracked, a = ps.alpha, b = ps.beta](
                           double x, double v, double t, WindingState& ws) {
        return e(x - a(t), v - b(t), t, ws);
    };
    inv.kind = InvariantKind::Composed;
    inv.angle_policy = k0.angle_policy;
    inv.normalization = k0.normalization;
    inv.system_a = k0.system_a;
    inv.system_b = k0.system_b;
    inv.has_system = k0.has_system;
    if (k0.singular_locus)
        inv.singular_locus = [l = k0.singular_locus, a = ps.alpha](double t) {
            return l(t) + a(t);
        };
    return inv;
}

const char* to_string(InvariantKind k) {
    switch (k) {
        case InvariantKind::UndampedNonResonant: return "undamped-nonresonant";
        case InvariantKind::UndampedResonant: return "undamped-resonant";
        case InvariantKind::DampedExact: return "damped-exact";
        case InvariantKind::WeakDissipation: return "weak-dissipation";
        case InvariantKind::Composed: return "composed";
        case InvariantKind::AutonomousOnly: return "autonomous";
    }
    return "?";
}

const char* to_string(AnglePolicy p) {
    return p == AnglePolicy::PrincipalBranch ? "principal" : "unwrapped";
}

}  // namespace comotion

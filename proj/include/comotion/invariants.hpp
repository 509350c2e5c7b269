#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "comotion/particular.hpp"
#include "comotion/system.hpp"

namespace comotion {

enum class InvariantKind {
    UndampedNonResonant,
    UndampedResonant,
    DampedExact,
    WeakDissipation,
    Composed,
    AutonomousOnly,
};

/// How multivalued arctangent/log terms are evaluated.
/// PrincipalBranch is stateless and jumps where the phase point crosses
/// x = alpha(t); Unwrapped threads a continuous angle along a trajectory.
enum class AnglePolicy { PrincipalBranch, Unwrapped };

/// Sign convention for the critically damped branch of G.
/// Adjudicated = -1/(lambda/2m + xi), the value that makes K constant along
/// the flow and the limit of the overdamped branch. AsPrinted = +1/(...).
enum class CriticalBranchSign { Adjudicated, AsPrinted };

/// Per-trajectory continuity state for the Unwrapped policy.
struct WindingState {
    bool primed = false;
    double angle = 0.0;  // last continuous angle
};

class SingularEvaluation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A candidate constant of motion K(x, v, t) with evaluation metadata.
struct InvariantEvaluator {
    /// Stateless evaluation (principal branches).
    std::function<double(double x, double v, double t)> eval;
    /// Evaluation with winding (branch) tracking; identical to eval for
    /// single-valued invariants.
    std::function<double(double x, double v, double t, WindingState&)> eval_tracked;

    InvariantKind kind = InvariantKind::AutonomousOnly;
    AnglePolicy angle_policy = AnglePolicy::PrincipalBranch;
    /// Records additive constants dropped relative to the full shifted form.
    std::string normalization;

    /// System coefficients this invariant belongs to, for trajectory matching.
    double system_a = 0.0;
    double system_b = 0.0;
    bool has_system = false;

    /// Singular locus x = locus(t), when one exists (damped/weak forms).
    std::function<double(double)> singular_locus;

    double operator()(double x, double v, double t) const { return eval(x, v, t); }
};

/// G(xi) with G'(xi) = 1/(xi^2 + (lambda/m) xi + omega^2), by damping regime:
/// overdamped   (1/2mu) log[(lam/2m + xi - mu)/(lam/2m + xi + mu)], mu^2 = (lam/2m)^2 - w^2
/// critical     -1/(lam/2m + xi)   [Adjudicated; AsPrinted flips the sign]
/// underdamped  (1/nu) arctan[(lam/2m + xi)/nu],  nu^2 = w^2 - (lam/2m)^2
/// Principal values throughout; throws SingularEvaluation at poles and
/// non-positive log arguments.
double g_function(double xi, const OscillatorParams& p,
                  double eps_crit = kDefaultEpsCrit,
                  CriticalBranchSign sign = CriticalBranchSign::Adjudicated);

/// Energy (m/2)(v^2 + w^2 x^2): the autonomous invariant for lambda = 0.
InvariantEvaluator energy_invariant(const OscillatorParams& p);

/// (m/2)[v^2 + (lam/m) xv + w^2 x^2] exp(-(lam/m) G(v/x)); autonomous damped.
InvariantEvaluator k_autonomous_damped(
    const OscillatorParams& p, AnglePolicy policy = AnglePolicy::PrincipalBranch,
    CriticalBranchSign sign = CriticalBranchSign::Adjudicated);

/// (1/2)mv^2 + (1/2)m w^2 x^2 + [A/(Om^2-w^2)](Om v cos + w^2 x sin)
///   - [A^2/(2m(Om^2-w^2))] sin^2(Om t); lambda = 0, off resonance.
InvariantEvaluator k_undamped_forced_nonresonant(const OscillatorParams& p,
                                                 double eps_res = kDefaultEpsRes);

/// Resonant (Omega = omega) invariant:
/// (1/2)mv^2 + (1/2)m w^2 x^2
///   + (A/4w)[(v + 2x w^2 t) cos(wt) - (xw + 2vwt) sin(wt)]
///   + (A^2 t/8mw)[wt - sin(2wt)].
/// The cos-term coefficient 2x w^2 t is the one the shift construction gives
/// and the one that is actually constant along the flow.
InvariantEvaluator k_undamped_forced_resonant(const OscillatorParams& p);

/// Shifted damped invariant, lambda > 0: the autonomous damped form evaluated
/// at (x - alpha(t), v - beta(t)) with the closed-form damped shift.
InvariantEvaluator k_damped_forced(
    const OscillatorParams& p, AnglePolicy policy = AnglePolicy::PrincipalBranch,
    CriticalBranchSign sign = CriticalBranchSign::Adjudicated);

/// First order in lambda/2mw:
/// (m/2)[s2^2 + w^2 s1^2] + (lam/2) s1 s2
///   - (lam/2w)[s2^2 + w^2 s1^2] arctan(s2/(w s1)),  s1 = x-alpha, s2 = v-beta.
InvariantEvaluator k_weak_dissipation(
    const OscillatorParams& p, AnglePolicy policy = AnglePolicy::PrincipalBranch);

/// The shift construction: (x, v, t) -> k0(x - alpha(t), v - beta(t)).
/// k0 must be an invariant of the autonomous system the particular solution
/// belongs to; the result is then an invariant of the forced system.
InvariantEvaluator shift_invariant(const InvariantEvaluator& k0,
                                   const ParticularSolution& ps);

const char* to_string(InvariantKind k);
const char* to_string(AnglePolicy p);

}  // namespace comotion

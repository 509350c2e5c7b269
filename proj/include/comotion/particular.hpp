#pragma once

#include <functional>

#include "comotion/system.hpp"

namespace comotion {

enum class SolutionProvenance {
    ClosedFormNonResonant,
    ClosedFormResonant,
    ClosedFormDamped,
    Numeric,
};

/// A particular solution alpha(t) of  alpha'' = a alpha + b alpha' + f(t),
/// together with its first and second derivatives.
struct ParticularSolution {
    std::function<double(double)> alpha;       // alpha(t)
    std::function<double(double)> beta;        // alpha'(t)
    std::function<double(double)> alpha_ddot;  // alpha''(t)
    SolutionProvenance provenance = SolutionProvenance::Numeric;
};

/// Which closed form the caller wants. Auto selects by (lambda, resonance band).
enum class SinusoidalForm { Auto, NonResonant, Resonant };

/// Relative half-width of the resonance band |Omega - omega| <= eps_res*omega.
inline constexpr double kDefaultEpsRes = 1e-9;

bool in_resonance_band(const OscillatorParams& p, double eps_res = kDefaultEpsRes);

/// Closed-form particular solution of the sinusoidally forced oscillator.
/// lambda = 0, off resonance:   alpha = -A sin(Omega t) / (m (Omega^2 - omega^2))
/// lambda = 0, on resonance:    alpha = (A/4m w^2) sin(wt) - (A/2m w) t cos(wt)
/// lambda > 0:                  alpha = (A/m)/D [(w^2-Om^2) sin - (lam Om/m) cos],
///                              D = (lam Om/m)^2 + (w^2-Om^2)^2
/// beta and alpha_ddot are the exact analytic derivatives.
/// Requesting NonResonant inside the band throws std::domain_error.
ParticularSolution particular_solution_sinusoidal(
    const OscillatorParams& p, double eps_res = kDefaultEpsRes,
    SinusoidalForm form = SinusoidalForm::Auto);

/// The velocity shift beta(t) = alpha'(t), same analytic expression the
/// sinusoidal particular solution uses.
double beta_closed_form(double t, const OscillatorParams& p,
                        double eps_res = kDefaultEpsRes);

const char* to_string(SolutionProvenance p);

}  // namespace comotion

#include "comotion/particular.hpp"

#include <cmath>

namespace comotion {

namespace {

ParticularSolution zero_solution(SolutionProvenance prov) {
    ParticularSolution ps;
    ps.alpha = [](double) { return 0.0; };
    ps.beta = [](double) { return 0.0; };
    ps.alpha_ddot = [](double) { return 0.0; };
    ps.provenance = prov;
    return ps;
}

// Damped beta, shared with beta_closed_form:
// beta(t) = (A Om/m)/D [(w^2-Om^2) cos(Om t) + (lam Om/m) sin(Om t)].
double damped_beta(double t, const OscillatorParams& p) {
    const double w2 = p.omega * p.omega;
    const double om = p.cap_omega;
    const double dw = w2 - om * om;
    const double lo = p.lambda * om / p.m;
    const double d = lo * lo + dw * dw;
    return (p.amp * om / p.m) / d * (dw * std::cos(om * t) + lo * std::sin(om * t));
}

}  // namespace

bool in_resonance_band(const OscillatorParams& p, double eps_res) {
    return std::abs(p.cap_omega - p.omega) <= eps_res * p.omega;
}

ParticularSolution particular_solution_sinusoidal(const OscillatorParams& p,
                                                  double eps_res,
                                                  SinusoidalForm form) {
    p.validate();
    if (eps_res < 0.0)
        throw std::invalid_argument("particular_solution_sinusoidal: eps_res must be >= 0");

    const bool resonant_band = in_resonance_band(p, eps_res);

    if (p.lambda > 0.0) {
        // No resonance singularity: D > 0 for lambda > 0, Omega > 0.
        if (p.amp == 0.0) return zero_solution(SolutionProvenance::ClosedFormDamped);
        const OscillatorParams q = p;
        const double w2 = p.omega * p.omega;
        const double om = p.cap_omega;
        const double dw = w2 - om * om;
        const double lo = p.lambda * om / p.m;
        const double d = lo * lo + dw * dw;
        const double c = p.amp / p.m / d;
        ParticularSolution ps;
        ps.alpha = [c, dw, lo, om](double t) {
            return c * (dw * std::sin(om * t) - lo * std::cos(om * t));
        };
        ps.beta = [q](double t) { return damped_beta(t, q); };
        ps.alpha_ddot = [c, dw, lo, om](double t) {
            return -c * om * om * (dw * std::sin(om * t) - lo * std::cos(om * t));
        };
        ps.provenance = SolutionProvenance::ClosedFormDamped;
        return ps;
    }

    const bool resonant = (form == SinusoidalForm::Resonant) ||
                          (form == SinusoidalForm::Auto && resonant_band);
    if (form == SinusoidalForm::NonResonant && resonant_band)
        throw std::domain_error(
            "particular_solution_sinusoidal: non-resonant form requested with "
            "Omega inside the resonance band (near-singular denominator)");

    if (p.amp == 0.0)
        return zero_solution(resonant ? SolutionProvenance::ClosedFormResonant
                                      : SolutionProvenance::ClosedFormNonResonant);

    if (resonant) {
        // alpha = (A/4m w^2) sin(wt) - (A/2m w) t cos(wt), evaluated with the
        // exact natural frequency.
        const double w = p.omega;
        const double c1 = p.amp / (4.0 * p.m * w * w);
        const double c2 = p.amp / (2.0 * p.m * w);
        ParticularSolution ps;
        ps.alpha = [c1, c2, w](double t) {
            return c1 * std::sin(w * t) - c2 * t * std::cos(w * t);
        };
        // alpha' = -(A/4m w) cos(wt) + (A/2m) t sin(wt)
        ps.beta = [c1, c2, w](double t) {
            return (c1 * w - c2) * std::cos(w * t) + c2 * w * t * std::sin(w * t);
        };
        // alpha'' = (3A/4m) sin(wt) + (A/2m) w t cos(wt)
        ps.alpha_ddot = [c1, c2, w](double t) {
            return (c1 * w + c2) * w * std::sin(w * t) + c2 * w * w * t * std::cos(w * t);
        };
        ps.provenance = SolutionProvenance::ClosedFormResonant;
        return ps;
    }

    // alpha = -A sin(Om t) / (m (Om^2 - w^2))
    const double om = p.cap_omega;
    const double c = -p.amp / (p.m * (om * om - p.omega * p.omega));
    ParticularSolution ps;
    ps.alpha = [c, om](double t) { return c * std::sin(om * t); };
    ps.beta = [c, om](double t) { return c * om * std::cos(om * t); };
    ps.alpha_ddot = [c, om](double t) { return -c * om * om * std::sin(om * t); };
    ps.provenance = SolutionProvenance::ClosedFormNonResonant;
    return ps;
}

double beta_closed_form(double t, const OscillatorParams& p, double eps_res) {
    p.validate();
    if (p.amp == 0.0) return 0.0;
    if (p.lambda > 0.0) return damped_beta(t, p);
    return particular_solution_sinusoidal(p, eps_res).beta(t);
}

const char* to_string(SolutionProvenance p) {
    switch (p) {
        case SolutionProvenance::ClosedFormNonResonant: return "closed-form-nonresonant";
        case SolutionProvenance::ClosedFormResonant: return "closed-form-resonant";
        case SolutionProvenance::ClosedFormDamped: return "closed-form-damped";
        case SolutionProvenance::Numeric: return "numeric";
    }
    return "?";
}

}  // namespace comotion

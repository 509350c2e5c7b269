#include "comotion/system.hpp"

#include <algorithm>

namespace comotion {

void OscillatorParams::validate() const {
    if (!std::isfinite(m) || m <= 0.0)
        throw std::invalid_argument("OscillatorParams.m must be finite and > 0");
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("OscillatorParams.omega must be finite and > 0");
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw std::invalid_argument("OscillatorParams.lambda must be finite and >= 0");
    if (!std::isfinite(amp))
        throw std::invalid_argument("OscillatorParams.amp must be finite");
    if (!std::isfinite(cap_omega) || cap_omega < 0.0)
        throw std::invalid_argument("OscillatorParams.cap_omega must be finite and >= 0");
}

ForcedLinearSystem to_system(const OscillatorParams& p) {
    p.validate();
    ForcedLinearSystem s;
    s.a = -(p.omega * p.omega);
    s.b = -(p.lambda / p.m);
    const double scale = p.amp / p.m;
    const double freq = p.cap_omega;
    s.forcing = [scale, freq](double t) { return scale * std::sin(freq * t); };
    return s;
}

DampingRegime classify_damping(const OscillatorParams& p, double eps_crit) {
    p.validate();
    if (eps_crit < 0.0)
        throw std::invalid_argument("classify_damping: eps_crit must be >= 0");
    const double w2 = p.omega * p.omega;
    const double half = p.lambda / (2.0 * p.m);
    const double disc = w2 - half * half;
    const double scale = std::max(w2, half * half);
    DampingKind kind;
    if (std::abs(disc) <= eps_crit * scale)
        kind = DampingKind::Critical;
    else if (disc < 0.0)
        kind = DampingKind::Overdamped;
    else
        kind = DampingKind::Underdamped;
    return {kind, disc};
}

const char* to_string(DampingKind k) {
    switch (k) {
        case DampingKind::Underdamped: return "underdamped";
        case DampingKind::Critical: return "critical";
        case DampingKind::Overdamped: return "overdamped";
    }
    return "?";
}

}  // namespace comotion

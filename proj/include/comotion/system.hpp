#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace comotion {

/// f(t): external acceleration as a function of time.
using ForcingFn = std::function<double(double)>;

/// One-dimensional linear system  dx/dt = v,  dv/dt = a*x + b*v + f(t).
struct ForcedLinearSystem {
    double a = 0.0;     // coefficient of x, 1/time^2
    double b = 0.0;     // coefficient of v, 1/time
    ForcingFn forcing;  // f(t); empty means f == 0

    double force(double t) const { return forcing ? forcing(t) : 0.0; }
    double acceleration(double x, double v, double t) const {
        return a * x + b * v + force(t);
    }
};

/// Driven damped oscillator:  m x'' = -m w^2 x - lambda x' + A sin(Omega t).
struct OscillatorParams {
    double m = 1.0;          // mass, > 0
    double omega = 1.0;      // natural frequency, > 0
    double lambda = 0.0;     // dissipation parameter, >= 0
    double amp = 0.0;        // forcing amplitude A
    double cap_omega = 0.0;  // forcing frequency Omega, >= 0

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Maps oscillator parameters onto the linear system
/// a = -omega^2, b = -lambda/m, f(t) = (A/m) sin(Omega t).
ForcedLinearSystem to_system(const OscillatorParams& p);

enum class DampingKind { Underdamped, Critical, Overdamped };

struct DampingRegime {
    DampingKind kind;
    double discriminant;  // omega^2 - (lambda/2m)^2
};

/// Relative tolerance for declaring the discriminant zero.
inline constexpr double kDefaultEpsCrit = 1e-9;

DampingRegime classify_damping(const OscillatorParams& p,
                               double eps_crit = kDefaultEpsCrit);

const char* to_string(DampingKind k);

}  // namespace comotion

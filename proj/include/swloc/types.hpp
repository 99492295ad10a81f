#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swloc {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;

// All rates and Rabi amplitudes are expressed in units of gamma1 (the decay
// rate of |a1>), which sets the frequency scale. Angles are radians.

// The three drive fields. Field 1 is the cavity standing wave, so its local
// Rabi frequency is omega1 * sin(kappa x); fields 2 and 3 are travelling
// beams at angles theta2, theta3 to the cavity axis. phi is the collective
// relative phase of the drives.
struct DriveConfig {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
    double phi = 0.0;
    double theta2 = 3.0 * std::numbers::pi / 4.0;
    double theta3 = std::numbers::pi / 4.0;
};

struct DecayConfig {
    double gamma1 = 1.0;   // |a1> radiative decay, the unit scale
    double gamma2 = 0.0;   // |a2> radiative decay; 0 = metastable
    double gamma_bc = 0.0; // ground-coherence dephasing
};

// One evaluation point: probe detuning and dimensionless position kappa*x
// along the standing wave (conventionally reported in [-pi, pi)).
struct ProbePoint {
    double delta = 0.0;
    double kappa_x = 0.0;
};

// Collective medium factor 2 N |p_a1c|^2 / (eps0 hbar); chi is reported in
// units of this scale.
struct MediumPrefactor {
    double scale = 1.0;
};

struct Susceptibility {
    double chi_re = 0.0; // dispersion
    double chi_im = 0.0; // absorption
    Complex value() const { return {chi_re, chi_im}; }
};

// The two roots R1,2 of the peak condition sin(kappa x) = R. A negative
// discriminant yields a conjugate pair (no real peak positions).
struct RootPair {
    Complex r1;
    Complex r2;
};

struct DegenerateDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedPhase : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownPreset : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate(const DriveConfig& drive);
void validate(const DecayConfig& decay);
void validate(const ProbePoint& point);
void validate(const MediumPrefactor& prefactor);

} // namespace swloc

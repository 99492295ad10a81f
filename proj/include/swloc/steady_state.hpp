#pragma once

#include <array>

#include "swloc/types.hpp"

namespace swloc {

// The linearized equations of motion for the probe-induced coherences in
// matrix form, dR/dt = -M R + C, under unit probe Rabi frequency.
struct LinearSystem {
    std::array<std::array<Complex, 3>, 3> m{};
    std::array<Complex, 3> c{};
};

// Rotated-frame coherences (rho_a1c, rho_a2c, rho_bc) under unit probe Rabi.
struct CoherenceVector {
    Complex rho_a1c;
    Complex rho_a2c;
    Complex rho_bc;
};

// Populates M and C for arbitrary beam angles. The spatial phases of the
// travelling beams are exp(i k x cos(theta)); k_over_kappa relates their
// wavenumber to the standing wave's (default: equal).
LinearSystem build_system(const DriveConfig& drive, const DecayConfig& decay,
                          const ProbePoint& point, double k_over_kappa = 1.0);

// Direct 3x3 solve R = M^-1 C (elimination with partial pivoting plus one
// refinement step). Throws SingularSystem when |det M| falls below 1e-12
// relative to the product of row norms.
CoherenceVector solve_coherences(const LinearSystem& system);

// chi = scale * rho_a1c from the direct steady-state solve. Valid at any
// beam angles and gamma_bc; the independent check on the closed form.
Susceptibility chi_numeric(const DriveConfig& drive, const DecayConfig& decay,
                           const ProbePoint& point,
                           const MediumPrefactor& prefactor,
                           double k_over_kappa = 1.0);

// Closed form when it is exact (cos theta2 + cos theta3 = 0, gamma_bc = 0),
// direct solve otherwise.
Susceptibility evaluate_chi(const DriveConfig& drive, const DecayConfig& decay,
                            const ProbePoint& point,
                            const MediumPrefactor& prefactor);

} // namespace swloc

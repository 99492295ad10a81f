#pragma once

#include "swloc/types.hpp"

namespace swloc {

// Position-dependent Rabi frequency of the standing-wave field,
// omega1 * sin(kappa x).
double effective_rabi(const DriveConfig& drive, double kappa_x);

// Denominator Y = A + iB of the closed-form susceptibility, with
//   A = -8 D^3 + 2 D (O1^2 sin^2 kx + O2^2 + O3^2) + 2 g1 g2 D
//       + 2 O1 O2 O3 cos(phi) sin(kx)
//   B = 4 D^2 (g1 + g2) - g1 O2^2 - g2 O1^2 sin^2 kx.
Complex y_denominator(const DriveConfig& drive, const DecayConfig& decay,
                      const ProbePoint& point);

// Closed-form weak-probe susceptibility
//   chi = scale * (O2^2 - 4 D^2 + 2 i g2 D) / Y,
// exact when cos(theta2) + cos(theta3) = 0 and gamma_bc = 0.
// Throws DegenerateDenominator at the measure-zero coincidences where Y = 0.
Susceptibility chi_closed_form(const DriveConfig& drive,
                               const DecayConfig& decay,
                               const ProbePoint& point,
                               const MediumPrefactor& prefactor);

// Absorption chi'' in the metastable limit gamma2 = 0:
//   scale * g1 (O2^2-4D^2)^2 /
//     { g1^2 (O2^2-4D^2)^2 + [8D^3 - 2D(O1^2 sin^2 kx + O2^2 + O3^2)
//                             - 2 O1 O2 O3 cos(phi) sin(kx)]^2 }.
// Equals Im(chi_closed_form) with gamma2 = 0 at every point.
double chi_metastable(const DriveConfig& drive, double gamma1,
                      const ProbePoint& point,
                      const MediumPrefactor& prefactor);

// Roots R1,2 of the factorized absorption denominator:
//   R12 = { -O2 O3 cos(phi) +- sqrt(O2^2 O3^2 cos^2 phi
//           - 4 D^2 [(O2^2 + O3^2) - 4 D^2]) } / (2 D O1).
// Principal square-root branch; a negative discriminant gives a conjugate
// pair. Throws DegenerateParameters when delta = 0 or omega1 = 0.
RootPair roots_R(const DriveConfig& drive, double delta);

} // namespace swloc

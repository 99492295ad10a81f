#include "swloc/susceptibility.hpp"

#include <cmath>

namespace swloc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

void validate(const DriveConfig& d) {
    require(d.omega1 >= 0 && std::isfinite(d.omega1), "omega1 must be >= 0 and finite");
    require(d.omega2 >= 0 && std::isfinite(d.omega2), "omega2 must be >= 0 and finite");
    require(d.omega3 >= 0 && std::isfinite(d.omega3), "omega3 must be >= 0 and finite");
    require(std::isfinite(d.phi), "phi must be finite");
    require(std::isfinite(d.theta2) && std::isfinite(d.theta3), "beam angles must be finite");
}

void validate(const DecayConfig& d) {
    require(d.gamma1 > 0 && std::isfinite(d.gamma1), "gamma1 must be > 0");
    require(d.gamma2 >= 0 && std::isfinite(d.gamma2), "gamma2 must be >= 0");
    require(d.gamma_bc >= 0 && std::isfinite(d.gamma_bc), "gamma_bc must be >= 0");
}

void validate(const ProbePoint& p) {
    require(std::isfinite(p.delta), "delta must be finite");
    require(std::isfinite(p.kappa_x), "kappa_x must be finite");
}

void validate(const MediumPrefactor& m) {
    require(m.scale > 0 && std::isfinite(m.scale), "scale must be > 0");
}

double effective_rabi(const DriveConfig& drive, double kappa_x) {
    return drive.omega1 * std::sin(kappa_x);
}

Complex y_denominator(const DriveConfig& drive, const DecayConfig& decay,
                      const ProbePoint& point) {
    const double d = point.delta;
    const double s = std::sin(point.kappa_x);
    const double o1s2 = drive.omega1 * drive.omega1 * s * s;
    const double o22 = drive.omega2 * drive.omega2;
    const double o32 = drive.omega3 * drive.omega3;

    const double a = -8.0 * d * d * d
                     + 2.0 * d * (o1s2 + o22 + o32)
                     + 2.0 * decay.gamma1 * decay.gamma2 * d
                     + 2.0 * drive.omega1 * drive.omega2 * drive.omega3
                           * std::cos(drive.phi) * s;
    const double b = 4.0 * d * d * (decay.gamma1 + decay.gamma2)
                     - decay.gamma1 * o22
                     - decay.gamma2 * o1s2;
    return {a, b};
}

Susceptibility chi_closed_form(const DriveConfig& drive,
                               const DecayConfig& decay,
                               const ProbePoint& point,
                               const MediumPrefactor& prefactor) {
    const Complex y = y_denominator(drive, decay, point);
    const double a = y.real();
    const double b = y.imag();
    const double z = a * a + b * b;
    if (!(z > 0.0))
        throw DegenerateDenominator("chi_closed_form: Y = 0 at this parameter point");

    const double d = point.delta;
    const double num_re = drive.omega2 * drive.omega2 - 4.0 * d * d;
    const double num_im = 2.0 * decay.gamma2 * d;

    Susceptibility chi;
    chi.chi_re = prefactor.scale * (num_re * a + num_im * b) / z;
    chi.chi_im = prefactor.scale * (num_im * a - num_re * b) / z;
    return chi;
}

double chi_metastable(const DriveConfig& drive, double gamma1,
                      const ProbePoint& point,
                      const MediumPrefactor& prefactor) {
    const double d = point.delta;
    const double s = std::sin(point.kappa_x);
    const double n = drive.omega2 * drive.omega2 - 4.0 * d * d;
    const double bracket = 8.0 * d * d * d
                           - 2.0 * d * (drive.omega1 * drive.omega1 * s * s
                                        + drive.omega2 * drive.omega2
                                        + drive.omega3 * drive.omega3)
                           - 2.0 * drive.omega1 * drive.omega2 * drive.omega3
                                 * std::cos(drive.phi) * s;
    const double den = gamma1 * gamma1 * n * n + bracket * bracket;
    if (!(den > 0.0))
        throw DegenerateDenominator("chi_metastable: numerator and bracket vanish together");
    return prefactor.scale * gamma1 * n * n / den;
}

RootPair roots_R(const DriveConfig& drive, double delta) {
    if (delta == 0.0 || drive.omega1 == 0.0)
        throw DegenerateParameters("roots_R requires delta != 0 and omega1 != 0");

    const double p = drive.omega2 * drive.omega3 * std::cos(drive.phi);
    const double o2sq = drive.omega2 * drive.omega2;
    const double o3sq = drive.omega3 * drive.omega3;
    const double disc = p * p - 4.0 * delta * delta * (o2sq + o3sq - 4.0 * delta * delta);
    const double denom = 2.0 * delta * drive.omega1;

    RootPair roots;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        roots.r1 = Complex{(-p + root) / denom, 0.0};
        roots.r2 = Complex{(-p - root) / denom, 0.0};
    } else {
        const double root = std::sqrt(-disc);
        roots.r1 = Complex{-p / denom, root / denom};
        roots.r2 = std::conj(roots.r1);
    }
    return roots;
}

} // namespace swloc

#include "swloc/steady_state.hpp"

#include <cmath>
#include <utility>

#include "swloc/susceptibility.hpp"

namespace swloc {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex det3(const std::array<std::array<Complex, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Gaussian elimination with partial pivoting on a copy of the system.
std::array<Complex, 3> eliminate(std::array<std::array<Complex, 3>, 3> m,
                                 std::array<Complex, 3> c) {
    for (int k = 0; k < 3; ++k) {
        int pivot = k;
        double best = std::abs(m[k][k]);
        for (int i = k + 1; i < 3; ++i) {
            const double v = std::abs(m[i][k]);
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (pivot != k) {
            std::swap(m[k], m[pivot]);
            std::swap(c[k], c[pivot]);
        }
        if (best == 0.0)
            throw SingularSystem("solve_coherences: zero pivot");
        for (int i = k + 1; i < 3; ++i) {
            const Complex f = m[i][k] / m[k][k];
            for (int j = k; j < 3; ++j) m[i][j] -= f * m[k][j];
            c[i] -= f * c[k];
        }
    }
    std::array<Complex, 3> x{};
    for (int i = 2; i >= 0; --i) {
        Complex sum = c[i];
        for (int j = i + 1; j < 3; ++j) sum -= m[i][j] * x[j];
        x[i] = sum / m[i][i];
    }
    return x;
}

} // namespace

LinearSystem build_system(const DriveConfig& drive, const DecayConfig& decay,
                          const ProbePoint& point, double k_over_kappa) {
    const double s = std::sin(point.kappa_x);
    const double kx = k_over_kappa * point.kappa_x;
    const Complex phase2 = std::exp(kI * (kx * std::cos(drive.theta2)));
    const Complex phase3 = std::exp(kI * (kx * std::cos(drive.theta3)));
    const Complex e_mphi = std::exp(-kI * drive.phi);

    LinearSystem sys;
    sys.m[0][0] = kI * point.delta + 0.5 * decay.gamma1;
    sys.m[0][1] = -0.5 * kI * drive.omega3 * e_mphi * phase3;
    sys.m[0][2] = -0.5 * kI * drive.omega1 * s;

    sys.m[1][0] = -0.5 * kI * drive.omega3 * std::conj(e_mphi * phase3);
    sys.m[1][1] = kI * point.delta + 0.5 * decay.gamma2;
    sys.m[1][2] = -0.5 * kI * drive.omega2 * phase2;

    sys.m[2][0] = -0.5 * kI * drive.omega1 * s;
    sys.m[2][1] = -0.5 * kI * drive.omega2 * std::conj(phase2);
    sys.m[2][2] = kI * point.delta + decay.gamma_bc;

    // Source from the ground-state initial condition rho_cc = 1, unit probe.
    sys.c = {0.5 * kI, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    return sys;
}

CoherenceVector solve_coherences(const LinearSystem& system) {
    double row_norm_product = 1.0;
    for (const auto& row : system.m) {
        double norm2 = 0.0;
        for (const Complex& v : row) norm2 += std::norm(v);
        row_norm_product *= std::sqrt(norm2);
    }
    const double det = std::abs(det3(system.m));
    if (!(det > 1e-12 * row_norm_product))
        throw SingularSystem("solve_coherences: matrix is singular at this parameter point");

    std::array<Complex, 3> x = eliminate(system.m, system.c);

    // One step of iterative refinement keeps the residual near rounding.
    std::array<Complex, 3> r{};
    for (int i = 0; i < 3; ++i) {
        Complex acc = system.c[i];
        for (int j = 0; j < 3; ++j) acc -= system.m[i][j] * x[j];
        r[i] = acc;
    }
    const std::array<Complex, 3> dx = eliminate(system.m, r);
    for (int i = 0; i < 3; ++i) x[i] += dx[i];

    return {x[0], x[1], x[2]};
}

Susceptibility chi_numeric(const DriveConfig& drive, const DecayConfig& decay,
                           const ProbePoint& point,
                           const MediumPrefactor& prefactor,
                           double k_over_kappa) {
    const LinearSystem sys = build_system(drive, decay, point, k_over_kappa);
    const CoherenceVector r = solve_coherences(sys);
    return {prefactor.scale * r.rho_a1c.real(), prefactor.scale * r.rho_a1c.imag()};
}

Susceptibility evaluate_chi(const DriveConfig& drive, const DecayConfig& decay,
                            const ProbePoint& point,
                            const MediumPrefactor& prefactor) {
    const double angle_sum = std::cos(drive.theta2) + std::cos(drive.theta3);
    if (std::abs(angle_sum) <= 1e-12 && decay.gamma_bc == 0.0)
        return chi_closed_form(drive, decay, point, prefactor);
    return chi_numeric(drive, decay, point, prefactor);
}

} // namespace swloc

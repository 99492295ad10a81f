#include "swloc/time_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swloc/susceptibility.hpp"

namespace swloc {

namespace {

using Vec3 = std::array<Complex, 3>;

Vec3 derivative(const LinearSystem& sys, const Vec3& r) {
    Vec3 d;
    for (int i = 0; i < 3; ++i) {
        Complex acc = sys.c[i];
        for (int j = 0; j < 3; ++j) acc -= sys.m[i][j] * r[j];
        d[i] = acc;
    }
    return d;
}

double norm(const Vec3& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

// Slowest direct damping rate visible on the diagonal of M, nudged away
// from zero so the t_max formula stays finite before the cap.
double min_damping(double gamma1, double gamma2, double gamma_bc) {
    constexpr double tiny = 1e-12;
    return std::min({0.5 * gamma1, 0.5 * gamma2 + tiny, gamma_bc + tiny});
}

} // namespace

EvolutionSettings EvolutionSettings::defaults(const DriveConfig& drive,
                                              const DecayConfig& decay,
                                              const ProbePoint& point) {
    EvolutionSettings s;
    const double fastest = std::max({decay.gamma1, decay.gamma2, drive.omega1,
                                     drive.omega2, drive.omega3,
                                     2.0 * std::abs(point.delta), 1.0});
    s.dt = 0.2 / fastest;
    s.t_max = std::min(200.0 / min_damping(decay.gamma1, decay.gamma2, decay.gamma_bc), 1e4);
    s.tol = 1e-9;
    return s;
}

EvolutionResult evolve(const LinearSystem& system,
                       const EvolutionSettings& settings,
                       const CoherenceVector& start) {
    if (!(settings.dt > 0.0) || !(settings.t_max > 0.0) || !(settings.tol > 0.0))
        throw std::invalid_argument("evolve: dt, t_max, tol must be positive");

    const double norm_c = norm(system.c);
    double damping = 0.0;
    for (const auto diag : {system.m[0][0], system.m[1][1], system.m[2][2]})
        if (diag.real() > 0.0)
            damping = (damping == 0.0) ? diag.real() : std::min(damping, diag.real());
    if (damping == 0.0) damping = 1e-3;
    const double blowup = 1e6 * std::max(norm_c, 1e-30) / damping;

    Vec3 r{start.rho_a1c, start.rho_a2c, start.rho_bc};
    const double h = settings.dt;

    EvolutionResult out;
    while (true) {
        const Vec3 k1 = derivative(system, r);
        out.residual = norm(k1) / norm_c;
        if (out.residual <= settings.tol) {
            out.converged = true;
            break;
        }
        if (out.t_end >= settings.t_max) break;

        Vec3 r2, r3, r4;
        for (int i = 0; i < 3; ++i) r2[i] = r[i] + 0.5 * h * k1[i];
        const Vec3 k2 = derivative(system, r2);
        for (int i = 0; i < 3; ++i) r3[i] = r[i] + 0.5 * h * k2[i];
        const Vec3 k3 = derivative(system, r3);
        for (int i = 0; i < 3; ++i) r4[i] = r[i] + h * k3[i];
        const Vec3 k4 = derivative(system, r4);
        for (int i = 0; i < 3; ++i)
            r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        out.t_end += h;
        ++out.steps;
        if (norm(r) > blowup)
            throw StepUnstable("evolve: state norm diverged; decrease dt");
    }
    out.coherences = {r[0], r[1], r[2]};
    return out;
}

EvolutionResult evolve_to_steady(const LinearSystem& system,
                                 EvolutionSettings settings,
                                 long max_total_steps) {
    EvolutionResult acc;
    CoherenceVector state{};
    long budget = max_total_steps;
    while (true) {
        EvolutionResult leg = evolve(system, settings, state);
        acc.coherences = leg.coherences;
        acc.residual = leg.residual;
        acc.t_end += leg.t_end;
        acc.steps += leg.steps;
        acc.converged = leg.converged;
        if (leg.converged) break;
        budget -= leg.steps;
        if (budget <= 0) break;
        state = leg.coherences;
        settings.t_max = std::min(settings.t_max * 2.0,
                                  budget * settings.dt);
        if (settings.t_max < settings.dt) break;
    }
    return acc;
}

double scaled_deviation(const Susceptibility& a, const Susceptibility& b) {
    const double diff = std::abs(a.value() - b.value());
    return diff / std::max({1.0, std::abs(a.value()), std::abs(b.value())});
}

namespace {
double dev_or_nan(const std::optional<Susceptibility>& a,
                  const std::optional<Susceptibility>& b) {
    if (!a || !b) return std::numeric_limits<double>::quiet_NaN();
    return scaled_deviation(*a, *b);
}
} // namespace

double VerificationReport::dev_closed_numeric() const {
    return dev_or_nan(closed_form, numeric);
}
double VerificationReport::dev_closed_evolved() const {
    return dev_or_nan(closed_form, evolved);
}
double VerificationReport::dev_numeric_evolved() const {
    return dev_or_nan(numeric, evolved);
}

double VerificationReport::max_pairwise_deviation() const {
    double worst = 0.0;
    const std::array<const std::optional<Susceptibility>*, 3> vals{
        &closed_form, &numeric, &evolved};
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (vals[i]->has_value() && vals[j]->has_value())
                worst = std::max(worst, scaled_deviation(**vals[i], **vals[j]));
    return worst;
}

VerificationReport verify_point(const DriveConfig& drive,
                                const DecayConfig& decay,
                                const ProbePoint& point,
                                const MediumPrefactor& prefactor,
                                const std::optional<EvolutionSettings>& settings) {
    VerificationReport report;

    const double angle_sum = std::cos(drive.theta2) + std::cos(drive.theta3);
    if (std::abs(angle_sum) <= 1e-12 && decay.gamma_bc == 0.0) {
        try {
            report.closed_form = chi_closed_form(drive, decay, point, prefactor);
        } catch (const std::exception& e) {
            report.errors.emplace_back(std::string("closed_form: ") + e.what());
        }
    }

    LinearSystem sys;
    bool have_system = false;
    try {
        sys = build_system(drive, decay, point);
        have_system = true;
        const CoherenceVector r = solve_coherences(sys);
        report.numeric = Susceptibility{prefactor.scale * r.rho_a1c.real(),
                                        prefactor.scale * r.rho_a1c.imag()};
    } catch (const std::exception& e) {
        report.errors.emplace_back(std::string("numeric: ") + e.what());
    }

    if (have_system) {
        try {
            const EvolutionSettings es =
                settings ? *settings : EvolutionSettings::defaults(drive, decay, point);
            const EvolutionResult ev = evolve(sys, es);
            report.evolution_converged = ev.converged;
            report.evolution_t_end = ev.t_end;
            report.evolution_residual = ev.residual;
            if (ev.converged) {
                report.evolved =
                    Susceptibility{prefactor.scale * ev.coherences.rho_a1c.real(),
                                   prefactor.scale * ev.coherences.rho_a1c.imag()};
            } else {
                report.errors.emplace_back("evolution: NonConverged at t_max");
            }
        } catch (const std::exception& e) {
            report.errors.emplace_back(std::string("evolution: ") + e.what());
        }
    }

    return report;
}

} // namespace swloc

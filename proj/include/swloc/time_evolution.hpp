#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swloc/steady_state.hpp"
#include "swloc/types.hpp"

namespace swloc {

// Fixed-step integration controls, in units of 1/gamma1.
struct EvolutionSettings {
    double dt = 0.05;
    double t_max = 1e4;
    double tol = 1e-9; // convergence threshold on ||dR/dt|| relative to ||C||

    // dt = 0.2 / max(gamma1, gamma2, omega1, omega2, omega3, 2|delta|, 1);
    // t_max = 200 / (slowest direct damping rate), capped at 1e4 -- with
    // gamma2 = gamma_bc = 0 the cap applies and a slow run reports
    // NonConverged rather than pretending.
    static EvolutionSettings defaults(const DriveConfig& drive,
                                      const DecayConfig& decay,
                                      const ProbePoint& point);
};

struct EvolutionResult {
    CoherenceVector coherences{};
    double t_end = 0.0;
    double residual = 0.0; // ||M R - C|| / ||C|| at the final state
    long steps = 0;
    bool converged = false;
};

// Classical fixed-step RK4 on dR/dt = -M R + C from R(0) = start (ground
// state by default), stopping at the first step with
// ||dR/dt|| <= tol * ||C||. A run that reaches t_max unconverged is
// reported, not hidden. Throws StepUnstable when the state norm blows up
// (dt too large).
EvolutionResult evolve(const LinearSystem& system,
                       const EvolutionSettings& settings,
                       const CoherenceVector& start = {});

// Restarts evolve with doubling time budgets until convergence or until the
// total step budget is spent. Used where slow mixing-mediated damping makes
// the default horizon too short.
EvolutionResult evolve_to_steady(const LinearSystem& system,
                                 EvolutionSettings settings,
                                 long max_total_steps = 400'000'000L);

// Three-way comparison of one parameter point: closed form (when its
// preconditions hold), direct solve, and time evolution.
struct VerificationReport {
    std::optional<Susceptibility> closed_form;
    std::optional<Susceptibility> numeric;
    std::optional<Susceptibility> evolved;
    bool evolution_converged = false;
    double evolution_t_end = 0.0;
    double evolution_residual = 0.0;
    std::vector<std::string> errors;

    // Pairwise |a - b| / max(1, |a|, |b|); NaN when either value is missing.
    double dev_closed_numeric() const;
    double dev_closed_evolved() const;
    double dev_numeric_evolved() const;
    // Largest pairwise deviation among the values present.
    double max_pairwise_deviation() const;
};

VerificationReport verify_point(const DriveConfig& drive,
                                const DecayConfig& decay,
                                const ProbePoint& point,
                                const MediumPrefactor& prefactor,
                                const std::optional<EvolutionSettings>& settings = {});

// |a - b| scaled by max(1, |a|, |b|): absolute for small values, relative
// for large ones.
double scaled_deviation(const Susceptibility& a, const Susceptibility& b);

} // namespace swloc

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "swloc/types.hpp"

namespace swloc {

struct Peak {
    double kappa_x = 0.0;            // in [-pi, pi)
    double height = 0.0;             // chi'' at the maximum
    std::optional<double> fwhm;      // width at half height above the profile
                                     // baseline; empty when not crossed
};

struct PeakSet {
    std::vector<Peak> peaks;         // ascending kappa_x
    int profile_resolution = 0;      // grid size used
    bool uniform = false;            // profile flat to 1e-9 relative
};

enum class LocalizationClass {
    SubHalfNegative, // all peaks in (-pi, 0)
    SubHalfPositive, // all peaks in (0, pi)
    BothHalves,
    Uniform,
    NoPeaks,
};

const char* to_string(LocalizationClass c);

enum class PhaseCase { Zero, HalfPi, Pi };

// Maps a numeric relative phase onto the closed-form cases; throws
// UnsupportedPhase for anything but 0, pi/2, pi (mod 2pi).
PhaseCase phase_case_from(double phi);

struct DetuningBranch {
    PhaseCase phase_case;
    int branch_id = 0;                              // 1, 2, or 3
    std::vector<std::pair<double, double>> values;  // (kappa_x, delta)
};

// Analytic peak positions: for each real root R with |R| <= 1 both arcsin
// branches folded into [-pi, pi), duplicates at |R| = 1 merged. Empty when
// no real in-range roots exist.
std::vector<double> peak_positions_analytic(const DriveConfig& drive, double delta);

// Grid peak detection on the chi'' profile over one period [-pi, pi):
// strict local maxima with topographic prominence at least
// min_prominence * (global max - global min), positions refined by
// parabolic interpolation, FWHM located by bisection. Periodic wraparound
// throughout. A flat profile comes back with uniform = true and no peaks.
PeakSet peak_positions_numeric(const DriveConfig& drive, const DecayConfig& decay,
                               double delta, const MediumPrefactor& prefactor,
                               int grid_n = 2048, double min_prominence = 5e-3);

// Detunings that put an absorption peak at each sampled position, for the
// three closed-form phase cases. Requires omega2 == omega3.
std::vector<DetuningBranch> detuning_branches(PhaseCase phase_case,
                                              const DriveConfig& drive,
                                              std::span<const double> kappa_x_samples);

// Sub-half-wavelength classification. Peaks within one grid cell of
// kappa_x = 0 or +-pi count as BothHalves, never as confined.
LocalizationClass classify(const PeakSet& peaks);

} // namespace swloc

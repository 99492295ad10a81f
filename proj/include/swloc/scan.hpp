#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swloc/types.hpp"

namespace swloc {

enum class ScanQuantity { ChiIm, ChiRe, Both };

struct DeltaRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

struct ScanRequest {
    DriveConfig drive;
    DecayConfig decay;
    MediumPrefactor prefactor;
    double delta = 0.0;                  // probe detuning for 1D profiles
    double x_lo = -3.14159265358979323846;
    double x_hi = 3.14159265358979323846;
    int x_count = 2048;
    std::optional<DeltaRange> delta_range; // present for 2D scans
    ScanQuantity quantity = ScanQuantity::ChiIm;
};

struct ProfileRow {
    double delta = 0.0;
    double kappa_x = 0.0;
    double chi_re = 0.0;
    double chi_im = 0.0;
    bool defined = true; // false at singular parameter coincidences
};

struct ProfileTable {
    bool two_d = false;
    std::vector<ProfileRow> rows; // row-major, delta outer for 2D
    ScanRequest request;          // parameter echo
    std::string version = kVersion;
};

// Uniform sampling of chi over kappa_x in [x_lo, x_hi], endpoints included.
// Cells where the susceptibility is undefined are marked, not interpolated.
// Rows are identical regardless of the thread count.
ProfileTable profile(const ScanRequest& request, int threads = 1);

// 2D scan over (delta, kappa_x); requires delta_range.
ProfileTable heatmap(const ScanRequest& request, int threads = 1);

// Built-in named parameter sets (fig2a..fig2d, fig3_*, fig4e, subhalf_*).
ScanRequest preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace swloc

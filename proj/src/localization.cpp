#include "swloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "swloc/steady_state.hpp"
#include "swloc/susceptibility.hpp"

namespace swloc {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to_period(double x) {
    // fold into [-pi, pi)
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x < 0.0) x += 2.0 * kPi;
    return x - kPi;
}

// Topographic prominence of the local maximum at index i on a periodic
// signal: height minus the higher of the two cols reached by walking each
// way to the nearest strictly higher sample (or all the way around).
double prominence(const std::vector<double>& v, int i) {
    const int n = static_cast<int>(v.size());
    const double h = v[i];
    double key_col = -std::numeric_limits<double>::infinity();
    for (const int dir : {-1, +1}) {
        double col = h;
        int j = i;
        for (int step = 0; step < n; ++step) {
            j = (j + dir + n) % n;
            if (v[j] > h) break;
            col = std::min(col, v[j]);
        }
        key_col = std::max(key_col, col);
    }
    return h - key_col;
}

// Bisection on f(x) - level over [lo, hi] assuming a sign change.
double bisect_level(const std::function<double(double)>& f, double level,
                    double lo, double hi) {
    double flo = f(lo) - level;
    for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid) - level;
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

const char* to_string(LocalizationClass c) {
    switch (c) {
        case LocalizationClass::SubHalfNegative: return "SubHalfNegative";
        case LocalizationClass::SubHalfPositive: return "SubHalfPositive";
        case LocalizationClass::BothHalves: return "BothHalves";
        case LocalizationClass::Uniform: return "Uniform";
        case LocalizationClass::NoPeaks: return "NoPeaks";
    }
    return "?";
}

PhaseCase phase_case_from(double phi) {
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
    const double tol = 1e-9;
    if (std::abs(p) <= tol || std::abs(p - 2.0 * kPi) <= tol) return PhaseCase::Zero;
    if (std::abs(p - 0.5 * kPi) <= tol) return PhaseCase::HalfPi;
    if (std::abs(p - kPi) <= tol) return PhaseCase::Pi;
    throw UnsupportedPhase("detuning branches exist only for phi in {0, pi/2, pi}");
}

std::vector<double> peak_positions_analytic(const DriveConfig& drive, double delta) {
    const RootPair roots = roots_R(drive, delta);
    std::vector<double> positions;
    for (const Complex& r : {roots.r1, roots.r2}) {
        if (r.imag() != 0.0) continue;
        double val = r.real();
        // tangent roots land a few ulp outside the unit range
        if (std::abs(val) > 1.0 + 1e-9) continue;
        val = std::clamp(val, -1.0, 1.0);
        const double primary = std::asin(val);
        positions.push_back(wrap_to_period(primary));
        positions.push_back(wrap_to_period(kPi - primary));
    }
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                    positions.end());
    return positions;
}

PeakSet peak_positions_numeric(const DriveConfig& drive, const DecayConfig& decay,
                               double delta, const MediumPrefactor& prefactor,
                               int grid_n, double min_prominence) {
    if (grid_n < 256)
        throw std::invalid_argument("peak_positions_numeric: grid_n must be >= 256");

    const auto chi_im = [&](double x) {
        return evaluate_chi(drive, decay, ProbePoint{delta, x}, prefactor).chi_im;
    };

    const int n = grid_n;
    const double cell = 2.0 * kPi / n;
    std::vector<double> x(n), v(n);
    for (int i = 0; i < n; ++i) {
        x[i] = -kPi + i * cell;
        v[i] = chi_im(x[i]);
    }

    const auto [it_min, it_max] = std::minmax_element(v.begin(), v.end());
    const double gmin = *it_min, gmax = *it_max;
    const double range = gmax - gmin;

    PeakSet out;
    out.profile_resolution = n;
    if (range <= 1e-9 * std::abs(gmax)) {
        out.uniform = true;
        return out;
    }

    for (int i = 0; i < n; ++i) {
        const double left = v[(i - 1 + n) % n];
        const double right = v[(i + 1) % n];
        if (!(v[i] > left && v[i] > right)) continue;
        if (prominence(v, i) < min_prominence * range) continue;

        // parabolic refinement on the three bracketing samples
        const double denom = left - 2.0 * v[i] + right;
        double offset = denom != 0.0 ? 0.5 * (left - right) / denom : 0.0;
        offset = std::clamp(offset, -0.5, 0.5);
        const double pos = wrap_to_period(x[i] + offset * cell);
        const double height = chi_im(pos);

        Peak peak;
        peak.kappa_x = pos;
        peak.height = height;

        // half height above the global-minimum baseline
        const double level = 0.5 * (height + gmin);
        double crossing[2] = {0.0, 0.0};
        bool found[2] = {false, false};
        for (const int side : {0, 1}) {
            const int dir = side == 0 ? -1 : +1;
            int j = i;
            for (int step = 1; step <= n / 2; ++step) {
                const int jn = (j + dir + n) % n;
                if (v[jn] < level) {
                    const double xa = x[i] + dir * (step - 1) * cell;
                    const double xb = x[i] + dir * step * cell;
                    crossing[side] = side == 0 ? bisect_level(chi_im, level, xb, xa)
                                               : bisect_level(chi_im, level, xa, xb);
                    found[side] = true;
                    break;
                }
                j = jn;
            }
        }
        if (found[0] && found[1]) {
            double width = crossing[1] - crossing[0];
            width = std::fmod(width, 2.0 * kPi);
            if (width <= 0.0) width += 2.0 * kPi;
            peak.fwhm = width;
        }
        out.peaks.push_back(peak);
    }

    std::sort(out.peaks.begin(), out.peaks.end(),
              [](const Peak& a, const Peak& b) { return a.kappa_x < b.kappa_x; });
    // merge anything closer than the grid resolution, keeping the higher
    std::vector<Peak> merged;
    for (const Peak& p : out.peaks) {
        if (!merged.empty() && p.kappa_x - merged.back().kappa_x < cell) {
            if (p.height > merged.back().height) merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }
    out.peaks = std::move(merged);
    return out;
}

std::vector<DetuningBranch> detuning_branches(PhaseCase phase_case,
                                              const DriveConfig& drive,
                                              std::span<const double> kappa_x_samples) {
    const double o = drive.omega2;
    if (std::abs(drive.omega2 - drive.omega3) >
        1e-12 * std::max({drive.omega2, drive.omega3, 1.0}))
        throw std::invalid_argument("detuning_branches assumes omega2 == omega3");

    const auto eval = [&](int branch, double x) {
        const double u = drive.omega1 * std::sin(x);
        const double sq = std::sqrt(u * u + 8.0 * o * o);
        switch (phase_case) {
            case PhaseCase::Zero:
                if (branch == 1) return 0.25 * (u + sq);
                if (branch == 2) return 0.25 * (u - sq);
                return -0.5 * u;
            case PhaseCase::HalfPi: {
                const double d1 = 0.5 * std::sqrt(u * u + 2.0 * o * o);
                return branch == 1 ? d1 : -d1;
            }
            case PhaseCase::Pi:
                if (branch == 1) return 0.25 * (-u + sq);
                if (branch == 2) return 0.25 * (-u - sq);
                return 0.5 * u;
        }
        return 0.0;
    };

    const int n_branches = phase_case == PhaseCase::HalfPi ? 2 : 3;
    std::vector<DetuningBranch> branches;
    for (int b = 1; b <= n_branches; ++b) {
        DetuningBranch branch;
        branch.phase_case = phase_case;
        branch.branch_id = b;
        branch.values.reserve(kappa_x_samples.size());
        for (const double x : kappa_x_samples)
            branch.values.emplace_back(x, eval(b, x));
        branches.push_back(std::move(branch));
    }
    return branches;
}

LocalizationClass classify(const PeakSet& set) {
    if (set.uniform) return LocalizationClass::Uniform;
    if (set.peaks.empty()) return LocalizationClass::NoPeaks;

    const double margin =
        set.profile_resolution > 0 ? 2.0 * kPi / set.profile_resolution : 1e-9;
    bool all_negative = true, all_positive = true;
    for (const Peak& p : set.peaks) {
        const double x = p.kappa_x;
        if (std::abs(x) <= margin || std::abs(std::abs(x) - kPi) <= margin)
            return LocalizationClass::BothHalves; // boundary peak: never overclaim
        all_negative = all_negative && x < 0.0;
        all_positive = all_positive && x > 0.0;
    }
    if (all_negative) return LocalizationClass::SubHalfNegative;
    if (all_positive) return LocalizationClass::SubHalfPositive;
    return LocalizationClass::BothHalves;
}

} // namespace swloc

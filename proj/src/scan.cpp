#include "swloc/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "swloc/steady_state.hpp"

namespace swloc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_request(const ScanRequest& r, bool need_delta_range) {
    validate(r.drive);
    validate(r.decay);
    validate(r.prefactor);
    if (!(r.x_lo < r.x_hi)) throw std::invalid_argument("scan: x_lo must be < x_hi");
    if (r.x_count < 2) throw std::invalid_argument("scan: x_count must be >= 2");
    if (need_delta_range) {
        if (!r.delta_range) throw std::invalid_argument("heatmap: delta_range required");
        if (!(r.delta_range->lo < r.delta_range->hi))
            throw std::invalid_argument("heatmap: delta lo must be < hi");
        if (r.delta_range->count < 2)
            throw std::invalid_argument("heatmap: delta count must be >= 2");
    }
}

ProfileRow evaluate_row(const ScanRequest& r, double delta, double x) {
    ProfileRow row;
    row.delta = delta;
    row.kappa_x = x;
    try {
        const Susceptibility chi =
            evaluate_chi(r.drive, r.decay, ProbePoint{delta, x}, r.prefactor);
        row.chi_re = chi.chi_re;
        row.chi_im = chi.chi_im;
    } catch (const DegenerateDenominator&) {
        row.chi_re = row.chi_im = kNaN;
        row.defined = false;
    } catch (const SingularSystem&) {
        row.chi_re = row.chi_im = kNaN;
        row.defined = false;
    }
    return row;
}

// Fills rows [0, total) by index; chunked across threads, identical output
// for any thread count.
template <typename Fill>
void run_cells(std::vector<ProfileRow>& rows, int threads, Fill fill) {
    const long total = static_cast<long>(rows.size());
    threads = std::clamp(threads, 1, 64);
    if (threads == 1 || total < 2 * threads) {
        for (long i = 0; i < total; ++i) rows[i] = fill(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&rows, &fill, lo, hi] {
            for (long i = lo; i < hi; ++i) rows[i] = fill(i);
        });
    }
    for (auto& th : pool) th.join();
}

ScanRequest fig2_common() {
    ScanRequest r;
    r.drive.omega1 = 3.0;
    r.drive.omega2 = 1.0;
    r.drive.omega3 = 1.0;
    r.drive.phi = kPi / 2.0;
    r.decay.gamma2 = 0.0;
    return r;
}

ScanRequest fig3_common() {
    ScanRequest r;
    r.drive.omega1 = 30.0;
    r.drive.omega2 = 20.0;
    r.drive.omega3 = 20.0;
    r.decay.gamma2 = 0.0;
    r.delta_range = DeltaRange{0.0, 30.0, 121};
    return r;
}

} // namespace

ProfileTable profile(const ScanRequest& request, int threads) {
    check_request(request, false);
    ProfileTable table;
    table.request = request;
    table.rows.resize(request.x_count);
    const double step = (request.x_hi - request.x_lo) / (request.x_count - 1);
    run_cells(table.rows, threads, [&](long i) {
        return evaluate_row(request, request.delta, request.x_lo + i * step);
    });
    return table;
}

ProfileTable heatmap(const ScanRequest& request, int threads) {
    check_request(request, true);
    ProfileTable table;
    table.two_d = true;
    table.request = request;
    const DeltaRange dr = *request.delta_range;
    table.rows.resize(static_cast<size_t>(dr.count) * request.x_count);
    const double dstep = (dr.hi - dr.lo) / (dr.count - 1);
    const double xstep = (request.x_hi - request.x_lo) / (request.x_count - 1);
    run_cells(table.rows, threads, [&](long i) {
        const long di = i / request.x_count;
        const long xi = i % request.x_count;
        return evaluate_row(request, dr.lo + di * dstep, request.x_lo + xi * xstep);
    });
    return table;
}

ScanRequest preset(const std::string& name) {
    if (name == "fig2a") {
        ScanRequest r = fig2_common();
        r.delta = 5.0;
        return r;
    }
    if (name == "fig2b") {
        ScanRequest r = fig2_common();
        r.delta = 1.4;
        return r;
    }
    if (name == "fig2c") {
        ScanRequest r = fig2_common();
        r.delta = 1.3;
        return r;
    }
    if (name == "fig2d") {
        ScanRequest r = fig2_common();
        r.drive.omega1 = 20.0;
        r.delta = 5.0;
        return r;
    }
    if (name == "fig3_phi0") {
        ScanRequest r = fig3_common();
        r.drive.phi = 0.0;
        r.delta = 7.5;
        return r;
    }
    if (name == "fig3_phihalf") {
        ScanRequest r = fig3_common();
        r.drive.phi = kPi / 2.0;
        r.delta = std::sqrt(425.0);
        return r;
    }
    if (name == "fig3_phipi") {
        ScanRequest r = fig3_common();
        r.drive.phi = kPi;
        r.delta = 7.5;
        return r;
    }
    if (name == "fig4e") {
        ScanRequest r = fig3_common();
        r.drive.phi = kPi / 2.0;
        r.delta = 0.0;
        r.delta_range.reset();
        return r;
    }
    if (name == "subhalf_phi0") {
        ScanRequest r = fig3_common();
        r.drive.phi = 0.0;
        r.delta = 7.5;
        r.delta_range.reset();
        return r;
    }
    if (name == "subhalf_phipi") {
        ScanRequest r = fig3_common();
        r.drive.phi = kPi;
        r.delta = 7.5;
        r.delta_range.reset();
        return r;
    }
    throw UnknownPreset("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3_phi0", "fig3_phihalf",
            "fig3_phipi", "fig4e", "subhalf_phi0", "subhalf_phipi"};
}

} // namespace swloc

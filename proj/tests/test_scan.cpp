#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "swloc/scan.hpp"
#include "swloc/steady_state.hpp"

using namespace swloc;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

bool tables_identical(const ProfileTable& a, const ProfileTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (size_t i = 0; i < a.rows.size(); ++i) {
        const ProfileRow &ra = a.rows[i], &rb = b.rows[i];
        if (ra.defined != rb.defined) return false;
        if (std::memcmp(&ra.kappa_x, &rb.kappa_x, sizeof(double)) != 0) return false;
        if (std::memcmp(&ra.delta, &rb.delta, sizeof(double)) != 0) return false;
        if (ra.defined) {
            if (std::memcmp(&ra.chi_re, &rb.chi_re, sizeof(double)) != 0) return false;
            if (std::memcmp(&ra.chi_im, &rb.chi_im, sizeof(double)) != 0) return false;
        }
    }
    return true;
}
} // namespace

TEST_CASE("preset parameter sets match the published regimes") {
    CHECK(preset("fig2a").drive.omega1 == 3.0);
    CHECK(preset("fig2a").drive.omega2 == 1.0);
    CHECK(preset("fig2a").drive.phi == Approx(kPi / 2));
    CHECK(preset("fig2a").delta == 5.0);
    CHECK(preset("fig2b").delta == 1.4);
    CHECK(preset("fig2c").delta == 1.3);
    CHECK(preset("fig2d").drive.omega1 == 20.0);
    CHECK(preset("fig2d").delta == 5.0);
    CHECK(preset("fig3_phi0").drive.omega2 == 20.0);
    CHECK(preset("fig3_phi0").drive.omega1 == 30.0);
    CHECK(preset("fig3_phi0").drive.phi == 0.0);
    CHECK(preset("fig3_phihalf").delta == Approx(std::sqrt(425.0)));
    CHECK(preset("fig4e").delta == 0.0);
    CHECK(preset("subhalf_phi0").delta == 7.5);
    CHECK(preset("subhalf_phipi").drive.phi == Approx(kPi));
    for (const auto& name : preset_names()) CHECK_NOTHROW(preset(name));
    CHECK_THROWS_AS(preset("fig9z"), UnknownPreset);
}

TEST_CASE("profiles sample the requested grid") {
    SUBCASE("five symmetric rows for an even profile") {
        ScanRequest r = preset("fig2a");
        r.x_count = 5;
        const ProfileTable t = profile(r);
        REQUIRE(t.rows.size() == 5);
        CHECK(t.rows[0].kappa_x == Approx(-kPi));
        CHECK(t.rows[2].kappa_x == Approx(0.0).scale(1));
        CHECK(t.rows[4].kappa_x == Approx(kPi));
        CHECK(std::abs(t.rows[0].chi_im - t.rows[4].chi_im) <= 1e-12);
        CHECK(std::abs(t.rows[1].chi_im - t.rows[3].chi_im) <= 1e-12);
    }
    SUBCASE("degenerate two-point request keeps the endpoints") {
        ScanRequest r = preset("fig2a");
        r.x_count = 2;
        const ProfileTable t = profile(r);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[0].kappa_x == -kPi);
        CHECK(t.rows[1].kappa_x == kPi);
    }
    SUBCASE("flat-absorption preset is constant at 1/gamma1") {
        const ProfileTable t = profile(preset("fig4e"));
        REQUIRE(t.rows.size() == 2048);
        for (const ProfileRow& row : t.rows) {
            REQUIRE(row.defined);
            CHECK(std::abs(row.chi_im - 1.0) <= 1e-12);
        }
    }
    SUBCASE("bad requests are rejected") {
        ScanRequest r = preset("fig2a");
        r.x_count = 1;
        CHECK_THROWS_AS(profile(r), std::invalid_argument);
        r = preset("fig2a");
        r.x_lo = 1.0;
        r.x_hi = -1.0;
        CHECK_THROWS_AS(profile(r), std::invalid_argument);
    }
}

TEST_CASE("undefined cells are marked, not interpolated") {
    // all drives off and delta = 0 makes M singular at every x
    ScanRequest r;
    r.delta = 0.0;
    r.x_count = 4;
    const ProfileTable t = profile(r);
    for (const ProfileRow& row : t.rows) {
        CHECK_FALSE(row.defined);
        CHECK(std::isnan(row.chi_im));
    }
}

TEST_CASE("determinism and parallel-serial equivalence") {
    ScanRequest r = preset("fig2b");
    r.x_count = 513;
    const ProfileTable serial1 = profile(r, 1);
    const ProfileTable serial2 = profile(r, 1);
    const ProfileTable parallel = profile(r, 8);
    CHECK(tables_identical(serial1, serial2));
    CHECK(tables_identical(serial1, parallel));

    ScanRequest h = preset("fig3_phi0");
    h.x_count = 65;
    h.delta_range = DeltaRange{0.0, 30.0, 41};
    const ProfileTable h1 = heatmap(h, 1);
    const ProfileTable h2 = heatmap(h, 8);
    CHECK(tables_identical(h1, h2));
}

TEST_CASE("closed-form cells recompute identically through the direct solve") {
    ScanRequest r = preset("fig2a");
    r.x_count = 256;
    const ProfileTable t = profile(r);
    for (const ProfileRow& row : t.rows) {
        REQUIRE(row.defined);
        const Susceptibility chi =
            chi_numeric(r.drive, r.decay, {row.delta, row.kappa_x}, r.prefactor);
        const double mag = std::max(1.0, std::abs(chi.value()));
        CHECK(std::abs(chi.value() - Complex{row.chi_re, row.chi_im}) <= 1e-10 * mag);
    }
}

TEST_CASE("heatmap grids and the phase mirror") {
    SUBCASE("two-level 2x2 grid") {
        ScanRequest r;
        r.drive = DriveConfig{};
        r.decay = DecayConfig{};
        r.x_count = 2;
        r.delta_range = DeltaRange{0.5, 1.0, 2};
        const ProfileTable t = heatmap(r);
        REQUIRE(t.rows.size() == 4);
        CHECK(t.two_d);
        // row-major: delta outer
        CHECK(t.rows[0].delta == 0.5);
        CHECK(t.rows[1].delta == 0.5);
        CHECK(t.rows[2].delta == 1.0);
        CHECK(t.rows[3].delta == 1.0);
        for (const ProfileRow& row : t.rows) {
            const double g1 = 1.0;
            const Complex expect =
                Complex{2.0 * row.delta, g1} / (4.0 * row.delta * row.delta + g1 * g1);
            CHECK(std::abs(Complex{row.chi_re, row.chi_im} - expect) <= 1e-12);
        }
    }
    SUBCASE("phi = pi heatmap mirrors phi = 0 in x") {
        ScanRequest a = preset("fig3_phi0");
        a.x_count = 65;
        a.delta_range = DeltaRange{0.0, 30.0, 31};
        ScanRequest b = a;
        b.drive.phi = kPi;
        const ProfileTable ta = heatmap(a);
        const ProfileTable tb = heatmap(b);
        REQUIRE(ta.rows.size() == tb.rows.size());
        const int nx = a.x_count;
        for (size_t i = 0; i < ta.rows.size(); ++i) {
            const size_t di = i / nx, xi = i % nx;
            const size_t mirrored = di * nx + (nx - 1 - xi);
            CHECK(std::abs(ta.rows[i].chi_im - tb.rows[mirrored].chi_im) <=
                  1e-12 * std::max(1.0, std::abs(ta.rows[i].chi_im)));
        }
    }
    SUBCASE("missing delta range is rejected") {
        ScanRequest r = preset("fig2a");
        CHECK_THROWS_AS(heatmap(r), std::invalid_argument);
    }
}

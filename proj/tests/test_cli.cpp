#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "swloc/cli.hpp"
#include "swloc/scan.hpp"

using namespace swloc;
using doctest::Approx;
using nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;

std::string temp_path(const std::string& name) {
    return std::string("swloc_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SWLOC_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// y pixel values of the polyline, in order
std::vector<double> polyline_ys(const std::string& svg) {
    const size_t start = svg.find("points=\"");
    REQUIRE(start != std::string::npos);
    const size_t end = svg.find('"', start + 8);
    std::stringstream ss(svg.substr(start + 8, end - start - 8));
    std::vector<double> ys;
    std::string pair;
    while (ss >> pair) {
        const size_t comma = pair.find(',');
        REQUIRE(comma != std::string::npos);
        ys.push_back(std::strtod(pair.c_str() + comma + 1, nullptr));
    }
    return ys;
}

// strict local maxima of chi'' (minima of pixel y), with equal runs collapsed
int count_maxima(const std::vector<double>& ys) {
    std::vector<double> collapsed;
    for (const double y : ys)
        if (collapsed.empty() || collapsed.back() != y) collapsed.push_back(y);
    int count = 0;
    for (size_t i = 1; i + 1 < collapsed.size(); ++i)
        if (collapsed[i] < collapsed[i - 1] && collapsed[i] < collapsed[i + 1]) ++count;
    return count;
}
} // namespace

TEST_CASE("number parsing accepts decimals and pi expressions") {
    CHECK(cli::parse_number("1.4") == 1.4);
    CHECK(cli::parse_number("-0.5") == -0.5);
    CHECK(cli::parse_number("pi") == Approx(kPi));
    CHECK(cli::parse_number("pi/2") == Approx(kPi / 2));
    CHECK(cli::parse_number("pi/4") == Approx(kPi / 4));
    CHECK(cli::parse_number("3pi/4") == Approx(3 * kPi / 4));
    CHECK(cli::parse_number("-pi/2") == Approx(-kPi / 2));
    CHECK(cli::parse_number("2pi") == Approx(2 * kPi));
    CHECK_THROWS_AS(cli::parse_number("banana"), UsageError);
    CHECK_THROWS_AS(cli::parse_number("pi/0"), UsageError);
    CHECK_THROWS_AS(cli::parse_number("pie"), UsageError);
    CHECK_THROWS_AS(cli::parse_number(""), UsageError);
}

TEST_CASE("argument parsing") {
    SUBCASE("preset fills the full parameter set") {
        const cli::RunConfig cfg = cli::parse_args({"profile", "--preset", "fig2a"});
        CHECK(cfg.subcommand == "profile");
        CHECK(cfg.drive.omega1 == 3.0);
        CHECK(cfg.drive.omega2 == 1.0);
        CHECK(cfg.delta == 5.0);
        CHECK(cfg.x_count == 2048);
    }
    SUBCASE("flags override the preset") {
        const cli::RunConfig cfg = cli::parse_args(
            {"peaks", "--preset", "subhalf_phi0", "--grid-n", "4096"});
        CHECK(cfg.grid_n == 4096);
        CHECK(cfg.delta == 7.5);
    }
    SUBCASE("bad numbers are usage errors") {
        CHECK_THROWS_AS(cli::parse_args({"profile", "--phi", "banana"}), UsageError);
    }
    SUBCASE("unknown flags and subcommands are usage errors") {
        CHECK_THROWS_AS(cli::parse_args({"profile", "--preset", "fig2a", "--frob", "1"}),
                        UsageError);
        CHECK_THROWS_AS(cli::parse_args({"frobnicate"}), UsageError);
        CHECK_THROWS_AS(cli::parse_args({}), UsageError);
        CHECK_THROWS_AS(cli::parse_args({"profile", "--preset"}), UsageError);
    }
    SUBCASE("a run with no parameters is rejected") {
        CHECK_THROWS_AS(cli::parse_args({"profile"}), UsageError);
        CHECK_NOTHROW(cli::parse_args({"preset-list"}));
        CHECK_NOTHROW(cli::parse_args({"profile", "--delta", "2.0"}));
    }
    SUBCASE("delta range parses LO:HI:N") {
        const cli::RunConfig cfg = cli::parse_args(
            {"heatmap", "--preset", "fig3_phi0", "--delta-range", "0:30:61"});
        REQUIRE(cfg.delta_range.has_value());
        CHECK(cfg.delta_range->lo == 0.0);
        CHECK(cfg.delta_range->hi == 30.0);
        CHECK(cfg.delta_range->count == 61);
        CHECK_THROWS_AS(cli::parse_args({"heatmap", "--delta-range", "0:30"}), UsageError);
    }
    SUBCASE("unknown preset is a usage-level failure") {
        CHECK_THROWS_AS(cli::parse_args({"profile", "--preset", "fig9z"}), UnknownPreset);
    }
}

TEST_CASE("config file round trip") {
    const cli::RunConfig cfg1 = cli::parse_args({"profile", "--preset", "fig2b",
                                                 "--gamma-bc", "0.05", "--x-count",
                                                 "512"});
    const std::string path = temp_path("roundtrip.json");
    {
        std::ofstream out(path);
        out << cli::dump_config(cfg1) << "\n";
    }
    const cli::RunConfig cfg2 = cli::parse_args({"profile", "--config", path});
    CHECK(cfg1 == cfg2);

    // heatmap preset carries a delta range through the round trip
    const cli::RunConfig h1 = cli::parse_args({"heatmap", "--preset", "fig3_phi0"});
    {
        std::ofstream out(path);
        out << cli::dump_config(h1) << "\n";
    }
    const cli::RunConfig h2 = cli::parse_args({"heatmap", "--config", path});
    CHECK(h1 == h2);
    std::remove(path.c_str());
}

TEST_CASE("config files are validated") {
    const std::string path = temp_path("badcfg.json");
    {
        std::ofstream out(path);
        out << R"({"drive": {"omega9": 1.0}})";
    }
    CHECK_THROWS_AS(cli::parse_args({"profile", "--config", path}), UsageError);
    {
        std::ofstream out(path);
        out << "not json";
    }
    CHECK_THROWS_AS(cli::parse_args({"profile", "--config", path}), UsageError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(cli::parse_args({"profile", "--config", "missing_file.json"}),
                    UsageError);
}

TEST_CASE("csv schema and 17-digit round trip") {
    ScanRequest r = preset("fig2a");
    r.x_count = 8;
    const ProfileTable t = profile(r);
    std::stringstream ss;
    cli::emit_csv(t, ss);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "kappa_x,chi_re,chi_im");
    int rows = 0;
    while (std::getline(ss, line)) {
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 != std::string::npos);
        const double kx = std::strtod(line.substr(0, c1).c_str(), nullptr);
        const double re = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
        const double im = std::strtod(line.substr(c2 + 1).c_str(), nullptr);
        // parsing the text back reproduces the doubles exactly
        CHECK(kx == t.rows[rows].kappa_x);
        CHECK(re == t.rows[rows].chi_re);
        CHECK(im == t.rows[rows].chi_im);
        ++rows;
    }
    CHECK(rows == 8);

    ScanRequest h = preset("fig3_phi0");
    h.x_count = 3;
    h.delta_range = DeltaRange{0.0, 1.0, 2};
    std::stringstream ss2;
    cli::emit_csv(heatmap(h), ss2);
    std::getline(ss2, line);
    CHECK(line == "delta,kappa_x,chi_re,chi_im");
}

TEST_CASE("svg output") {
    SUBCASE("structure: one polyline, guide line, pi ticks") {
        ScanRequest r = preset("fig2a");
        r.x_count = 257;
        const ProfileTable t = profile(r);
        std::stringstream ss;
        cli::emit_svg(t, ss);
        const std::string svg = ss.str();
        CHECK(count_occurrences(svg, "<polyline") == 1);
        CHECK(count_occurrences(svg, "x-zero-guide") == 1);
        CHECK(svg.find(">pi/2<") != std::string::npos);
        CHECK(svg.find(">-pi<") != std::string::npos);

        std::stringstream ss2;
        cli::emit_svg(t, ss2);
        CHECK(svg == ss2.str()); // byte-identical on identical input
    }
    SUBCASE("four absorption maxima show as four polyline peaks") {
        const ProfileTable t = profile(preset("fig2d"));
        std::stringstream ss;
        cli::emit_svg(t, ss);
        CHECK(count_maxima(polyline_ys(ss.str())) == 4);
    }
    SUBCASE("flat profiles still render") {
        ScanRequest r = preset("fig4e");
        r.x_count = 64;
        std::stringstream ss;
        CHECK_NOTHROW(cli::emit_svg(profile(r), ss));
    }
    SUBCASE("2D and empty tables are unsupported") {
        ScanRequest h = preset("fig3_phi0");
        h.x_count = 3;
        h.delta_range = DeltaRange{0.0, 1.0, 2};
        std::stringstream ss;
        CHECK_THROWS_AS(cli::emit_svg(heatmap(h), ss), UnsupportedTable);
        ProfileTable empty;
        CHECK_THROWS_AS(cli::emit_svg(empty, ss), UnsupportedTable);
    }
}

TEST_CASE("end-to-end: exit codes and artifacts") {
    const std::string out_csv = temp_path("fig4e.csv");
    const std::string out_json = temp_path("peaks.json");

    SUBCASE("flat-absorption profile to csv") {
        REQUIRE(run_cli("profile --preset fig4e --format csv --output " + out_csv +
                        " 2>/dev/null") == 0);
        std::ifstream in(out_csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "kappa_x,chi_re,chi_im");
        int rows = 0;
        while (std::getline(in, line)) {
            const size_t c2 = line.rfind(',');
            const double im = std::strtod(line.substr(c2 + 1).c_str(), nullptr);
            REQUIRE(std::abs(im - 1.0) <= 1e-12);
            ++rows;
        }
        CHECK(rows == 2048);
        std::remove(out_csv.c_str());
    }
    SUBCASE("sub-half-wavelength peaks as json") {
        REQUIRE(run_cli("peaks --preset subhalf_phi0 --format json --output " +
                        out_json + " 2>/dev/null") == 0);
        const json doc = json::parse(slurp(out_json));
        CHECK(doc["classification"] == "SubHalfNegative");
        REQUIRE(doc["peaks"].size() == 2);
        CHECK(std::abs(doc["peaks"][0]["kappa_x"].get<double>() - (-2.6180)) < 1e-3);
        CHECK(std::abs(doc["peaks"][1]["kappa_x"].get<double>() - (-0.5236)) < 1e-3);
        REQUIRE(doc["analytic_positions"].size() == 2);
        std::remove(out_json.c_str());
    }
    SUBCASE("three-way verification passes on a published point") {
        REQUIRE(run_cli("verify --preset fig2b --x-count 33 --format json --output " +
                        out_json + " 2>/dev/null") == 0);
        const json doc = json::parse(slurp(out_json));
        CHECK(doc["pass"] == true);
        CHECK(doc["max_deviation"].get<double>() <= 1e-6);
        CHECK(doc["points"] == 33);
        std::remove(out_json.c_str());
    }
    SUBCASE("classify emits the class") {
        REQUIRE(run_cli("classify --preset subhalf_phipi --output " + out_json +
                        " 2>/dev/null") == 0);
        CHECK(slurp(out_json).find("SubHalfPositive") != std::string::npos);
        std::remove(out_json.c_str());
    }
    SUBCASE("curves emit the branch table") {
        REQUIRE(run_cli("curves --preset fig3_phi0 --x-count 9 --format csv --output " +
                        out_csv + " 2>/dev/null") == 0);
        const std::string text = slurp(out_csv);
        CHECK(text.rfind("branch_id,kappa_x,delta", 0) == 0);
        // 3 branches x 9 samples + header
        CHECK(count_occurrences(text, "\n") == 28);
        std::remove(out_csv.c_str());
    }
    SUBCASE("usage errors exit 2") {
        CHECK(run_cli("profile --phi banana 2>/dev/null") == 2);
        CHECK(run_cli("profile 2>/dev/null") == 2);
        CHECK(run_cli("frobnicate 2>/dev/null") == 2);
        CHECK(run_cli("profile --preset fig2a --format tiff 2>/dev/null") == 2);
        CHECK(run_cli("heatmap --preset fig3_phi0 --format svg 2>/dev/null >/dev/null") == 2);
        CHECK(run_cli("curves --preset fig2a --phi 1.0 2>/dev/null") == 2);
        CHECK(run_cli("profile --omega1 -3 2>/dev/null") == 2);
        CHECK(run_cli("peaks --preset fig2a --grid-n 64 2>/dev/null") == 2);
    }
    SUBCASE("computational failure exits 1") {
        // nearly undamped slow mode: the default horizon reports NonConverged
        CHECK(run_cli("verify --omega1 36.8 --omega2 0.14 --omega3 34.3 "
                      "--phi 5.98 --delta -0.03 --x-count 3 "
                      "2>/dev/null >/dev/null") == 1);
    }
    SUBCASE("dump-config round trips through the binary") {
        const std::string cfg_path = temp_path("dump.json");
        REQUIRE(run_cli("profile --preset fig2c --dump-config --output " + cfg_path +
                        " 2>/dev/null") == 0);
        const cli::RunConfig direct = cli::parse_args({"profile", "--preset", "fig2c"});
        const cli::RunConfig reparsed =
            cli::parse_args({"profile", "--config", cfg_path});
        CHECK(direct == reparsed);
        std::remove(cfg_path.c_str());
    }
    SUBCASE("preset-list names every preset") {
        const std::string list_path = temp_path("presets.txt");
        REQUIRE(run_cli("preset-list --output " + list_path) == 0);
        const std::string text = slurp(list_path);
        for (const auto& name : preset_names())
            CHECK(text.find(name) != std::string::npos);
        std::remove(list_path.c_str());
    }
}

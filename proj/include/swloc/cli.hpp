#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swloc/scan.hpp"
#include "swloc/types.hpp"

namespace swloc::cli {

struct RunConfig {
    std::string subcommand;
    DriveConfig drive;
    DecayConfig decay;
    MediumPrefactor medium;
    double delta = 0.0;
    double x_lo = -3.14159265358979323846;
    double x_hi = 3.14159265358979323846;
    int x_count = 2048;
    int grid_n = 2048;
    std::optional<DeltaRange> delta_range;
    std::string format = "csv"; // csv | json | svg
    std::string output;         // empty = stdout
    bool dump_config = false;
    bool x_count_explicit = false;
    bool have_params = false;
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Accepts plain decimals plus the pi forms "pi", "pi/2", "3pi/4", "-pi",
// "2pi" and so on. Throws UsageError on anything else.
double parse_number(const std::string& token);

// argv without the program name: subcommand first, then flags.
RunConfig parse_args(const std::vector<std::string>& args);

// JSON document with the resolved drive/decay/probe/medium/scan groups; the
// same schema --config accepts.
std::string dump_config(const RunConfig& config);
void apply_config_text(RunConfig& config, const std::string& json_text);

int run(const RunConfig& config);

void emit_csv(const ProfileTable& table, std::ostream& os);
std::string table_json(const ProfileTable& table);

// Single-polyline SVG of chi'' vs kappa_x with pi/2 ticks and a guide line
// at kappa_x = 0. 1D non-empty tables only; throws UnsupportedTable.
void emit_svg(const ProfileTable& table, std::ostream& os);

std::string usage_text();

} // namespace swloc::cli

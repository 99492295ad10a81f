#include "swloc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "swloc/localization.hpp"
#include "swloc/steady_state.hpp"
#include "swloc/susceptibility.hpp"
#include "swloc/time_evolution.hpp"

namespace swloc::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kVerifyTol = 1e-6;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double parse_plain(const std::string& s) {
    if (s.empty()) throw UsageError("invalid number: empty token");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw UsageError("invalid number: '" + s + "'");
    return v;
}

long parse_int(const std::string& s, long min_value, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || v < min_value)
        throw UsageError(std::string("invalid ") + what + ": '" + s + "'");
    return v;
}

int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

struct OutputStream {
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

json drive_json(const DriveConfig& d) {
    return {{"omega1", d.omega1}, {"omega2", d.omega2}, {"omega3", d.omega3},
            {"phi", d.phi},       {"theta2", d.theta2}, {"theta3", d.theta3}};
}

json decay_json(const DecayConfig& d) {
    return {{"gamma1", d.gamma1}, {"gamma2", d.gamma2}, {"gamma_bc", d.gamma_bc}};
}

const char* quantity_name(ScanQuantity q) {
    switch (q) {
        case ScanQuantity::ChiIm: return "chi_im";
        case ScanQuantity::ChiRe: return "chi_re";
        case ScanQuantity::Both: return "both";
    }
    return "?";
}

ScanRequest to_request(const RunConfig& cfg) {
    ScanRequest r;
    r.drive = cfg.drive;
    r.decay = cfg.decay;
    r.prefactor = cfg.medium;
    r.delta = cfg.delta;
    r.x_lo = cfg.x_lo;
    r.x_hi = cfg.x_hi;
    r.x_count = cfg.x_count;
    r.delta_range = cfg.delta_range;
    return r;
}

// x tick label at multiples of pi/2
std::string pi_tick_label(int k) {
    switch (k) {
        case -2: return "-pi";
        case -1: return "-pi/2";
        case 0: return "0";
        case 1: return "pi/2";
        case 2: return "pi";
    }
    if (k % 2 == 0) return std::to_string(k / 2) + "pi";
    return std::to_string(k) + "pi/2";
}

int run_profile(const RunConfig& cfg, std::ostream& os) {
    const ProfileTable table = profile(to_request(cfg), hardware_threads());
    if (cfg.format == "csv")
        emit_csv(table, os);
    else if (cfg.format == "json")
        os << table_json(table) << "\n";
    else
        emit_svg(table, os);
    return 0;
}

int run_heatmap(const RunConfig& cfg, std::ostream& os) {
    if (!cfg.delta_range)
        throw UsageError("heatmap requires --delta-range LO:HI:N");
    const ProfileTable table = heatmap(to_request(cfg), hardware_threads());
    if (cfg.format == "svg")
        throw UnsupportedTable("heatmaps export csv or json only");
    if (cfg.format == "csv")
        emit_csv(table, os);
    else
        os << table_json(table) << "\n";
    return 0;
}

json peaks_json(const RunConfig& cfg, const PeakSet& set, LocalizationClass cls) {
    json out;
    out["drive"] = drive_json(cfg.drive);
    out["decay"] = decay_json(cfg.decay);
    out["delta"] = cfg.delta;
    out["grid_n"] = set.profile_resolution;
    out["uniform"] = set.uniform;
    out["classification"] = to_string(cls);
    out["peaks"] = json::array();
    for (const Peak& p : set.peaks) {
        json row = {{"kappa_x", p.kappa_x}, {"height", p.height}};
        if (p.fwhm)
            row["fwhm"] = *p.fwhm;
        else
            row["fwhm"] = nullptr;
        out["peaks"].push_back(row);
    }
    if (cfg.decay.gamma2 == 0.0) {
        try {
            out["analytic_positions"] = peak_positions_analytic(cfg.drive, cfg.delta);
        } catch (const DegenerateParameters&) {
            // no analytic prediction at delta = 0 or omega1 = 0
        }
    }
    return out;
}

int run_peaks(const RunConfig& cfg, std::ostream& os, bool classify_only) {
    if (cfg.format == "svg")
        throw UnsupportedTable("peaks and classify export csv or json only");
    const PeakSet set = peak_positions_numeric(cfg.drive, cfg.decay, cfg.delta,
                                               cfg.medium, cfg.grid_n);
    const LocalizationClass cls = classify(set);
    if (classify_only) {
        if (cfg.format == "json")
            os << json{{"classification", to_string(cls)},
                       {"peak_count", set.peaks.size()}}
                      .dump(2)
               << "\n";
        else
            os << to_string(cls) << "\n";
        return 0;
    }
    if (cfg.format == "json") {
        os << peaks_json(cfg, set, cls).dump(2) << "\n";
    } else {
        os << "kappa_x,height,fwhm\n";
        for (const Peak& p : set.peaks)
            os << fmt17(p.kappa_x) << "," << fmt17(p.height) << ","
               << (p.fwhm ? fmt17(*p.fwhm) : "nan") << "\n";
    }
    return 0;
}

int run_curves(const RunConfig& cfg, std::ostream& os) {
    if (cfg.format == "svg")
        throw UnsupportedTable("curves export csv or json only");
    const PhaseCase pc = phase_case_from(cfg.drive.phi);
    std::vector<double> xs(cfg.x_count);
    const double step = (cfg.x_hi - cfg.x_lo) / (cfg.x_count - 1);
    for (int i = 0; i < cfg.x_count; ++i) xs[i] = cfg.x_lo + i * step;
    const auto branches = detuning_branches(pc, cfg.drive, xs);

    if (cfg.format == "json") {
        json out;
        out["phase_case"] = pc == PhaseCase::Zero ? "0"
                            : pc == PhaseCase::HalfPi ? "pi/2"
                                                      : "pi";
        out["drive"] = drive_json(cfg.drive);
        out["branches"] = json::array();
        for (const auto& b : branches) {
            json jb;
            jb["branch_id"] = b.branch_id;
            jb["values"] = json::array();
            for (const auto& [x, d] : b.values) jb["values"].push_back({x, d});
            out["branches"].push_back(jb);
        }
        os << out.dump(2) << "\n";
    } else {
        os << "branch_id,kappa_x,delta\n";
        for (const auto& b : branches)
            for (const auto& [x, d] : b.values)
                os << b.branch_id << "," << fmt17(x) << "," << fmt17(d) << "\n";
    }
    return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& os) {
    const int points = cfg.x_count_explicit ? cfg.x_count : 65;
    double worst = 0.0;
    int unconverged = 0;
    std::vector<std::string> errors;
    for (int i = 0; i < points; ++i) {
        const double x = -kPi + (2.0 * kPi * i) / points;
        const ProbePoint point{cfg.delta, x};
        const VerificationReport rep =
            verify_point(cfg.drive, cfg.decay, point, cfg.medium);
        worst = std::max(worst, rep.max_pairwise_deviation());
        if (!rep.evolution_converged) ++unconverged;
        for (const std::string& e : rep.errors)
            if (errors.size() < 8)
                errors.push_back("kappa_x=" + fmt(x) + ": " + e);
    }
    const bool pass = worst <= kVerifyTol && unconverged == 0;
    if (cfg.format == "json") {
        os << json{{"points", points},
                   {"max_deviation", worst},
                   {"tolerance", kVerifyTol},
                   {"unconverged", unconverged},
                   {"pass", pass}}
                  .dump(2)
           << "\n";
    } else {
        os << "three-way check over " << points << " positions at delta="
           << fmt(cfg.delta) << "\n";
        os << "3-way max deviation " << fmt(worst, "%.3g") << " (tolerance "
           << fmt(kVerifyTol, "%.0e") << "): " << (pass ? "PASS" : "FAIL") << "\n";
        if (unconverged > 0)
            os << unconverged << " points did not converge\n";
    }
    for (const std::string& e : errors) std::cerr << "verify: " << e << "\n";
    return pass ? 0 : 1;
}

} // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    const bool ranges_equal =
        a.delta_range.has_value() == b.delta_range.has_value() &&
        (!a.delta_range ||
         (a.delta_range->lo == b.delta_range->lo &&
          a.delta_range->hi == b.delta_range->hi &&
          a.delta_range->count == b.delta_range->count));
    return a.subcommand == b.subcommand && a.drive.omega1 == b.drive.omega1 &&
           a.drive.omega2 == b.drive.omega2 && a.drive.omega3 == b.drive.omega3 &&
           a.drive.phi == b.drive.phi && a.drive.theta2 == b.drive.theta2 &&
           a.drive.theta3 == b.drive.theta3 && a.decay.gamma1 == b.decay.gamma1 &&
           a.decay.gamma2 == b.decay.gamma2 && a.decay.gamma_bc == b.decay.gamma_bc &&
           a.medium.scale == b.medium.scale && a.delta == b.delta &&
           a.x_lo == b.x_lo && a.x_hi == b.x_hi && a.x_count == b.x_count &&
           a.grid_n == b.grid_n && ranges_equal && a.format == b.format;
}

double parse_number(const std::string& token) {
    std::string s = token;
    double sign = 1.0;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    const size_t pos = s.find("pi");
    if (pos == std::string::npos) return sign * parse_plain(s);

    const std::string coef_str = s.substr(0, pos);
    const std::string rest = s.substr(pos + 2);
    const double coef = coef_str.empty() ? 1.0 : parse_plain(coef_str);
    double div = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/' || rest.size() < 2)
            throw UsageError("invalid number: '" + token + "'");
        div = parse_plain(rest.substr(1));
        if (div == 0.0) throw UsageError("invalid number (division by zero): '" + token + "'");
    }
    return sign * coef * kPi / div;
}

std::string dump_config(const RunConfig& cfg) {
    json out;
    out["drive"] = drive_json(cfg.drive);
    out["decay"] = decay_json(cfg.decay);
    out["probe"] = {{"delta", cfg.delta}};
    out["medium"] = {{"scale", cfg.medium.scale}};
    json scan = {{"x_count", cfg.x_count}, {"grid_n", cfg.grid_n}};
    if (cfg.delta_range)
        scan["delta_range"] = {cfg.delta_range->lo, cfg.delta_range->hi,
                               cfg.delta_range->count};
    out["scan"] = scan;
    return out.dump(2);
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto get_num = [](const json& j, const char* key) {
        if (!j.at(key).is_number())
            throw UsageError(std::string("config key '") + key + "' must be a number");
        return j.at(key).get<double>();
    };
    const auto check_keys = [](const json& j, std::initializer_list<const char*> allowed,
                               const char* group) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok)
                throw UsageError(std::string("unknown config key '") + group + "." + key + "'");
        }
    };
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    check_keys(doc, {"drive", "decay", "probe", "medium", "scan"}, "<top>");

    if (doc.contains("drive")) {
        const json& d = doc["drive"];
        check_keys(d, {"omega1", "omega2", "omega3", "phi", "theta2", "theta3"}, "drive");
        if (d.contains("omega1")) cfg.drive.omega1 = get_num(d, "omega1");
        if (d.contains("omega2")) cfg.drive.omega2 = get_num(d, "omega2");
        if (d.contains("omega3")) cfg.drive.omega3 = get_num(d, "omega3");
        if (d.contains("phi")) cfg.drive.phi = get_num(d, "phi");
        if (d.contains("theta2")) cfg.drive.theta2 = get_num(d, "theta2");
        if (d.contains("theta3")) cfg.drive.theta3 = get_num(d, "theta3");
        cfg.have_params = true;
    }
    if (doc.contains("decay")) {
        const json& d = doc["decay"];
        check_keys(d, {"gamma1", "gamma2", "gamma_bc"}, "decay");
        if (d.contains("gamma1")) cfg.decay.gamma1 = get_num(d, "gamma1");
        if (d.contains("gamma2")) cfg.decay.gamma2 = get_num(d, "gamma2");
        if (d.contains("gamma_bc")) cfg.decay.gamma_bc = get_num(d, "gamma_bc");
        cfg.have_params = true;
    }
    if (doc.contains("probe")) {
        check_keys(doc["probe"], {"delta"}, "probe");
        if (doc["probe"].contains("delta")) cfg.delta = get_num(doc["probe"], "delta");
        cfg.have_params = true;
    }
    if (doc.contains("medium")) {
        check_keys(doc["medium"], {"scale"}, "medium");
        if (doc["medium"].contains("scale"))
            cfg.medium.scale = get_num(doc["medium"], "scale");
        cfg.have_params = true;
    }
    if (doc.contains("scan")) {
        const json& s = doc["scan"];
        check_keys(s, {"x_count", "grid_n", "delta_range"}, "scan");
        if (s.contains("x_count")) {
            cfg.x_count = static_cast<int>(get_num(s, "x_count"));
            cfg.x_count_explicit = true;
            if (cfg.x_count < 2) throw UsageError("config scan.x_count must be >= 2");
        }
        if (s.contains("grid_n")) {
            cfg.grid_n = static_cast<int>(get_num(s, "grid_n"));
            if (cfg.grid_n < 2) throw UsageError("config scan.grid_n must be >= 2");
        }
        if (s.contains("delta_range")) {
            const json& r = s["delta_range"];
            if (!r.is_array() || r.size() != 3)
                throw UsageError("config scan.delta_range must be [lo, hi, count]");
            cfg.delta_range = DeltaRange{r[0].get<double>(), r[1].get<double>(),
                                         r[2].get<int>()};
        }
    }
}

RunConfig parse_args(const std::vector<std::string>& args) {
    static const std::vector<std::string> subcommands = {
        "profile", "heatmap", "peaks", "curves", "classify", "verify", "preset-list"};

    if (args.empty()) throw UsageError("missing subcommand");
    if (args[0] == "--help" || args[0] == "-h") {
        std::cout << usage_text();
        std::exit(0);
    }

    RunConfig cfg;
    cfg.subcommand = args[0];
    if (std::find(subcommands.begin(), subcommands.end(), cfg.subcommand) ==
        subcommands.end())
        throw UsageError("unknown subcommand: '" + cfg.subcommand + "'");

    std::optional<std::string> preset_name, config_path;
    std::vector<std::pair<std::string, std::string>> overrides;

    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& flag = args[i];
        if (flag == "--help" || flag == "-h") {
            std::cout << usage_text();
            std::exit(0);
        }
        if (flag == "--dump-config") {
            cfg.dump_config = true;
            continue;
        }
        static const std::vector<std::string> value_flags = {
            "--preset", "--omega1", "--omega2", "--omega3", "--phi", "--theta2",
            "--theta3", "--gamma2", "--gamma-bc", "--delta", "--x-count",
            "--delta-range", "--grid-n", "--format", "--config", "--output"};
        if (std::find(value_flags.begin(), value_flags.end(), flag) ==
            value_flags.end())
            throw UsageError("unknown flag: '" + flag + "'");
        if (i + 1 >= args.size())
            throw UsageError("flag " + flag + " requires a value");
        const std::string value = args[++i];
        if (flag == "--preset")
            preset_name = value;
        else if (flag == "--config")
            config_path = value;
        else
            overrides.emplace_back(flag, value);
    }

    if (preset_name) {
        const ScanRequest r = preset(*preset_name);
        cfg.drive = r.drive;
        cfg.decay = r.decay;
        cfg.medium = r.prefactor;
        cfg.delta = r.delta;
        cfg.x_lo = r.x_lo;
        cfg.x_hi = r.x_hi;
        cfg.x_count = r.x_count;
        cfg.delta_range = r.delta_range;
        cfg.have_params = true;
    }
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw UsageError("cannot read config file: " + *config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            apply_config_text(cfg, buf.str());
        } catch (const json::exception& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
    }

    for (const auto& [flag, value] : overrides) {
        if (flag == "--omega1")
            cfg.drive.omega1 = parse_number(value);
        else if (flag == "--omega2")
            cfg.drive.omega2 = parse_number(value);
        else if (flag == "--omega3")
            cfg.drive.omega3 = parse_number(value);
        else if (flag == "--phi")
            cfg.drive.phi = parse_number(value);
        else if (flag == "--theta2")
            cfg.drive.theta2 = parse_number(value);
        else if (flag == "--theta3")
            cfg.drive.theta3 = parse_number(value);
        else if (flag == "--gamma2")
            cfg.decay.gamma2 = parse_number(value);
        else if (flag == "--gamma-bc")
            cfg.decay.gamma_bc = parse_number(value);
        else if (flag == "--delta")
            cfg.delta = parse_number(value);
        else if (flag == "--x-count") {
            cfg.x_count = static_cast<int>(parse_int(value, 2, "--x-count"));
            cfg.x_count_explicit = true;
        } else if (flag == "--grid-n")
            cfg.grid_n = static_cast<int>(parse_int(value, 2, "--grid-n"));
        else if (flag == "--format") {
            if (value != "csv" && value != "json" && value != "svg")
                throw UsageError("invalid --format: '" + value + "'");
            cfg.format = value;
        } else if (flag == "--output")
            cfg.output = value;
        else if (flag == "--delta-range") {
            const size_t c1 = value.find(':');
            const size_t c2 = c1 == std::string::npos ? c1 : value.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw UsageError("invalid --delta-range (want LO:HI:N): '" + value + "'");
            DeltaRange dr;
            dr.lo = parse_number(value.substr(0, c1));
            dr.hi = parse_number(value.substr(c1 + 1, c2 - c1 - 1));
            dr.count = static_cast<int>(parse_int(value.substr(c2 + 1), 2, "--delta-range count"));
            cfg.delta_range = dr;
        }
        if (flag != "--x-count" && flag != "--grid-n" && flag != "--format" &&
            flag != "--output")
            cfg.have_params = true;
    }

    if (cfg.subcommand != "preset-list" && !cfg.have_params)
        throw UsageError("no parameters given: pass --preset, --config, or parameter flags");

    validate(cfg.drive);
    validate(cfg.decay);
    validate(cfg.medium);
    return cfg;
}

int run(const RunConfig& cfg) {
    try {
        OutputStream out(cfg.output);
        std::ostream& os = out.get();

        if (cfg.dump_config) {
            os << dump_config(cfg) << "\n";
            return 0;
        }
        if (cfg.subcommand == "preset-list") {
            for (const std::string& name : preset_names()) os << name << "\n";
            return 0;
        }
        if (cfg.subcommand == "profile") return run_profile(cfg, os);
        if (cfg.subcommand == "heatmap") return run_heatmap(cfg, os);
        if (cfg.subcommand == "peaks") return run_peaks(cfg, os, false);
        if (cfg.subcommand == "classify") return run_peaks(cfg, os, true);
        if (cfg.subcommand == "curves") return run_curves(cfg, os);
        if (cfg.subcommand == "verify") return run_verify(cfg, os);
        throw UsageError("unknown subcommand: '" + cfg.subcommand + "'");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedTable& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedPhase& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownPreset& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void emit_csv(const ProfileTable& table, std::ostream& os) {
    if (table.two_d) {
        os << "delta,kappa_x,chi_re,chi_im\n";
        for (const ProfileRow& r : table.rows)
            os << fmt17(r.delta) << "," << fmt17(r.kappa_x) << ","
               << fmt17(r.chi_re) << "," << fmt17(r.chi_im) << "\n";
    } else {
        os << "kappa_x,chi_re,chi_im\n";
        for (const ProfileRow& r : table.rows)
            os << fmt17(r.kappa_x) << "," << fmt17(r.chi_re) << ","
               << fmt17(r.chi_im) << "\n";
    }
}

std::string table_json(const ProfileTable& table) {
    const ScanRequest& rq = table.request;
    json meta;
    meta["version"] = table.version;
    meta["drive"] = drive_json(rq.drive);
    meta["decay"] = decay_json(rq.decay);
    meta["medium"] = {{"scale", rq.prefactor.scale}};
    meta["x_range"] = {rq.x_lo, rq.x_hi};
    meta["x_count"] = rq.x_count;
    meta["quantity"] = quantity_name(rq.quantity);
    if (table.two_d)
        meta["delta_range"] = {rq.delta_range->lo, rq.delta_range->hi,
                               rq.delta_range->count};
    else
        meta["probe"] = {{"delta", rq.delta}};

    json rows = json::array();
    for (const ProfileRow& r : table.rows) {
        json row;
        if (table.two_d) row["delta"] = r.delta;
        row["kappa_x"] = r.kappa_x;
        if (r.defined) {
            row["chi_re"] = r.chi_re;
            row["chi_im"] = r.chi_im;
        } else {
            row["chi_re"] = nullptr;
            row["chi_im"] = nullptr;
            row["defined"] = false;
        }
        rows.push_back(row);
    }
    return json{{"metadata", meta}, {"rows", rows}}.dump(2);
}

void emit_svg(const ProfileTable& table, std::ostream& os) {
    if (table.two_d) throw UnsupportedTable("svg output supports 1D profiles only");
    if (table.rows.empty()) throw UnsupportedTable("svg output needs a non-empty table");

    constexpr double width = 800, height = 480;
    constexpr double left = 64, right = 784, top = 40, bottom = 432;

    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const ProfileRow& r : table.rows) {
        if (!r.defined) continue;
        ymin = std::min(ymin, r.chi_im);
        ymax = std::max(ymax, r.chi_im);
    }
    if (!std::isfinite(ymin)) throw UnsupportedTable("svg output needs defined rows");
    double pad = 0.05 * (ymax - ymin);
    if (pad <= 0.0) pad = std::max(1e-9, 0.05 * std::max(1.0, std::abs(ymax)));
    ymin -= pad;
    ymax += pad;

    const double xlo = table.request.x_lo, xhi = table.request.x_hi;
    const auto map_x = [&](double x) {
        return left + (x - xlo) / (xhi - xlo) * (right - left);
    };
    const auto map_y = [&](double y) {
        return bottom - (y - ymin) / (ymax - ymin) * (bottom - top);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
       << height << "\">\n";

    const DriveConfig& d = table.request.drive;
    os << "  <text class=\"title\" x=\"" << left << "\" y=\"24\" font-size=\"13\">"
       << "chi'' vs kappa x | omega1=" << fmt(d.omega1) << " omega2=" << fmt(d.omega2)
       << " omega3=" << fmt(d.omega3) << " phi=" << fmt(d.phi)
       << " delta=" << fmt(table.request.delta)
       << " gamma2=" << fmt(table.request.decay.gamma2)
       << " gamma_bc=" << fmt(table.request.decay.gamma_bc)
       << " scale=" << fmt(table.request.prefactor.scale) << "</text>\n";

    os << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
       << "\" height=\"" << bottom - top
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    // x ticks at multiples of pi/2
    const int k_lo = static_cast<int>(std::ceil(xlo / (kPi / 2) - 1e-9));
    const int k_hi = static_cast<int>(std::floor(xhi / (kPi / 2) + 1e-9));
    for (int k = k_lo; k <= k_hi; ++k) {
        const double px = map_x(k * kPi / 2);
        os << "  <line x1=\"" << fmt(px, "%.2f") << "\" y1=\"" << bottom
           << "\" x2=\"" << fmt(px, "%.2f") << "\" y2=\"" << bottom + 6
           << "\" stroke=\"black\"/>\n";
        os << "  <text x=\"" << fmt(px, "%.2f") << "\" y=\"" << bottom + 20
           << "\" font-size=\"12\" text-anchor=\"middle\">" << pi_tick_label(k)
           << "</text>\n";
    }
    // y ticks
    for (int k = 0; k <= 4; ++k) {
        const double v = ymin + k * (ymax - ymin) / 4;
        const double py = map_y(v);
        os << "  <line x1=\"" << left - 6 << "\" y1=\"" << fmt(py, "%.2f")
           << "\" x2=\"" << left << "\" y2=\"" << fmt(py, "%.2f")
           << "\" stroke=\"black\"/>\n";
        os << "  <text x=\"" << left - 10 << "\" y=\"" << fmt(py + 4, "%.2f")
           << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(v, "%.3g")
           << "</text>\n";
    }

    if (xlo < 0.0 && xhi > 0.0) {
        const double px = map_x(0.0);
        os << "  <line class=\"x-zero-guide\" x1=\"" << fmt(px, "%.2f")
           << "\" y1=\"" << top << "\" x2=\"" << fmt(px, "%.2f") << "\" y2=\""
           << bottom << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }

    os << "  <polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const ProfileRow& r : table.rows) {
        if (!r.defined) continue;
        if (!first) os << " ";
        os << fmt(map_x(r.kappa_x), "%.2f") << "," << fmt(map_y(r.chi_im), "%.2f");
        first = false;
    }
    os << "\"/>\n</svg>\n";
}

std::string usage_text() {
    return
        "usage: swloc <subcommand> [flags]\n"
        "\n"
        "subcommands:\n"
        "  profile      chi profile along kappa_x (csv, json, or svg)\n"
        "  heatmap      2D (delta, kappa_x) scan (csv or json)\n"
        "  peaks        absorption peak positions, widths, classification\n"
        "  curves       peak-condition detuning branches for phi in {0, pi/2, pi}\n"
        "  classify     localization class only\n"
        "  verify       three-way solver cross-check at the given parameters\n"
        "  preset-list  list named parameter presets\n"
        "\n"
        "flags:\n"
        "  --preset NAME        named parameter set (see preset-list)\n"
        "  --config PATH        JSON config file (flags win over file values)\n"
        "  --omega1 X --omega2 X --omega3 X   drive Rabi amplitudes (units of gamma1)\n"
        "  --phi X              relative drive phase\n"
        "  --theta2 X --theta3 X              beam angles\n"
        "  --gamma2 X --gamma-bc X            decay/dephasing rates\n"
        "  --delta X            probe detuning\n"
        "  --x-count N          profile sample count\n"
        "  --delta-range LO:HI:N              detuning axis for heatmap\n"
        "  --grid-n N           peak-detection grid size (>= 256)\n"
        "  --format F           csv | json | svg\n"
        "  --output PATH        write to file instead of stdout\n"
        "  --dump-config        print the resolved config as JSON and exit\n"
        "\n"
        "numbers accept decimals and pi expressions: pi, pi/2, 3pi/4, -pi/2\n";
}

} // namespace swloc::cli

#include "fluxqed/sweep.hpp"

#include "fluxqed/fd_oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fluxqed {

namespace {

using nlohmann::json;

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        v[static_cast<std::size_t>(i)] =
            steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return v;
}

SweepAxis axis_from_config(const Config& cfg, const std::string& name) {
    SweepAxis axis;
    axis.name = name;
    const bool has_list = cfg.has(name + "_values");
    const bool has_range = cfg.has(name + "_steps") || cfg.has(name + "_min") || cfg.has(name + "_max");
    if (has_list && has_range) {
        throw ConfigError("axis '" + name + "' given both as a value list and as a range");
    }
    if (has_list) {
        axis.values = cfg.get_doubles(name + "_values");
        axis.active = true;
    } else if (has_range) {
        if (!cfg.has(name + "_min") || !cfg.has(name + "_max") || !cfg.has(name + "_steps")) {
            throw ConfigError("axis '" + name + "' needs _min, _max and _steps together");
        }
        const int steps = cfg.get_int(name + "_steps", 0);
        if (steps < 2) {
            throw ConfigError("axis '" + name + "' needs at least 2 steps");
        }
        axis.values = linspace(cfg.get_double(name + "_min", 1.0), cfg.get_double(name + "_max", 1.0),
                               steps);
        axis.active = true;
    } else {
        axis.values = {cfg.get_double(name, 1.0)};
    }
    return axis;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

// =============================================================================
// Configuration mapping
// =============================================================================

double PhysicalParams::omega0() const {
    return 2.0 * std::numbers::pi * f0_GHz * 1e9;
}

double PhysicalParams::omega_a_ratio() const {
    return fa_GHz / f0_GHz;
}

PhysicalParams physical_from_config(const Config& cfg) {
    PhysicalParams p;
    p.length_L = cfg.get_double("length_L", p.length_L);
    p.w0 = cfg.get_double("w0", p.w0);
    p.d0 = cfg.get_double("d0", p.d0);
    p.impedance_Z = cfg.get_double("Z_ohm", p.impedance_Z);
    p.f0_GHz = cfg.get_double("f0_GHz", p.f0_GHz);
    p.fa_GHz = cfg.get_double("fa_GHz", p.fa_GHz);
    p.strong_threshold = cfg.get_double("strong_threshold", p.strong_threshold);
    if (!(p.length_L > 0.0) || !(p.w0 > 0.0) || !(p.d0 > 0.0)) {
        throw ConfigError("length_L, w0 and d0 must be positive");
    }
    if (!(p.impedance_Z > 0.0) || !(p.f0_GHz > 0.0) || !(p.fa_GHz >= 0.0)) {
        throw ConfigError("Z_ohm and f0_GHz must be positive, fa_GHz non-negative");
    }
    return p;
}

NumericParams numerics_from_config(const Config& cfg) {
    NumericParams n;
    n.solver.scan_samples = cfg.get_int("scan_samples", n.solver.scan_samples);
    n.solver.relative_tolerance = cfg.get_double("relative_tolerance", n.solver.relative_tolerance);
    n.profile_points = cfg.get_int("profile_points", n.profile_points);
    n.grid_points = cfg.get_int("grid_points", n.grid_points);
    n.workers = cfg.get_int("workers", n.workers);
    if (n.solver.scan_samples < 16) {
        throw ConfigError("scan_samples must be at least 16");
    }
    if (!(n.solver.relative_tolerance > 0.0)) {
        throw ConfigError("relative_tolerance must be positive");
    }
    if (n.profile_points < 2) {
        throw ConfigError("profile_points must be at least 2");
    }
    return n;
}

PointConfig point_from_config(const Config& cfg) {
    PointConfig p;
    p.w_over_w0 = cfg.get_double("w_over_w0", p.w_over_w0);
    p.d0_over_d = cfg.get_double("d0_over_d", p.d0_over_d);
    p.N = cfg.get_int("N", p.N);
    p.harmonic = cfg.get_int("harmonic", p.harmonic);
    p.phys = physical_from_config(cfg);
    p.numerics = numerics_from_config(cfg);
    p.config_hash = cfg.hash();
    if (p.N < 1) {
        throw ConfigError("N must be at least 1");
    }
    if (!(p.w_over_w0 > 0.0) || !(p.d0_over_d > 0.0)) {
        throw ConfigError("w_over_w0 and d0_over_d must be positive");
    }
    if (p.harmonic < 0) {
        throw ConfigError("harmonic must be non-negative (0 selects N+1)");
    }
    if (cfg.has("switches")) {
        const std::vector<int> sw = cfg.get_ints("switches");
        if (static_cast<int>(sw.size()) != p.N) {
            throw ConfigError("switches lists " + std::to_string(sw.size()) + " entries for N = " +
                              std::to_string(p.N));
        }
        for (const int s : sw) {
            if (s != 0 && s != 1) {
                throw ConfigError("switches entries must be 0 or 1");
            }
            p.switches.push_back(s == 1);
        }
    }
    return p;
}

SectorLayout layout_for(const PointConfig& point) {
    const DeviceGeometry geom = DeviceGeometry::from_ratios(
        point.w_over_w0, point.d0_over_d, point.N, point.phys.w0_over_L(), point.phys.length_L);
    SectorLayout layout = build_layout(geom);
    for (std::size_t i = 0; i < point.switches.size(); ++i) {
        layout = set_switch(layout, static_cast<int>(i), point.switches[i]);
    }
    return layout;
}

// =============================================================================
// run_point
// =============================================================================

PointReport run_point(const PointConfig& point, bool two_qubit) {
    PointReport report;
    report.config = point;
    report.mode = find_mode(layout_for(point), point.harmonic, point.numerics.solver);
    const double omega_a = point.phys.omega_a_ratio();
    for (int site = 0; site < report.mode.layout.qubit_count(); ++site) {
        report.couplings.push_back(couple_site(report.mode, site, point.phys.impedance_Z,
                                               point.phys.omega0(), omega_a,
                                               point.phys.strong_threshold));
    }
    if (two_qubit) {
        std::vector<const CouplingResult*> active;
        for (const auto& c : report.couplings) {
            if (c.switched_on) {
                active.push_back(&c);
            }
        }
        if (active.size() != 2) {
            throw UnsupportedQubits("two-qubit analysis needs exactly two switched-on qubits, found " +
                                    std::to_string(active.size()));
        }
        const double Delta = omega_a - report.mode.omega_r_over_omega0;
        two_qubit_block(Delta, active[0]->g_over_hbar_omega0, Delta, active[1]->g_over_hbar_omega0);
        report.two_qubit = analyze_two_qubit(Delta, active[0]->g_over_hbar_omega0);
    }
    return report;
}

json mode_to_json(const ModeSolution& mode, int profile_points) {
    json j;
    j["harmonic"] = mode.harmonic;
    j["parity"] = to_string(mode.parity);
    j["j1"] = mode.j1;
    j["j2"] = mode.j2;
    j["omega_r_over_omega0"] = mode.omega_r_over_omega0;
    j["mu"] = mode.mu;
    j["kappa"] = mode.kappa;
    j["gaps"] = mode.gaps_delta;
    j["singular_value_ratio"] = mode.singular_value_ratio;
    j["warnings"] = mode.warnings;
    const std::vector<double> values = sample_profile(mode, profile_points);
    std::vector<double> xs(values.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = std::clamp(-0.5 + static_cast<double>(i) / static_cast<double>(xs.size() - 1), -0.5, 0.5);
    }
    j["profile"] = {{"points", profile_points}, {"x", xs}, {"X", values}};
    return j;
}

json report_to_json(const PointReport& report) {
    const PointConfig& p = report.config;
    json j;
    j["config_hash"] = p.config_hash;
    j["geometry"] = {{"w_over_w0", p.w_over_w0},
                     {"d0_over_d", p.d0_over_d},
                     {"N", p.N},
                     {"w0_over_L", p.phys.w0_over_L()},
                     {"length_L", p.phys.length_L},
                     {"density_ratio", report.mode.layout.loaded_ratio}};
    j["mode"] = mode_to_json(report.mode, p.numerics.profile_points);
    json couplings = json::array();
    for (const auto& c : report.couplings) {
        couplings.push_back({{"site", c.site},
                             {"switched_on", c.switched_on},
                             {"delta", c.delta},
                             {"bias_current_I0_A", c.bias_current_I0},
                             {"g_over_hbar_omega0", c.g_over_hbar_omega0},
                             {"chi_over_omega0", number_or_null(c.chi_over_omega0)},
                             {"regime", to_string(c.regime)}});
    }
    j["couplings"] = couplings;
    if (report.two_qubit) {
        const TwoQubitResult& t = *report.two_qubit;
        j["two_qubit"] = {{"Delta_over_omega0", t.Delta},
                          {"g_over_hbar_omega0", t.g},
                          {"phi", t.phi},
                          {"J_over_hbar_omega0", t.J},
                          {"sign_label", to_string(t.sign)},
                          {"regime", to_string(t.regime)}};
    }
    return j;
}

// =============================================================================
// Sweeps
// =============================================================================

void SweepSpec::validate() const {
    if (!axis1.active && !axis2.active) {
        throw ConfigError("sweep needs at least one active axis");
    }
    if (diagonal && !axis1.active) {
        throw ConfigError("diagonal sweep needs an active w_over_w0 axis");
    }
    if (diagonal && axis2.active) {
        throw ConfigError("diagonal sweep derives d0_over_d; drop the d0_over_d axis");
    }
    for (const SweepAxis* axis : {&axis1, &axis2}) {
        if (axis->active && axis->values.size() < 2) {
            throw ConfigError("axis '" + axis->name + "' needs at least 2 values");
        }
        if (diagonal && axis == &axis2) {
            continue;
        }
        for (const double v : axis->values) {
            if (!(v >= 1.0)) {
                throw ConfigError("axis '" + axis->name + "' values must be >= 1");
            }
        }
    }
    if (qubit_counts.empty()) {
        throw ConfigError("qubit_counts is empty");
    }
    for (const int n : qubit_counts) {
        if (n < 1) {
            throw ConfigError("qubit counts must be at least 1");
        }
        if (two_qubit && n != 2) {
            throw ConfigError("two-qubit sweeps need N = 2");
        }
    }
}

std::size_t SweepSpec::point_count() const {
    std::size_t count = qubit_counts.size();
    if (axis1.active) {
        count *= axis1.values.size();
    }
    if (axis2.active && !diagonal) {
        count *= axis2.values.size();
    }
    return count;
}

SweepSpec sweep_from_config(const Config& cfg) {
    if (cfg.has("switches")) {
        throw ConfigError("switches apply to single-point runs only");
    }
    SweepSpec spec;
    spec.axis1 = axis_from_config(cfg, "w_over_w0");
    spec.axis2 = axis_from_config(cfg, "d0_over_d");
    spec.diagonal = cfg.get_bool("diagonal", false);
    spec.qubit_counts = cfg.has("qubit_counts") ? cfg.get_ints("qubit_counts")
                                                : std::vector<int>{cfg.get_int("N", 1)};
    spec.phys = physical_from_config(cfg);
    spec.numerics = numerics_from_config(cfg);
    spec.two_qubit = cfg.get_bool("two_qubit", false);
    spec.harmonic = cfg.get_int("harmonic", 0);
    spec.config_hash = cfg.hash();
    spec.validate();
    return spec;
}

std::vector<GridPoint> enumerate_grid(const SweepSpec& spec) {
    std::vector<GridPoint> grid;
    grid.reserve(spec.point_count());
    const std::vector<double> none{0.0};
    for (const int n : spec.qubit_counts) {
        for (const double a : spec.axis1.values) {
            const std::vector<double>& second = spec.diagonal ? none : spec.axis2.values;
            for (const double b : second) {
                GridPoint p;
                p.index = grid.size();
                p.w_over_w0 = a;
                p.d0_over_d = spec.diagonal ? 0.5 * a : b;
                p.N = n;
                grid.push_back(p);
            }
        }
    }
    return grid;
}

SweepRow row_from_report(const PointReport& report) {
    SweepRow row;
    row.w_over_w0 = report.config.w_over_w0;
    row.d0_over_d = report.config.d0_over_d;
    row.N = report.config.N;
    row.j1 = report.mode.j1;
    row.omega_r_over_omega0 = report.mode.omega_r_over_omega0;
    row.deltas = report.mode.gaps_delta;
    row.delta_over_sqrt2 = report.couplings.at(0).delta / std::numbers::sqrt2;
    row.g_over_hbar_omega0 = report.couplings.at(0).g_over_hbar_omega0;
    if (report.two_qubit) {
        row.Delta_over_omega0 = report.two_qubit->Delta;
        row.J_over_hbar_omega0 = report.two_qubit->J;
        row.sign_label = to_string(report.two_qubit->sign);
    }
    return row;
}

PointOutcome evaluate_point(const GridPoint& point, const SweepSpec& spec) {
    PointConfig config;
    config.w_over_w0 = point.w_over_w0;
    config.d0_over_d = point.d0_over_d;
    config.N = point.N;
    config.harmonic = spec.harmonic;
    config.phys = spec.phys;
    config.numerics = spec.numerics;
    // Grid points already run concurrently; keep each scan serial.
    config.numerics.solver.parallel_scan = false;
    config.config_hash = spec.config_hash;
    try {
        return row_from_report(run_point(config, spec.two_qubit));
    } catch (const std::exception& e) {
        return SweepFailure{point.index, point.w_over_w0, point.d0_over_d, point.N, e.what()};
    }
}

std::vector<PointOutcome> evaluate_grid_serial(const SweepSpec& spec,
                                               const std::vector<GridPoint>& grid) {
    std::vector<PointOutcome> out;
    out.reserve(grid.size());
    for (const GridPoint& p : grid) {
        out.push_back(evaluate_point(p, spec));
    }
    return out;
}

std::vector<PointOutcome> evaluate_grid_omp(const SweepSpec& spec,
                                            const std::vector<GridPoint>& grid, int workers) {
    std::vector<PointOutcome> out(grid.size());
    const long n = static_cast<long>(grid.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = evaluate_point(grid[static_cast<std::size_t>(i)], spec);
    }
    return out;
}

SweepTable assemble_table(const SweepSpec& spec, std::vector<PointOutcome> outcomes) {
    SweepTable table;
    table.kind = spec.two_qubit ? TableKind::two_qubit : TableKind::coupling;
    table.metadata.config_hash = spec.config_hash;
    table.metadata.relative_tolerance = spec.numerics.solver.relative_tolerance;
    table.metadata.scan_samples = spec.numerics.solver.scan_samples;
    table.metadata.timestamp = utc_timestamp();
    for (auto& outcome : outcomes) {
        if (auto* row = std::get_if<SweepRow>(&outcome)) {
            table.rows.push_back(std::move(*row));
        } else {
            table.failures.push_back(std::move(std::get<SweepFailure>(outcome)));
        }
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (!table.argmax_g || table.rows[i].g_over_hbar_omega0 >
                                   table.rows[*table.argmax_g].g_over_hbar_omega0) {
            table.argmax_g = i;
        }
        if (spec.two_qubit &&
            (!table.argmax_J || std::abs(table.rows[i].J_over_hbar_omega0) >
                                    std::abs(table.rows[*table.argmax_J].J_over_hbar_omega0))) {
            table.argmax_J = i;
        }
    }
    return table;
}

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    return assemble_table(spec, evaluate_grid_omp(spec, enumerate_grid(spec), spec.numerics.workers));
}

SweepTable run_sweep_serial(const SweepSpec& spec) {
    spec.validate();
    return assemble_table(spec, evaluate_grid_serial(spec, enumerate_grid(spec)));
}

// =============================================================================
// Export
// =============================================================================

std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

const char* csv_header(TableKind kind) {
    return kind == TableKind::coupling
               ? "w_over_w0,d0_over_d,N,j1,omega_r_over_omega0,delta_over_sqrt2,g_over_hbar_omega0"
               : "w_over_w0,d0_over_d,omega_r_over_omega0,Delta_over_omega0,g_over_hbar_omega0,"
                 "J_over_hbar_omega0,sign_label";
}

void export_csv(const SweepTable& table, std::ostream& os) {
    os << csv_header(table.kind) << '\n';
    for (const SweepRow& r : table.rows) {
        if (table.kind == TableKind::coupling) {
            os << format_number(r.w_over_w0) << ',' << format_number(r.d0_over_d) << ',' << r.N
               << ',' << format_number(r.j1) << ',' << format_number(r.omega_r_over_omega0) << ','
               << format_number(r.delta_over_sqrt2) << ',' << format_number(r.g_over_hbar_omega0)
               << '\n';
        } else {
            os << format_number(r.w_over_w0) << ',' << format_number(r.d0_over_d) << ','
               << format_number(r.omega_r_over_omega0) << ',' << format_number(r.Delta_over_omega0)
               << ',' << format_number(r.g_over_hbar_omega0) << ','
               << format_number(r.J_over_hbar_omega0) << ',' << r.sign_label << '\n';
        }
    }
}

json export_json(const SweepTable& table) {
    json rows = json::array();
    for (const SweepRow& r : table.rows) {
        rows.push_back({{"w_over_w0", r.w_over_w0},
                        {"d0_over_d", r.d0_over_d},
                        {"N", r.N},
                        {"j1", r.j1},
                        {"omega_r_over_omega0", r.omega_r_over_omega0},
                        {"deltas", r.deltas},
                        {"delta_over_sqrt2", r.delta_over_sqrt2},
                        {"g_over_hbar_omega0", r.g_over_hbar_omega0},
                        {"Delta_over_omega0", r.Delta_over_omega0},
                        {"J_over_hbar_omega0", r.J_over_hbar_omega0},
                        {"sign_label", r.sign_label}});
    }
    json failures = json::array();
    for (const SweepFailure& f : table.failures) {
        failures.push_back({{"index", f.index},
                            {"w_over_w0", f.w_over_w0},
                            {"d0_over_d", f.d0_over_d},
                            {"N", f.N},
                            {"message", f.message}});
    }
    json j;
    j["kind"] = table.kind == TableKind::coupling ? "coupling" : "two_qubit";
    j["metadata"] = {{"config_hash", table.metadata.config_hash},
                     {"relative_tolerance", table.metadata.relative_tolerance},
                     {"scan_samples", table.metadata.scan_samples},
                     {"timestamp", table.metadata.timestamp}};
    j["rows"] = rows;
    j["failures"] = failures;
    j["argmax_g"] = table.argmax_g ? json(*table.argmax_g) : json(nullptr);
    j["argmax_J"] = table.argmax_J ? json(*table.argmax_J) : json(nullptr);
    return j;
}

SweepTable table_from_json(const json& j) {
    SweepTable table;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "coupling" && kind != "two_qubit") {
        throw std::invalid_argument("unknown table kind '" + kind + "'");
    }
    table.kind = kind == "coupling" ? TableKind::coupling : TableKind::two_qubit;
    const json& m = j.at("metadata");
    table.metadata.config_hash = m.at("config_hash").get<std::string>();
    table.metadata.relative_tolerance = m.at("relative_tolerance").get<double>();
    table.metadata.scan_samples = m.at("scan_samples").get<int>();
    table.metadata.timestamp = m.at("timestamp").get<std::string>();
    for (const json& r : j.at("rows")) {
        SweepRow row;
        row.w_over_w0 = r.at("w_over_w0").get<double>();
        row.d0_over_d = r.at("d0_over_d").get<double>();
        row.N = r.at("N").get<int>();
        row.j1 = r.at("j1").get<double>();
        row.omega_r_over_omega0 = r.at("omega_r_over_omega0").get<double>();
        row.deltas = r.at("deltas").get<std::vector<double>>();
        row.delta_over_sqrt2 = r.at("delta_over_sqrt2").get<double>();
        row.g_over_hbar_omega0 = r.at("g_over_hbar_omega0").get<double>();
        row.Delta_over_omega0 = r.at("Delta_over_omega0").get<double>();
        row.J_over_hbar_omega0 = r.at("J_over_hbar_omega0").get<double>();
        row.sign_label = r.at("sign_label").get<std::string>();
        table.rows.push_back(std::move(row));
    }
    for (const json& f : j.at("failures")) {
        table.failures.push_back(SweepFailure{f.at("index").get<std::size_t>(),
                                              f.at("w_over_w0").get<double>(),
                                              f.at("d0_over_d").get<double>(), f.at("N").get<int>(),
                                              f.at("message").get<std::string>()});
    }
    if (!j.at("argmax_g").is_null()) {
        table.argmax_g = j.at("argmax_g").get<std::size_t>();
    }
    if (!j.at("argmax_J").is_null()) {
        table.argmax_J = j.at("argmax_J").get<std::size_t>();
    }
    return table;
}

void export_table(const SweepTable& table, const std::string& format, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    if (format == "csv") {
        export_csv(table, out);
    } else if (format == "json") {
        out << export_json(table).dump(2) << '\n';
    } else {
        throw std::invalid_argument("unknown export format '" + format + "'");
    }
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

// =============================================================================
// Oracle comparison
// =============================================================================

OracleReport run_oracle_check(const PointConfig& point, int grid_points) {
    if (grid_points < 4001 || (grid_points - 1) % 4 != 0) {
        throw ConfigError("grid_points must be 4k+1 with at least 4001 points");
    }
    const ModeSolution mode = find_mode(layout_for(point), point.harmonic, point.numerics.solver);
    const SectorLayout& layout = mode.layout;

    OracleReport report;
    report.grid_points = grid_points;
    report.mode_index = mode.harmonic - 1;
    const int count = report.mode_index + 1;

    const FdGrid coarse = make_grid(layout, (grid_points - 1) / 4 + 1);
    const FdGrid middle = refine(coarse);
    const FdGrid fine = refine(middle);
    const FdGrid* levels[3] = {&coarse, &middle, &fine};
    FdMode fine_mode;
    for (int level = 0; level < 3; ++level) {
        std::vector<FdMode> modes = fd_modes(*levels[level], count);
        report.refinement_points[static_cast<std::size_t>(level)] = levels[level]->points();
        report.refinement_eigenvalues[static_cast<std::size_t>(level)] =
            modes[static_cast<std::size_t>(report.mode_index)].eigenvalue;
        if (level == 2) {
            fine_mode = std::move(modes[static_cast<std::size_t>(report.mode_index)]);
        }
    }
    const auto& lam = report.refinement_eigenvalues;
    const double d01 = std::abs(lam[0] - lam[1]);
    const double d12 = std::abs(lam[1] - lam[2]);
    report.observed_order = d12 > 0.0 ? std::log2(d01 / d12) : std::numeric_limits<double>::quiet_NaN();

    report.omega_analytic = mode.omega_r_over_omega0;
    report.omega_fd = fine_mode.omega_over_omega0;
    report.omega_rel_error = std::abs(report.omega_fd - report.omega_analytic) / report.omega_analytic;
    for (int site = 0; site < layout.qubit_count(); ++site) {
        const double da = mode.gaps_delta[static_cast<std::size_t>(site)];
        const double df = fd_gap(fine_mode, fine, layout, site);
        report.delta_analytic.push_back(da);
        report.delta_fd.push_back(df);
        const double err = std::abs(df - da) / da;
        report.delta_rel_error.push_back(err);
        report.max_delta_rel_error = std::max(report.max_delta_rel_error, err);
    }
    report.pass = report.omega_rel_error < report.omega_tolerance &&
                  report.max_delta_rel_error < report.delta_tolerance;
    return report;
}

json oracle_to_json(const OracleReport& r) {
    return {{"grid_points", r.grid_points},
            {"mode_index", r.mode_index},
            {"omega_analytic", r.omega_analytic},
            {"omega_fd", r.omega_fd},
            {"omega_rel_error", r.omega_rel_error},
            {"delta_analytic", r.delta_analytic},
            {"delta_fd", r.delta_fd},
            {"delta_rel_error", r.delta_rel_error},
            {"max_delta_rel_error", r.max_delta_rel_error},
            {"omega_tolerance", r.omega_tolerance},
            {"delta_tolerance", r.delta_tolerance},
            {"pass", r.pass},
            {"refinement_points", r.refinement_points},
            {"refinement_eigenvalues", r.refinement_eigenvalues},
            {"observed_order", number_or_null(r.observed_order)}};
}

}  // namespace fluxqed

// fluxqed command-line front end.
//
//   fluxqed modes    --config gap_growth.cfg --set w_over_w0=20
//   fluxqed sweep    --config coupling_plane.cfg --format csv --out coupling_plane.csv
//   fluxqed twoqubit --config two_qubit_plane.cfg --set w_over_w0=38 --set d0_over_d=19
//   fluxqed oracle   --config uniform.cfg --grid-points 131073
//
// Exit codes: 0 success, 2 sweep with failed points, 3 config error,
// 4 solver error, 1 anything else (I/O).

#include "fluxqed/fd_oracle.hpp"
#include "fluxqed/sweep.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fluxqed;

constexpr int kExitPartial = 2;
constexpr int kExitConfig = 3;
constexpr int kExitSolver = 4;

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format = "json";
    int workers = -1;
    int grid_points = -1;
    int mode_index = -1;
};

Config load_config(const Options& opt) {
    Config cfg = opt.config_path.empty() ? Config{} : Config::load(opt.config_path);
    for (const auto& o : opt.overrides) {
        cfg.apply_override(o);
    }
    if (opt.workers >= 0) {
        cfg.set("workers", std::to_string(opt.workers));
    }
    if (opt.grid_points >= 0) {
        cfg.set("grid_points", std::to_string(opt.grid_points));
    }
    return cfg;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write '" + opt.out_path + "'");
    }
}

void print_warnings(const ModeSolution& mode) {
    for (const auto& w : mode.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

SweepTable single_row_table(const PointReport& report, TableKind kind) {
    SweepTable table;
    table.kind = kind;
    table.rows.push_back(row_from_report(report));
    table.argmax_g = 0;
    if (kind == TableKind::two_qubit) {
        table.argmax_J = 0;
    }
    table.metadata.config_hash = report.config.config_hash;
    table.metadata.relative_tolerance = report.config.numerics.solver.relative_tolerance;
    table.metadata.scan_samples = report.config.numerics.solver.scan_samples;
    return table;
}

int cmd_point(const Options& opt, bool two_qubit) {
    const PointConfig point = point_from_config(load_config(opt));
    const PointReport report = run_point(point, two_qubit);
    print_warnings(report.mode);
    if (opt.format == "csv") {
        std::ostringstream os;
        export_csv(single_row_table(report, two_qubit ? TableKind::two_qubit : TableKind::coupling), os);
        emit(opt, os.str());
    } else {
        emit(opt, report_to_json(report).dump(2) + "\n");
    }
    return 0;
}

int cmd_sweep(const Options& opt) {
    const SweepSpec spec = sweep_from_config(load_config(opt));
    const SweepTable table = run_sweep(spec);
    if (opt.format == "csv") {
        std::ostringstream os;
        export_csv(table, os);
        emit(opt, os.str());
    } else {
        emit(opt, export_json(table).dump(2) + "\n");
    }
    for (const auto& f : table.failures) {
        std::cerr << "point " << f.index << " (w/w0=" << f.w_over_w0 << ", d0/d=" << f.d0_over_d
                  << ", N=" << f.N << ") failed: " << f.message << '\n';
    }
    return table.failures.empty() ? 0 : kExitPartial;
}

int cmd_oracle(const Options& opt) {
    const Config cfg = load_config(opt);
    const PointConfig point = point_from_config(cfg);
    const int grid_points = point.numerics.grid_points;
    if (opt.format == "csv") {
        // Profile dump of one oracle eigenmode on the finest comparison grid.
        const SectorLayout layout = layout_for(point);
        const int harmonic = point.harmonic > 0 ? point.harmonic : point.N + 1;
        const int index = opt.mode_index >= 0 ? opt.mode_index : harmonic - 1;
        if (grid_points < 4001 || (grid_points - 1) % 4 != 0) {
            throw ConfigError("grid_points must be 4k+1 with at least 4001 points");
        }
        const FdGrid grid = refine(refine(make_grid(layout, (grid_points - 1) / 4 + 1)));
        const std::vector<FdMode> modes = fd_modes(grid, index + 1);
        std::ostringstream os;
        write_profile_csv(os, grid, modes[static_cast<std::size_t>(index)]);
        emit(opt, os.str());
        return 0;
    }
    const OracleReport report = run_oracle_check(point, grid_points);
    emit(opt, oracle_to_json(report).dump(2) + "\n");
    std::cerr << "oracle " << (report.pass ? "PASS" : "FAIL") << ": omega rel error "
              << report.omega_rel_error << ", max delta rel error " << report.max_delta_rel_error
              << ", observed order " << report.observed_order << '\n';
    return 0;
}

void report_solver_error(const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    const ScanTrace& t = e.trace();
    std::cerr << "  scan window [" << t.lower << ", " << t.upper << "], " << t.samples.size()
              << " samples\n";
    if (!t.samples.empty()) {
        const auto best = std::min_element(t.samples.begin(), t.samples.end(), [](auto& a, auto& b) {
            return std::abs(a.second) < std::abs(b.second);
        });
        std::cerr << "  smallest |det| " << std::abs(best->second) << " at j1 = " << best->first
                  << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modes, couplings and two-qubit interactions of a flux-qubit loaded resonator"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Flat key = value config file");
        sub->add_option("--set", opt.overrides, "Override a config entry, key=value (repeatable)");
        sub->add_option("--out", opt.out_path, "Output path (default stdout)");
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", opt.workers, "Concurrent grid points (0: OpenMP default)")
            ->check(CLI::NonNegativeNumber);
    };
    CLI::App* modes = app.add_subcommand("modes", "Solve one geometry: mode, gaps, couplings");
    CLI::App* sweep = app.add_subcommand("sweep", "Grid or diagonal sweep over (w/w0, d0/d, N)");
    CLI::App* twoqubit = app.add_subcommand("twoqubit", "Exact two-qubit xy coupling at one point");
    CLI::App* oracle = app.add_subcommand("oracle", "Compare against the finite-difference oracle");
    for (CLI::App* sub : {modes, sweep, twoqubit, oracle}) {
        add_common(sub);
    }
    oracle->add_option("--grid-points", opt.grid_points, "Finest oracle grid size (4k+1)");
    oracle->add_option("--mode-index", opt.mode_index,
                       "Zero-based eigenmode for the csv profile dump (default harmonic-1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*modes) {
            return cmd_point(opt, false);
        }
        if (*twoqubit) {
            return cmd_point(opt, true);
        }
        if (*sweep) {
            return cmd_sweep(opt);
        }
        return cmd_oracle(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        // InvalidGeometry, UnsupportedLayout, UnsupportedQubits.
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        report_solver_error(e);
        return kExitSolver;
    } catch (const FdError& e) {
        std::cerr << "oracle error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

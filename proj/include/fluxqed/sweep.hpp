#pragma once

// =============================================================================
// fluxqed - Single-point reports, design-space sweeps and oracle checks
// =============================================================================

#include "fluxqed/config.hpp"
#include "fluxqed/coupling.hpp"
#include "fluxqed/mode_solver.hpp"
#include "fluxqed/two_qubit.hpp"

#include "json.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fluxqed {

struct PhysicalParams {
    double length_L = 10e-3;  // m
    double w0 = 1e-6;         // m
    double d0 = 1e-6;         // m
    double impedance_Z = 50.0;
    double f0_GHz = 6.0;      // omega_r0 / 2 pi
    double fa_GHz = 2.0;      // omega_a / 2 pi
    double strong_threshold = 1e-3;  // g / hbar omega_r0 marking "strong"

    double omega0() const;           // rad/s
    double omega_a_ratio() const;    // omega_a / omega_r0
    double w0_over_L() const { return w0 / length_L; }
};

struct NumericParams {
    SolverOptions solver;
    int profile_points = 4001;
    int grid_points = 131073;
    int workers = 0;  // 0: OpenMP default
};

struct PointConfig {
    double w_over_w0 = 1.0;
    double d0_over_d = 1.0;
    int N = 1;
    int harmonic = 0;  // 0 selects N+1
    std::vector<bool> switches;  // empty: all on
    PhysicalParams phys;
    NumericParams numerics;
    std::string config_hash;
};

PhysicalParams physical_from_config(const Config& cfg);
NumericParams numerics_from_config(const Config& cfg);
/// Throws ConfigError for missing or inconsistent keys.
PointConfig point_from_config(const Config& cfg);
/// Throws InvalidGeometry for an infeasible layout.
SectorLayout layout_for(const PointConfig& point);

// -----------------------------------------------------------------------------
// run_point
// -----------------------------------------------------------------------------

struct PointReport {
    PointConfig config;
    ModeSolution mode;
    std::vector<CouplingResult> couplings;
    std::optional<TwoQubitResult> two_qubit;
};

/// Solves the mode and derives couplings. With two_qubit set, exactly two
/// sites must be switched on (UnsupportedQubits otherwise).
PointReport run_point(const PointConfig& point, bool two_qubit = false);

nlohmann::json mode_to_json(const ModeSolution& mode, int profile_points);
nlohmann::json report_to_json(const PointReport& report);

// -----------------------------------------------------------------------------
// Sweeps
// -----------------------------------------------------------------------------

struct SweepAxis {
    std::string name;
    std::vector<double> values;
    bool active = false;
};

struct SweepSpec {
    SweepAxis axis1{"w_over_w0", {}, false};
    SweepAxis axis2{"d0_over_d", {}, false};
    bool diagonal = false;  // d0/d = (w/w0) / 2, axis2 ignored
    std::vector<int> qubit_counts{1};
    PhysicalParams phys;
    NumericParams numerics;
    bool two_qubit = false;
    int harmonic = 0;
    std::string config_hash;

    /// Throws ConfigError when an invariant fails.
    void validate() const;
    std::size_t point_count() const;
};

/// Axis values come from *_values lists or from *_min/*_max/*_steps.
SweepSpec sweep_from_config(const Config& cfg);

struct GridPoint {
    std::size_t index = 0;
    double w_over_w0 = 1.0;
    double d0_over_d = 1.0;
    int N = 1;
};

/// Order: qubit count, then axis1, then axis2.
std::vector<GridPoint> enumerate_grid(const SweepSpec& spec);

enum class TableKind { coupling, two_qubit };

struct SweepRow {
    double w_over_w0 = 0.0;
    double d0_over_d = 0.0;
    int N = 1;
    double j1 = 0.0;
    double omega_r_over_omega0 = 0.0;
    std::vector<double> deltas;
    double delta_over_sqrt2 = 0.0;
    double g_over_hbar_omega0 = 0.0;
    double Delta_over_omega0 = 0.0;
    double J_over_hbar_omega0 = 0.0;
    std::string sign_label;

    bool operator==(const SweepRow&) const = default;
};

struct SweepFailure {
    std::size_t index = 0;
    double w_over_w0 = 0.0;
    double d0_over_d = 0.0;
    int N = 1;
    std::string message;

    bool operator==(const SweepFailure&) const = default;
};

struct SweepMetadata {
    std::string config_hash;
    double relative_tolerance = 0.0;
    int scan_samples = 0;
    std::string timestamp;

    bool operator==(const SweepMetadata&) const = default;
};

struct SweepTable {
    TableKind kind = TableKind::coupling;
    std::vector<SweepRow> rows;
    std::vector<SweepFailure> failures;
    std::optional<std::size_t> argmax_g;  // row index
    std::optional<std::size_t> argmax_J;  // row index of max |J|
    SweepMetadata metadata;

    bool operator==(const SweepTable&) const = default;
};

using PointOutcome = std::variant<SweepRow, SweepFailure>;

/// Table row for a solved point; site 0 supplies delta and g.
SweepRow row_from_report(const PointReport& report);

/// Pure per-point evaluation; never throws for solver or geometry failures.
PointOutcome evaluate_point(const GridPoint& point, const SweepSpec& spec);

std::vector<PointOutcome> evaluate_grid_serial(const SweepSpec& spec,
                                               const std::vector<GridPoint>& grid);
/// workers <= 0 uses the OpenMP default team size.
std::vector<PointOutcome> evaluate_grid_omp(const SweepSpec& spec,
                                            const std::vector<GridPoint>& grid, int workers);

SweepTable assemble_table(const SweepSpec& spec, std::vector<PointOutcome> outcomes);

SweepTable run_sweep(const SweepSpec& spec);
SweepTable run_sweep_serial(const SweepSpec& spec);

// -----------------------------------------------------------------------------
// Export
// -----------------------------------------------------------------------------

const char* csv_header(TableKind kind);
void export_csv(const SweepTable& table, std::ostream& os);
nlohmann::json export_json(const SweepTable& table);
SweepTable table_from_json(const nlohmann::json& j);

/// Writes csv or json to path; throws std::runtime_error on I/O failure.
void export_table(const SweepTable& table, const std::string& format, const std::string& path);

/// Shortest round-trip decimal form with '.' separator.
std::string format_number(double v);

// -----------------------------------------------------------------------------
// Oracle comparison
// -----------------------------------------------------------------------------

struct OracleReport {
    int grid_points = 0;
    int mode_index = 0;  // zero-based index of the oracle eigenmode
    double omega_analytic = 0.0;
    double omega_fd = 0.0;
    double omega_rel_error = 0.0;
    std::vector<double> delta_analytic;
    std::vector<double> delta_fd;
    std::vector<double> delta_rel_error;
    double max_delta_rel_error = 0.0;
    double omega_tolerance = 1e-3;
    double delta_tolerance = 1e-2;
    bool pass = false;
    std::array<int, 3> refinement_points{};
    std::array<double, 3> refinement_eigenvalues{};
    double observed_order = 0.0;
};

/// Compares find_mode against the finite-difference oracle on a grid of
/// grid_points nodes reached by two uniform refinements, and estimates the
/// convergence order from the three levels.
OracleReport run_oracle_check(const PointConfig& point, int grid_points);

nlohmann::json oracle_to_json(const OracleReport& report);

}  // namespace fluxqed

#pragma once

// =============================================================================
// fluxqed - Resonator geometry
// =============================================================================
// Design parameters of a coplanar resonator loaded by N current-biased flux
// qubits, and the piecewise capacitance-density layout derived from them.
// Positions inside a SectorLayout are stored in units of the resonator length
// L, so the line occupies [-1/2, 1/2].
// =============================================================================

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxqed {

// =============================================================================
// Physical constants (SI, exact 2019 values)
// =============================================================================

struct PhysicalConstants {
    static constexpr double planck_h = 6.62607015e-34;           // J s
    static constexpr double electron_charge_e = 1.602176634e-19;  // C
    static constexpr double hbar = planck_h / (2.0 * std::numbers::pi);
    static constexpr double flux_quantum_Phi0 = planck_h / (2.0 * electron_charge_e);
    /// Junction phase difference of a three-junction flux qubit at half flux.
    static constexpr double junction_phase_alpha = std::numbers::pi / 3.0;
};

class InvalidGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// =============================================================================
// Device geometry
// =============================================================================

/// Physical design parameters. Lengths in meters, impedance in ohms,
/// base_mode_freq is the angular frequency of the first harmonic of the
/// unloaded resonator (rad/s).
struct DeviceGeometry {
    double length_L = 10e-3;
    double qubit_loop_width_w0 = 1e-6;
    double ground_gap_d0 = 1e-6;
    double cap_line_width_w = 1e-6;
    double cap_line_gap_d = 1e-6;
    int qubit_count_N = 1;
    double impedance_Z = 50.0;
    double base_mode_freq = 2.0 * std::numbers::pi * 6e9;

    /// Parallel-plate ratio c'/c = (w d0) / (w0 d).
    double density_ratio() const {
        return (cap_line_width_w * ground_gap_d0) / (qubit_loop_width_w0 * cap_line_gap_d);
    }

    /// Throws InvalidGeometry when an invariant is violated.
    void validate() const;

    /// Geometry from the dimensionless design ratios used throughout the
    /// sweeps: w/w0, d0/d and w0/L.
    static DeviceGeometry from_ratios(double w_over_w0, double d0_over_d, int qubits,
                                      double w0_over_L = 1e-4, double length_L = 10e-3);
};

// =============================================================================
// Sector layout
// =============================================================================

struct Sector {
    double x_left = 0.0;    // units of L
    double x_right = 0.0;   // units of L
    double density_ratio = 1.0;  // c_i / c

    bool is_capacitance_line = false;

    double width() const { return x_right - x_left; }
};

struct QubitSite {
    double site_center = 0.0;  // units of L
    bool switched_on = true;
    std::size_t sector_index = 0;  // capacitance-line sector hosting the qubit
};

/// Piecewise layout over [-1/2, 1/2]. For N qubits there are 2N+3 sectors:
/// capacitance-line sectors (half width at both ends) alternate with bare
/// line sectors of width 1/(N+1) - w/L.
struct SectorLayout {
    std::vector<Sector> sectors;
    std::vector<QubitSite> qubit_sites;
    double length_L = 1.0;       // meters, for reattaching units
    double cap_line_width = 0.0; // w / L
    double loaded_ratio = 1.0;   // c'/c

    int qubit_count() const { return static_cast<int>(qubit_sites.size()); }
    std::size_t sector_count() const { return sectors.size(); }

    /// Index of the sector containing x (units of L). Points on an internal
    /// boundary resolve to the sector on the right.
    std::size_t locate(double x) const;

    /// Sum of sector widths; equals 1 up to rounding.
    double total_width() const;
    bool mirror_symmetric(double tol = 1e-12) const;
};

/// Throws InvalidGeometry if (N+1) w >= L or any parameter is non-positive.
SectorLayout build_layout(const DeviceGeometry& geom);

/// Returns a copy with the qubit at site_index switched on or off. The
/// capacitance line stays in place, so the resonator mode is unaffected.
SectorLayout set_switch(const SectorLayout& layout, int site_index, bool on);

}  // namespace fluxqed

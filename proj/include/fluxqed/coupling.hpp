#pragma once

// =============================================================================
// fluxqed - Qubit-resonator coupling
// =============================================================================
// Bias current, coupling constant and Jaynes-Cummings spectra. Unless stated
// otherwise energies and frequencies are in units of hbar * omega_r0.
// =============================================================================

#include "fluxqed/mode_solver.hpp"

#include <Eigen/Dense>

#include <array>

namespace fluxqed {

enum class CouplingRegime { weak, strong, ultrastrong };

const char* to_string(CouplingRegime r);

struct CouplingResult {
    int site = 0;
    bool switched_on = true;
    double delta = 0.0;
    double bias_current_I0 = 0.0;       // amperes
    double g_over_hbar_omega0 = 0.0;
    double chi_over_omega0 = 0.0;       // NaN when Delta = 0
    CouplingRegime regime = CouplingRegime::weak;
};

/// Line inductance per unit length, recovered from l = Z pi / (omega_r0 L).
struct PhysicalLine {
    double length_L = 10e-3;              // m
    double inductance_per_length = 0.0;   // H/m

    static PhysicalLine from_impedance(double impedance_Z, double omega0, double length_L);
};

/// I0 = sqrt(hbar omega_r / (L l)) * delta, omega_r in rad/s.
double bias_current_amplitude(double delta, double omega_r, const PhysicalLine& line);

/// Zero for a switched-off site.
double bias_current_amplitude(const ModeSolution& mode, int site, const PhysicalLine& line,
                              double omega0);

/// g / (hbar omega_r0) = (1/3) Phi0 / sqrt(h Z) * sqrt(omega_r / omega_r0) * delta / sqrt(2).
double coupling_g(double delta, double omega_ratio, double impedance_Z);

/// Zero for a switched-off site.
double coupling_g(const ModeSolution& mode, int site, double impedance_Z);

/// Same coupling through g = (Phi0 / 2pi) alpha I0, divided by hbar omega_r0.
double coupling_g_from_current(double bias_current_I0, double omega0);

/// Ultrastrong when g >= 0.1 omega_a, strong when g >= strong_threshold.
CouplingRegime classify_regime(double g, double omega_a, double strong_threshold);

/// Full per-site coupling summary. omega_a in units of omega_r0.
CouplingResult couple_site(const ModeSolution& mode, int site, double impedance_Z, double omega0,
                           double omega_a, double strong_threshold = 1e-3);

// -----------------------------------------------------------------------------
// Driven frame and Jaynes-Cummings blocks
// -----------------------------------------------------------------------------

struct DriveParams {
    double drive_amplitude_eps = 0.0;
    double drive_freq_omega_d = 0.0;
    double detuning_Delta_r = 0.0;  // omega_r - omega_d
    double detuning_Delta_a = 0.0;  // omega_a - omega_d
    double rabi_Omega_R = 0.0;

    static DriveParams make(double omega_r, double omega_a, double omega_d, double eps,
                            double rabi_Omega_R);
};

struct JcBlock {
    int n = 0;
    double Delta = 0.0;  // omega_a - omega_r
    double g = 0.0;
    Eigen::Matrix2cd matrix;
};

/// RWA block over {|n+1, down>, |n, up>} in the frame rotating at omega_r.
JcBlock jc_block(int n, double Delta, double g);

/// Same block in a driven frame:
/// [[(n+1) D_r - D_a/2, -i g sqrt(n+1)], [i g sqrt(n+1), n D_r + D_a/2]].
JcBlock jc_block(int n, const DriveParams& drive, double g);

/// Ascending eigenvalues from a generic Hermitian eigensolver.
std::array<double, 2> jc_block_eigenvalues(const JcBlock& block);

/// -+sqrt((Delta/2)^2 + (n+1) g^2).
std::array<double, 2> jc_closed_form(int n, double Delta, double g);

/// chi = g^2 / Delta. Throws std::domain_error at Delta = 0.
double dispersive_shift(double g, double Delta);

/// Truncated Fock space, basis index 2n + s with s = 0 (down), 1 (up):
/// omega_r a^dag a + (omega_a/2) sigma_z + i g sigma_x (a - a^dag).
Eigen::MatrixXcd full_jc_hamiltonian(int n_max, double omega_r, double omega_a, double g);

/// Rotating-wave part: omega_r a^dag a + (omega_a/2) sigma_z + i g (sigma_+ a - sigma_- a^dag).
Eigen::MatrixXcd rwa_jc_hamiltonian(int n_max, double omega_r, double omega_a, double g);

/// D_r a^dag a + (D_a/2) sigma_z - i g (a^dag sigma_- - a sigma_+) + (Omega_R/2) sigma_y.
Eigen::MatrixXcd driven_frame_hamiltonian(int n_max, const DriveParams& drive, double g);

/// Dispersive limit of the driven frame:
/// D_r a^dag a + (D_a/2) sigma_z + chi (a^dag a + 1/2) sigma_z + (Omega_R/2) sigma_y.
Eigen::MatrixXcd dispersive_hamiltonian(int n_max, const DriveParams& drive, double chi);

}  // namespace fluxqed

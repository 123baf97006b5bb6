#include "fluxqed/coupling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fluxqed {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

void require_truncation(int n_max) {
    if (n_max < 2) {
        throw std::invalid_argument("Fock-space truncation needs n_max >= 2");
    }
}

Eigen::Index basis(int n, int spin) {
    return static_cast<Eigen::Index>(2 * n + spin);
}

}  // namespace

const char* to_string(CouplingRegime r) {
    switch (r) {
    case CouplingRegime::weak:
        return "weak";
    case CouplingRegime::strong:
        return "strong";
    case CouplingRegime::ultrastrong:
        return "ultrastrong";
    }
    return "weak";
}

PhysicalLine PhysicalLine::from_impedance(double impedance_Z, double omega0, double length_L) {
    return {length_L, impedance_Z * std::numbers::pi / (omega0 * length_L)};
}

double bias_current_amplitude(double delta, double omega_r, const PhysicalLine& line) {
    return std::sqrt(PhysicalConstants::hbar * omega_r /
                     (line.length_L * line.inductance_per_length)) *
           delta;
}

double bias_current_amplitude(const ModeSolution& mode, int site, const PhysicalLine& line,
                              double omega0) {
    if (!mode.layout.qubit_sites.at(static_cast<std::size_t>(site)).switched_on) {
        return 0.0;
    }
    return bias_current_amplitude(current_gap(mode, site), mode.omega_r_over_omega0 * omega0, line);
}

double coupling_g(double delta, double omega_ratio, double impedance_Z) {
    const double flux_term = PhysicalConstants::flux_quantum_Phi0 /
                             std::sqrt(PhysicalConstants::planck_h * impedance_Z);
    return flux_term / 3.0 * std::sqrt(omega_ratio) * delta / std::numbers::sqrt2;
}

double coupling_g(const ModeSolution& mode, int site, double impedance_Z) {
    if (!mode.layout.qubit_sites.at(static_cast<std::size_t>(site)).switched_on) {
        return 0.0;
    }
    return coupling_g(current_gap(mode, site), mode.omega_r_over_omega0, impedance_Z);
}

double coupling_g_from_current(double bias_current_I0, double omega0) {
    const double g = PhysicalConstants::flux_quantum_Phi0 / (2.0 * std::numbers::pi) *
                     PhysicalConstants::junction_phase_alpha * bias_current_I0;
    return g / (PhysicalConstants::hbar * omega0);
}

CouplingRegime classify_regime(double g, double omega_a, double strong_threshold) {
    if (g >= 0.1 * omega_a) {
        return CouplingRegime::ultrastrong;
    }
    if (g >= strong_threshold) {
        return CouplingRegime::strong;
    }
    return CouplingRegime::weak;
}

CouplingResult couple_site(const ModeSolution& mode, int site, double impedance_Z, double omega0,
                           double omega_a, double strong_threshold) {
    CouplingResult r;
    r.site = site;
    r.switched_on = mode.layout.qubit_sites.at(static_cast<std::size_t>(site)).switched_on;
    r.delta = current_gap(mode, site);
    const PhysicalLine line = PhysicalLine::from_impedance(impedance_Z, omega0, mode.layout.length_L);
    r.bias_current_I0 = bias_current_amplitude(mode, site, line, omega0);
    r.g_over_hbar_omega0 = coupling_g(mode, site, impedance_Z);
    const double Delta = omega_a - mode.omega_r_over_omega0;
    r.chi_over_omega0 = Delta != 0.0 ? r.g_over_hbar_omega0 * r.g_over_hbar_omega0 / Delta
                                     : std::numeric_limits<double>::quiet_NaN();
    r.regime = classify_regime(r.g_over_hbar_omega0, omega_a, strong_threshold);
    return r;
}

// =============================================================================
// Jaynes-Cummings
// =============================================================================

DriveParams DriveParams::make(double omega_r, double omega_a, double omega_d, double eps,
                              double rabi_Omega_R) {
    DriveParams d;
    d.drive_amplitude_eps = eps;
    d.drive_freq_omega_d = omega_d;
    d.detuning_Delta_r = omega_r - omega_d;
    d.detuning_Delta_a = omega_a - omega_d;
    d.rabi_Omega_R = rabi_Omega_R;
    return d;
}

JcBlock jc_block(int n, const DriveParams& drive, double g) {
    if (n < 0) {
        throw std::invalid_argument("photon number must be non-negative");
    }
    JcBlock b;
    b.n = n;
    b.Delta = drive.detuning_Delta_a - drive.detuning_Delta_r;
    b.g = g;
    const double coupling = g * std::sqrt(static_cast<double>(n + 1));
    b.matrix << (n + 1) * drive.detuning_Delta_r - 0.5 * drive.detuning_Delta_a, -kI * coupling,
        kI * coupling, n * drive.detuning_Delta_r + 0.5 * drive.detuning_Delta_a;
    return b;
}

JcBlock jc_block(int n, double Delta, double g) {
    DriveParams frame;
    frame.detuning_Delta_a = Delta;  // omega_d = omega_r
    return jc_block(n, frame, g);
}

std::array<double, 2> jc_block_eigenvalues(const JcBlock& block) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block.matrix, Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

std::array<double, 2> jc_closed_form(int n, double Delta, double g) {
    const double e = std::sqrt(0.25 * Delta * Delta + (n + 1) * g * g);
    return {-e, e};
}

double dispersive_shift(double g, double Delta) {
    if (Delta == 0.0) {
        throw std::domain_error("dispersive shift undefined at Delta = 0; use the exact JC block");
    }
    return g * g / Delta;
}

Eigen::MatrixXcd full_jc_hamiltonian(int n_max, double omega_r, double omega_a, double g) {
    require_truncation(n_max);
    const Eigen::Index dim = 2 * (n_max + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n <= n_max; ++n) {
        h(basis(n, 0), basis(n, 0)) = n * omega_r - 0.5 * omega_a;
        h(basis(n, 1), basis(n, 1)) = n * omega_r + 0.5 * omega_a;
    }
    // i g sigma_x (a - a^dag): <n-1, s'| a |n, s> = sqrt(n), spin flipped.
    for (int n = 1; n <= n_max; ++n) {
        const double amp = g * std::sqrt(static_cast<double>(n));
        for (int s = 0; s < 2; ++s) {
            h(basis(n - 1, 1 - s), basis(n, s)) += kI * amp;   // a
            h(basis(n, 1 - s), basis(n - 1, s)) += -kI * amp;  // -a^dag
        }
    }
    return h;
}

Eigen::MatrixXcd rwa_jc_hamiltonian(int n_max, double omega_r, double omega_a, double g) {
    require_truncation(n_max);
    const Eigen::Index dim = 2 * (n_max + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n <= n_max; ++n) {
        h(basis(n, 0), basis(n, 0)) = n * omega_r - 0.5 * omega_a;
        h(basis(n, 1), basis(n, 1)) = n * omega_r + 0.5 * omega_a;
    }
    for (int n = 0; n < n_max; ++n) {
        const double amp = g * std::sqrt(static_cast<double>(n + 1));
        h(basis(n, 1), basis(n + 1, 0)) = kI * amp;    // i g sigma_+ a
        h(basis(n + 1, 0), basis(n, 1)) = -kI * amp;   // -i g sigma_- a^dag
    }
    return h;
}

Eigen::MatrixXcd driven_frame_hamiltonian(int n_max, const DriveParams& drive, double g) {
    Eigen::MatrixXcd h =
        rwa_jc_hamiltonian(n_max, drive.detuning_Delta_r, drive.detuning_Delta_a, g);
    // sigma_y in the (down, up) ordering: <down|sigma_y|up> = i.
    for (int n = 0; n <= n_max; ++n) {
        h(basis(n, 0), basis(n, 1)) += 0.5 * drive.rabi_Omega_R * kI;
        h(basis(n, 1), basis(n, 0)) += -0.5 * drive.rabi_Omega_R * kI;
    }
    return h;
}

Eigen::MatrixXcd dispersive_hamiltonian(int n_max, const DriveParams& drive, double chi) {
    require_truncation(n_max);
    const Eigen::Index dim = 2 * (n_max + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n <= n_max; ++n) {
        const double shift = chi * (n + 0.5);
        h(basis(n, 0), basis(n, 0)) = n * drive.detuning_Delta_r - 0.5 * drive.detuning_Delta_a - shift;
        h(basis(n, 1), basis(n, 1)) = n * drive.detuning_Delta_r + 0.5 * drive.detuning_Delta_a + shift;
        h(basis(n, 0), basis(n, 1)) = 0.5 * drive.rabi_Omega_R * kI;
        h(basis(n, 1), basis(n, 0)) = -0.5 * drive.rabi_Omega_R * kI;
    }
    return h;
}

}  // namespace fluxqed

#pragma once

// =============================================================================
// fluxqed - Resonator-mediated qubit-qubit interaction
// =============================================================================
// Two identical qubits coupled to one resonator mode. The lowest excitation
// block spans {|1,dn,dn>, |0,up,dn>, |0,dn,up>}; rotating by exp(-i phi sigma_x)
// on the pair {|1,dn,dn>, symmetric qubit state} decouples the photon and
// leaves an effective sigma_+ sigma_- exchange with strength J. Energies in
// units of hbar * omega_r0.
// =============================================================================

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace fluxqed {

enum class InteractionSign { ferromagnetic, antiferromagnetic, resonant };
enum class TwoQubitRegime { perturbative, resonant, saturated };

const char* to_string(InteractionSign s);
const char* to_string(TwoQubitRegime r);

class UnsupportedQubits : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// [[-Delta, -i g, -i g], [i g, 0, 0], [i g, 0, 0]] with Delta = omega_a - omega_r.
Eigen::Matrix3cd two_qubit_block(double Delta, double g);

/// Throws UnsupportedQubits unless both qubits share Delta and g to 1e-9 relative.
Eigen::Matrix3cd two_qubit_block(double Delta_1, double g_1, double Delta_2, double g_2);

/// exp(-i phi sigma_x) on {|1,dn,dn>, (|0,up,dn> + |0,dn,up>)/sqrt(2)},
/// identity on the antisymmetric state, written in the product basis.
Eigen::Matrix3cd transformation_u2(double phi);

/// Angle that removes the photon admixture: tan(2 phi) = 2 sqrt(2) g / Delta on
/// the principal branch, phi in (-pi/4, pi/4], phi = pi/4 at Delta = 0.
/// Throws std::domain_error when g = Delta = 0.
double solve_phi(double Delta, double g);

/// U2^dag H U2 evaluated at solve_phi(Delta, g).
Eigen::Matrix3cd transformed_block(double Delta, double g);

/// Exact exchange J = (g / sqrt(2)) tan(phi), evaluated without cancellation.
double j_exact(double Delta, double g);

struct DispersiveJ {
    double J = 0.0;
    bool outside_dispersive_regime = false;  // g / |Delta| > 0.1
};

/// J = (g1 g2 / 2) (1/Delta_1 + 1/Delta_2). Throws std::domain_error at Delta = 0.
DispersiveJ dispersive_j(double g_1, double g_2, double Delta_1, double Delta_2);

/// Sign label for J; Delta = 0 reports resonant.
InteractionSign classify_interaction(double J, double Delta);

/// perturbative for g/|Delta| <= 0.1, saturated for g/|Delta| >= 10 or Delta = 0.
TwoQubitRegime classify_two_qubit_regime(double Delta, double g);

struct TwoQubitResult {
    double Delta = 0.0;
    double g = 0.0;
    double phi = 0.0;
    double J = 0.0;
    InteractionSign sign = InteractionSign::resonant;
    TwoQubitRegime regime = TwoQubitRegime::resonant;
};

TwoQubitResult analyze_two_qubit(double Delta, double g);

}  // namespace fluxqed

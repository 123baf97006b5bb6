#pragma once

// =============================================================================
// fluxqed - Piecewise Helmholtz mode solver
// =============================================================================
// Inside sector i the current profile obeys X'' + (c_i/c) (j1 pi)^2 X = 0
// (x in units of L), with X and the potential (1/c_i) X' continuous across
// every boundary and X(+-1/2) = 0. Each sector uses a real local basis
//
//     X_i(s) = a_i cos(k_i s) + b_i (rho_i / k_i) sin(k_i s),   s = x - x_left
//
// so (a_i, b_i) are exactly the value and the potential at the sector's left
// edge. The mode frequency is omega_r = j1 omega_r0.
// =============================================================================

#include "fluxqed/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fluxqed {

enum class Parity { odd, even };

/// Sign choice on the right-hand side of the single-qubit mode condition.
enum class Branch { minus, plus };

const char* to_string(Parity p);

/// Value X and potential (1/rho) X' at the left edge of a sector.
struct SectorState {
    double value = 0.0;
    double flux = 0.0;
};

struct ModeSolution {
    SectorLayout layout;
    int harmonic = 0;
    double j1 = 0.0;
    double j2 = 0.0;
    double omega_r_over_omega0 = 0.0;
    std::vector<SectorState> coefficients;  // scaled so that mu = 1/2
    double mu = 0.0;
    double kappa = 0.0;  // dimensionless: integral of (c/c_i) X'^2 with x in units of L
    Parity parity = Parity::odd;
    std::vector<double> gaps_delta;
    double singular_value_ratio = 0.0;  // sigma_min / sigma_max of the boundary matrix
    std::vector<std::string> warnings;
};

struct SolverOptions {
    int scan_samples = 2000;
    double relative_tolerance = 1e-12;
    bool parallel_scan = true;
};

struct ScanTrace {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::pair<double, double>> samples;  // (j1, determinant)
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, ScanTrace trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const ScanTrace& trace() const { return trace_; }

private:
    ScanTrace trace_;
};

class UnsupportedLayout : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// -----------------------------------------------------------------------------
// Boundary systems
// -----------------------------------------------------------------------------

/// 2x2 propagator of (X, (1/rho) X') across one sector.
Eigen::Matrix2d sector_transfer(const Sector& sector, double j1);

/// Homogeneous system over all 2S sector coefficients: X(-1/2) = 0, continuity
/// of X and (1/rho) X' at every internal boundary, X(1/2) = 0.
Eigen::MatrixXd full_boundary_matrix(const SectorLayout& layout, double j1);

/// Parity-reduced system on the right half of a mirror-symmetric layout. The
/// centre sector carries a single unknown (sin for odd, cos for even).
Eigen::MatrixXd boundary_matrix(const SectorLayout& layout, double j1, Parity parity);

double reduced_determinant(const SectorLayout& layout, double j1, Parity parity);

/// Number of zeros in (-1/2, 1/2] of the solution started from X(-1/2) = 0.
/// Equals the number of eigenvalues j <= j1 (Sturm oscillation theorem).
int oscillation_count(const SectorLayout& layout, double j1);

/// Smallest over largest singular value of a boundary matrix.
double singular_value_ratio(const Eigen::MatrixXd& m);

// -----------------------------------------------------------------------------
// Single-qubit closed forms (N = 1 layouts only)
// -----------------------------------------------------------------------------

/// exp(i j1 pi (1 - 2w) / 2) minus the ratio form on the chosen branch; zero
/// exactly at odd-parity mode indices.
std::complex<double> mode_condition_single(const SectorLayout& layout, double j1,
                                           Branch branch = Branch::minus);

/// Exponential-basis coefficients X_i = A_i e^{i k x} + B_i e^{-i k x} for the
/// five sectors (index 0 is the left end), normalised to A_2 = 1.
struct SingleQubitCoefficients {
    std::array<std::complex<double>, 5> A;
    std::array<std::complex<double>, 5> B;
};

SingleQubitCoefficients analytic_coefficients_single(const SectorLayout& layout, double j1);

/// Converts exponential-basis coefficients into (value, potential) pairs at the
/// left edge of each sector, interleaved as [a_0, b_0, a_1, b_1, ...].
Eigen::VectorXcd to_sector_states(const SectorLayout& layout, double j1,
                                  const SingleQubitCoefficients& coeffs);

// -----------------------------------------------------------------------------
// Mode search
// -----------------------------------------------------------------------------

/// Parity of the uniform harmonic with the given index about x = 0.
Parity harmonic_parity(int harmonic);

/// Finds the mode on the branch connected to the uniform-line harmonic
/// (default N+1). Throws SolverError with the scan trace when no root exists.
ModeSolution find_mode(const SectorLayout& layout, int harmonic = 0,
                       const SolverOptions& options = {});

struct BranchStep {
    double density_ratio = 1.0;
    double j1 = 0.0;
    int sturm_index = 0;  // oscillation index of the tracked root
};

/// Homotopy in c'/c: raises the ratio geometrically from 1 to the layout value
/// and at each step keeps the root nearest the previous one. Because raising
/// c'/c by a factor r can lower j1 by at most sqrt(r), each step only scans
/// [j_prev / sqrt(r), j_prev].
std::vector<BranchStep> continue_branch(const SectorLayout& layout, int harmonic, int steps = 50);

/// Copy of the layout with every capacitance-line sector set to ratio.
SectorLayout with_density_ratio(const SectorLayout& layout, double ratio);

// -----------------------------------------------------------------------------
// Mode evaluation
// -----------------------------------------------------------------------------

struct Normalization {
    double mu = 0.0;
    double kappa = 0.0;
};

/// Closed-form per-sector integrals of X^2 and (c/c_i) X'^2.
Normalization normalization_constants(const SectorLayout& layout, double j1,
                                      const std::vector<SectorState>& coefficients);
Normalization normalization_constants(const ModeSolution& mode);

/// Raw X(x) from coefficients (x in units of L).
double evaluate_profile(const SectorLayout& layout, double j1,
                        const std::vector<SectorState>& coefficients, double x);

/// Normalised current X(x) / sqrt(2 mu); x in units of L within [-1/2, 1/2].
double current_profile(const ModeSolution& mode, double x);

/// current_profile at M uniformly spaced points including both ends.
std::vector<double> sample_profile(const ModeSolution& mode, int points);

/// |X(x_k + w/2) - X(x_k - w/2)| / sqrt(2 mu) at qubit site k.
double current_gap(const ModeSolution& mode, int site);

}  // namespace fluxqed

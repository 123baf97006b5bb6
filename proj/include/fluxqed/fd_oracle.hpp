#pragma once

// =============================================================================
// fluxqed - Finite-difference oracle
// =============================================================================
// Independent check of the mode solver. Discretises -((1/rho) X')' = lambda X
// on [-1/2, 1/2] with X = 0 at both ends, lambda = (j1 pi)^2, on a composite
// grid whose nodes include every sector boundary. The flux-conservative
// three-point stencil uses 1/rho of the cell on each side of a node, so the
// potential (1/rho) X' is continuous in the discrete sense, and a lumped
// (diagonal) mass keeps the pencil symmetric tridiagonal.
// =============================================================================

#include "fluxqed/geometry.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fluxqed {

class FdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FdGrid {
    std::vector<double> nodes;         // units of L, nodes.front() = -1/2
    std::vector<double> cell_density;  // c/c per cell, size nodes.size() - 1
    double spacing = 0.0;              // nominal 1 / (points - 1)

    int points() const { return static_cast<int>(nodes.size()); }
};

struct FdMode {
    double eigenvalue = 0.0;           // lambda = (omega_r / omega_r0)^2 pi^2
    double omega_over_omega0 = 0.0;
    std::vector<double> profile;       // X at every node, integral of X^2 = 1/2
};

/// Composite grid with at least two cells per sector; points >= 1001.
FdGrid make_grid(const SectorLayout& layout, int points);

/// Splits every cell in two (points -> 2 points - 1).
FdGrid refine(const FdGrid& grid);

/// Lowest `count` eigenpairs in ascending order.
std::vector<FdMode> fd_modes(const FdGrid& grid, int count);
std::vector<FdMode> fd_modes(const SectorLayout& layout, int points, int count);

/// Linear interpolation of a nodal profile.
double fd_interpolate(const FdGrid& grid, const std::vector<double>& profile, double x);

/// |X(x_k + w/2) - X(x_k - w/2)| for the discrete profile.
double fd_gap(const FdMode& mode, const FdGrid& grid, const SectorLayout& layout, int site);

/// Lumped-mass inner product sum_i m_i a_i b_i.
double fd_inner_product(const FdGrid& grid, const std::vector<double>& a,
                        const std::vector<double>& b);

/// "x,X" CSV of one mode, header included.
void write_profile_csv(std::ostream& os, const FdGrid& grid, const FdMode& mode);

}  // namespace fluxqed

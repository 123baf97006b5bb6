#include "fluxqed/fd_oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fluxqed {

FdGrid make_grid(const SectorLayout& layout, int points) {
    if (points < 1001) {
        throw std::invalid_argument("finite-difference grid needs at least 1001 points");
    }
    const long total = points - 1;
    const std::size_t n = layout.sectors.size();
    if (static_cast<long>(2 * n) > total) {
        throw std::invalid_argument("grid too coarse for the sector layout");
    }

    std::vector<long> cells(n);
    long sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cells[i] = std::max(2L, std::lround(layout.sectors[i].width() * static_cast<double>(total)));
        sum += cells[i];
    }
    // Trim or pad the widest sectors until the cell count is exact.
    while (sum != total) {
        std::size_t widest = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (layout.sectors[i].width() / static_cast<double>(cells[i]) >
                layout.sectors[widest].width() / static_cast<double>(cells[widest])) {
                widest = i;
            }
        }
        if (sum < total) {
            ++cells[widest];
            ++sum;
        } else {
            std::size_t finest = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (cells[i] > 2 && (cells[finest] <= 2 ||
                                     layout.sectors[i].width() / static_cast<double>(cells[i]) <
                                         layout.sectors[finest].width() /
                                             static_cast<double>(cells[finest]))) {
                    finest = i;
                }
            }
            --cells[finest];
            --sum;
        }
    }

    FdGrid grid;
    grid.spacing = 1.0 / static_cast<double>(total);
    grid.nodes.reserve(static_cast<std::size_t>(points));
    grid.cell_density.reserve(static_cast<std::size_t>(total));
    grid.nodes.push_back(-0.5);
    for (std::size_t i = 0; i < n; ++i) {
        const Sector& s = layout.sectors[i];
        for (long c = 1; c <= cells[i]; ++c) {
            const double x = c == cells[i]
                                 ? s.x_right
                                 : s.x_left + s.width() * static_cast<double>(c) /
                                                  static_cast<double>(cells[i]);
            grid.nodes.push_back(x);
            grid.cell_density.push_back(s.density_ratio);
        }
    }
    grid.nodes.back() = 0.5;
    return grid;
}

FdGrid refine(const FdGrid& grid) {
    FdGrid out;
    out.spacing = 0.5 * grid.spacing;
    out.nodes.reserve(2 * grid.nodes.size() - 1);
    out.cell_density.reserve(2 * grid.cell_density.size());
    out.nodes.push_back(grid.nodes.front());
    for (std::size_t c = 0; c < grid.cell_density.size(); ++c) {
        out.nodes.push_back(0.5 * (grid.nodes[c] + grid.nodes[c + 1]));
        out.nodes.push_back(grid.nodes[c + 1]);
        out.cell_density.push_back(grid.cell_density[c]);
        out.cell_density.push_back(grid.cell_density[c]);
    }
    return out;
}

namespace {

std::vector<double> lumped_mass(const FdGrid& grid) {
    const std::size_t p = grid.nodes.size();
    std::vector<double> m(p, 0.0);
    for (std::size_t c = 0; c + 1 < p; ++c) {
        const double h = grid.nodes[c + 1] - grid.nodes[c];
        m[c] += 0.5 * h;
        m[c + 1] += 0.5 * h;
    }
    return m;
}

}  // namespace

std::vector<FdMode> fd_modes(const FdGrid& grid, int count) {
    if (count < 1) {
        throw std::invalid_argument("fd_modes needs count >= 1");
    }
    const std::size_t p = grid.nodes.size();
    const lapack_int n = static_cast<lapack_int>(p - 2);  // interior nodes
    if (count > n) {
        throw std::invalid_argument("more modes requested than interior grid nodes");
    }
    const std::vector<double> mass = lumped_mass(grid);

    // Symmetric form M^{-1/2} K M^{-1/2} on interior nodes 1..p-2.
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<double> off(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    for (std::size_t i = 1; i + 1 < p; ++i) {
        const double hl = grid.nodes[i] - grid.nodes[i - 1];
        const double hr = grid.nodes[i + 1] - grid.nodes[i];
        const double kl = 1.0 / (grid.cell_density[i - 1] * hl);
        const double kr = 1.0 / (grid.cell_density[i] * hr);
        diag[i - 1] = (kl + kr) / mass[i];
        if (i + 2 < p) {
            off[i - 1] = -kr / std::sqrt(mass[i] * mass[i + 1]);
        }
    }

    std::vector<double> eigenvalues(static_cast<std::size_t>(n));
    std::vector<lapack_int> iblock(static_cast<std::size_t>(n));
    std::vector<lapack_int> isplit(static_cast<std::size_t>(n));
    lapack_int found = 0;
    lapack_int nsplit = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, count, abstol, diag.data(),
                                     off.data(), &found, &nsplit, eigenvalues.data(),
                                     iblock.data(), isplit.data());
    auto fail = [&](const char* stage) {
        std::ostringstream msg;
        msg << "finite-difference eigensolver failed in " << stage << " (info " << info
            << ", points " << p << ", nominal spacing " << grid.spacing << ")";
        throw FdError(msg.str());
    };
    if (info != 0 || found < count) {
        fail("dstebz");
    }

    std::vector<double> vectors(static_cast<std::size_t>(n) * static_cast<std::size_t>(found));
    std::vector<lapack_int> ifail(static_cast<std::size_t>(found));
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, diag.data(), off.data(), found, eigenvalues.data(),
                          iblock.data(), isplit.data(), vectors.data(), n, ifail.data());
    if (info != 0) {
        fail("dstein");
    }

    std::vector<FdMode> modes;
    modes.reserve(static_cast<std::size_t>(count));
    for (lapack_int k = 0; k < count; ++k) {
        FdMode mode;
        mode.eigenvalue = eigenvalues[static_cast<std::size_t>(k)];
        mode.omega_over_omega0 = std::sqrt(mode.eigenvalue) / std::numbers::pi;
        mode.profile.assign(p, 0.0);
        const double* y = vectors.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
        double norm = 0.0;
        for (std::size_t i = 1; i + 1 < p; ++i) {
            const double x = y[i - 1] / std::sqrt(mass[i]);
            mode.profile[i] = x;
            norm += mass[i] * x * x;
        }
        // Integral of X^2 equal to 1/2, positive slope at x = -1/2.
        double scale = std::sqrt(0.5 / norm);
        if (mode.profile[1] < 0.0) {
            scale = -scale;
        }
        for (double& v : mode.profile) {
            v *= scale;
        }
        modes.push_back(std::move(mode));
    }
    return modes;
}

std::vector<FdMode> fd_modes(const SectorLayout& layout, int points, int count) {
    return fd_modes(make_grid(layout, points), count);
}

double fd_interpolate(const FdGrid& grid, const std::vector<double>& profile, double x) {
    const auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), x);
    if (it == grid.nodes.begin()) {
        return profile.front();
    }
    if (it == grid.nodes.end()) {
        return profile.back();
    }
    const auto i = static_cast<std::size_t>(it - grid.nodes.begin());
    const double x0 = grid.nodes[i - 1];
    const double x1 = grid.nodes[i];
    const double t = (x - x0) / (x1 - x0);
    return (1.0 - t) * profile[i - 1] + t * profile[i];
}

double fd_gap(const FdMode& mode, const FdGrid& grid, const SectorLayout& layout, int site) {
    if (site < 0 || site >= layout.qubit_count()) {
        throw std::out_of_range("qubit site index out of range");
    }
    const Sector& s = layout.sectors[layout.qubit_sites[static_cast<std::size_t>(site)].sector_index];
    return std::abs(fd_interpolate(grid, mode.profile, s.x_right) -
                    fd_interpolate(grid, mode.profile, s.x_left));
}

double fd_inner_product(const FdGrid& grid, const std::vector<double>& a,
                        const std::vector<double>& b) {
    const std::vector<double> mass = lumped_mass(grid);
    double sum = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        sum += mass[i] * a[i] * b[i];
    }
    return sum;
}

void write_profile_csv(std::ostream& os, const FdGrid& grid, const FdMode& mode) {
    os << "x,X\n";
    char buf[64];
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        auto r = std::to_chars(buf, buf + sizeof buf, grid.nodes[i]);
        os.write(buf, r.ptr - buf);
        os << ',';
        r = std::to_chars(buf, buf + sizeof buf, mode.profile[i]);
        os.write(buf, r.ptr - buf);
        os << '\n';
    }
}

}  // namespace fluxqed

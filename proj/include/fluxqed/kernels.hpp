#pragma once

// Data-parallel kernels. Each has an OpenMP version and a serial reference
// that the tests hold it to bit-for-bit.

#include "fluxqed/geometry.hpp"
#include "fluxqed/mode_solver.hpp"

#include <vector>

namespace fluxqed::kernels {

inline double scan_abscissa(double lo, double hi, int index, int samples) {
    return lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(samples - 1);
}

/// Reduced determinant at `samples` uniformly spaced j1 in [lo, hi].
std::vector<double> scan_determinant_serial(const SectorLayout& layout, Parity parity, double lo,
                                            double hi, int samples);
std::vector<double> scan_determinant_omp(const SectorLayout& layout, Parity parity, double lo,
                                         double hi, int samples);

}  // namespace fluxqed::kernels

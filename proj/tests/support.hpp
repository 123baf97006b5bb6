#pragma once

#include "fluxqed/geometry.hpp"

#include <cmath>
#include <random>

namespace fluxqed::test {

inline SectorLayout layout(double w_over_w0, double d0_over_d, int qubits, double w0_over_L = 1e-4) {
    return build_layout(DeviceGeometry::from_ratios(w_over_w0, d0_over_d, qubits, w0_over_L));
}

inline double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace fluxqed::test

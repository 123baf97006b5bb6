#include "fluxqed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fluxqed {

void DeviceGeometry::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidGeometry(std::string(name) + " must be positive and finite");
        }
    };
    positive(length_L, "length_L");
    positive(qubit_loop_width_w0, "qubit_loop_width_w0");
    positive(ground_gap_d0, "ground_gap_d0");
    positive(cap_line_width_w, "cap_line_width_w");
    positive(cap_line_gap_d, "cap_line_gap_d");
    positive(impedance_Z, "impedance_Z");
    positive(base_mode_freq, "base_mode_freq");
    if (qubit_count_N < 1) {
        throw InvalidGeometry("qubit_count_N must be >= 1");
    }
    if ((qubit_count_N + 1) * cap_line_width_w >= length_L) {
        throw InvalidGeometry("capacitance-line sectors overlap: (N+1) w >= L");
    }
}

DeviceGeometry DeviceGeometry::from_ratios(double w_over_w0, double d0_over_d, int qubits,
                                           double w0_over_L, double length_L) {
    DeviceGeometry g;
    g.length_L = length_L;
    g.qubit_loop_width_w0 = w0_over_L * length_L;
    g.cap_line_width_w = w_over_w0 * g.qubit_loop_width_w0;
    g.ground_gap_d0 = 1e-6;
    g.cap_line_gap_d = g.ground_gap_d0 / d0_over_d;
    g.qubit_count_N = qubits;
    return g;
}

std::size_t SectorLayout::locate(double x) const {
    auto it = std::upper_bound(sectors.begin(), sectors.end(), x,
                               [](double v, const Sector& s) { return v < s.x_right; });
    if (it == sectors.end()) {
        return sectors.size() - 1;
    }
    return static_cast<std::size_t>(it - sectors.begin());
}

double SectorLayout::total_width() const {
    double sum = 0.0;
    for (const auto& s : sectors) {
        sum += s.width();
    }
    return sum;
}

bool SectorLayout::mirror_symmetric(double tol) const {
    const std::size_t n = sectors.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Sector& a = sectors[i];
        const Sector& b = sectors[n - 1 - i];
        if (std::abs(a.x_left + b.x_right) > tol || std::abs(a.x_right + b.x_left) > tol ||
            a.density_ratio != b.density_ratio) {
            return false;
        }
    }
    return true;
}

SectorLayout build_layout(const DeviceGeometry& geom) {
    geom.validate();

    const int n = geom.qubit_count_N;
    const double w = geom.cap_line_width_w / geom.length_L;
    const double ratio = geom.density_ratio();
    const double cell = 1.0 / (n + 1);

    SectorLayout layout;
    layout.length_L = geom.length_L;
    layout.cap_line_width = w;
    layout.loaded_ratio = ratio;
    layout.sectors.reserve(2 * n + 3);

    // Capacitance-line centers sit at -1/2 + m/(N+1), m = 0..N+1. Boundaries
    // are computed from the centers directly so mirrored sectors match exactly.
    auto center = [&](int m) {
        const int k = 2 * m - (n + 1);  // position = k / (2(N+1))
        return static_cast<double>(k) * 0.5 * cell;
    };

    layout.sectors.push_back({-0.5, center(0) + 0.5 * w, ratio, true});
    for (int m = 0; m <= n; ++m) {
        const double left = center(m) + 0.5 * w;
        const double right = center(m + 1) - 0.5 * w;
        layout.sectors.push_back({left, right, 1.0, false});
        if (m < n) {
            layout.sectors.push_back({right, center(m + 1) + 0.5 * w, ratio, true});
            layout.qubit_sites.push_back({center(m + 1), true, layout.sectors.size() - 1});
        }
    }
    layout.sectors.push_back({center(n + 1) - 0.5 * w, 0.5, ratio, true});
    return layout;
}

SectorLayout set_switch(const SectorLayout& layout, int site_index, bool on) {
    if (site_index < 0 || site_index >= layout.qubit_count()) {
        throw std::out_of_range("qubit site index " + std::to_string(site_index) +
                                " out of range [0, " + std::to_string(layout.qubit_count()) + ")");
    }
    SectorLayout out = layout;
    out.qubit_sites[static_cast<std::size_t>(site_index)].switched_on = on;
    return out;
}

}  // namespace fluxqed

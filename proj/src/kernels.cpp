#include "fluxqed/kernels.hpp"

#include <omp.h>

namespace fluxqed::kernels {

std::vector<double> scan_determinant_serial(const SectorLayout& layout, Parity parity, double lo,
                                            double hi, int samples) {
    std::vector<double> det(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        det[static_cast<std::size_t>(i)] =
            reduced_determinant(layout, scan_abscissa(lo, hi, i, samples), parity);
    }
    return det;
}

std::vector<double> scan_determinant_omp(const SectorLayout& layout, Parity parity, double lo,
                                         double hi, int samples) {
    std::vector<double> det(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
        det[static_cast<std::size_t>(i)] =
            reduced_determinant(layout, scan_abscissa(lo, hi, i, samples), parity);
    }
    return det;
}

}  // namespace fluxqed::kernels

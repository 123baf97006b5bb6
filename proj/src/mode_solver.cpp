#include "fluxqed/mode_solver.hpp"

#include "fluxqed/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fluxqed {

namespace {

constexpr double kPi = std::numbers::pi;

double wavenumber(const Sector& s, double j1) {
    return j1 * kPi * std::sqrt(s.density_ratio);
}

// u - sin(u), accurate for small u.
double u_minus_sin(double u) {
    if (std::abs(u) < 1e-2) {
        const double u2 = u * u;
        return u * u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)));
    }
    return u - std::sin(u);
}

// Integrals over [0, h] of cos^2(ks), sin^2(ks) and sin(ks)cos(ks).
struct TrigMoments {
    double cos2;
    double sin2;
    double sincos;
};

TrigMoments trig_moments(double k, double h) {
    const double u = 2.0 * k * h;
    const double sin_part = u_minus_sin(u) / (4.0 * k);  // h/2 - sin(2kh)/(4k)
    const double s = std::sin(k * h);
    return {h - sin_part, sin_part, s * s / (2.0 * k)};
}

void require_symmetric(const SectorLayout& layout) {
    if (layout.sectors.size() % 2 == 0 || !layout.mirror_symmetric()) {
        throw UnsupportedLayout("parity-reduced system needs a mirror-symmetric layout");
    }
}

void require_single_qubit(const SectorLayout& layout) {
    if (layout.qubit_count() != 1 || layout.sectors.size() != 5) {
        throw UnsupportedLayout("closed-form single-qubit relations need an N = 1 layout");
    }
}

}  // namespace

const char* to_string(Parity p) {
    return p == Parity::odd ? "odd" : "even";
}

Parity harmonic_parity(int harmonic) {
    // sin(h pi (x + 1/2)) is odd about x = 0 for even h.
    return harmonic % 2 == 0 ? Parity::odd : Parity::even;
}

SectorLayout with_density_ratio(const SectorLayout& layout, double ratio) {
    SectorLayout out = layout;
    out.loaded_ratio = ratio;
    for (auto& s : out.sectors) {
        if (s.is_capacitance_line) {
            s.density_ratio = ratio;
        }
    }
    return out;
}

// =============================================================================
// Boundary systems
// =============================================================================

Eigen::Matrix2d sector_transfer(const Sector& sector, double j1) {
    const double k = wavenumber(sector, j1);
    const double rho = sector.density_ratio;
    const double kh = k * sector.width();
    const double c = std::cos(kh);
    const double s = std::sin(kh);
    Eigen::Matrix2d t;
    t << c, rho / k * s, -k / rho * s, c;
    return t;
}

Eigen::MatrixXd full_boundary_matrix(const SectorLayout& layout, double j1) {
    const auto n = static_cast<Eigen::Index>(layout.sectors.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m(0, 0) = 1.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Eigen::Matrix2d t = sector_transfer(layout.sectors[static_cast<std::size_t>(i)], j1);
        const Eigen::Index r = 1 + 2 * i;
        m.block<2, 2>(r, 2 * i) = t;
        m(r, 2 * i + 2) = -1.0;
        m(r + 1, 2 * i + 3) = -1.0;
    }
    const Eigen::Matrix2d t = sector_transfer(layout.sectors.back(), j1);
    m(2 * n - 1, 2 * n - 2) = t(0, 0);
    m(2 * n - 1, 2 * n - 1) = t(0, 1);
    return m;
}

Eigen::MatrixXd boundary_matrix(const SectorLayout& layout, double j1, Parity parity) {
    require_symmetric(layout);
    const auto n = static_cast<Eigen::Index>(layout.sectors.size());
    const Eigen::Index centre = n / 2;
    const Eigen::Index right = centre;  // sectors to the right of the centre

    const Sector& cs = layout.sectors[static_cast<std::size_t>(centre)];
    const double k = wavenumber(cs, j1);
    const double rho = cs.density_ratio;
    const double half = 0.5 * cs.width();

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    if (parity == Parity::odd) {
        m(0, 0) = rho / k * std::sin(k * half);
        m(1, 0) = std::cos(k * half);
    } else {
        m(0, 0) = std::cos(k * half);
        m(1, 0) = -k / rho * std::sin(k * half);
    }
    m(0, 1) = -1.0;
    m(1, 2) = -1.0;

    for (Eigen::Index r = 1; r < right; ++r) {
        const auto& sector = layout.sectors[static_cast<std::size_t>(centre + r)];
        const Eigen::Matrix2d t = sector_transfer(sector, j1);
        const Eigen::Index row = 2 * r;
        const Eigen::Index col = 2 * r - 1;
        m.block<2, 2>(row, col) = t;
        m(row, col + 2) = -1.0;
        m(row + 1, col + 3) = -1.0;
    }
    const Eigen::Matrix2d t = sector_transfer(layout.sectors.back(), j1);
    m(n - 1, n - 2) = t(0, 0);
    m(n - 1, n - 1) = t(0, 1);
    return m;
}

double reduced_determinant(const SectorLayout& layout, double j1, Parity parity) {
    return boundary_matrix(layout, j1, parity).partialPivLu().determinant();
}

int oscillation_count(const SectorLayout& layout, double j1) {
    // Prufer angle of (X, (rho/k) * potential); rescaling at an interface keeps
    // the quadrant, so the angle is unwrapped against the previous value.
    double x = 0.0;
    double flux = 1.0;
    double theta = 0.0;
    for (const auto& s : layout.sectors) {
        const double k = wavenumber(s, j1);
        const double base = std::atan2(x, flux * s.density_ratio / k);
        theta = base + 2.0 * kPi * std::round((theta - base) / (2.0 * kPi));
        theta += k * s.width();
        const Eigen::Matrix2d t = sector_transfer(s, j1);
        const double nx = t(0, 0) * x + t(0, 1) * flux;
        const double nf = t(1, 0) * x + t(1, 1) * flux;
        x = nx;
        flux = nf;
    }
    return static_cast<int>(std::floor(theta / kPi));
}

double singular_value_ratio(const Eigen::MatrixXd& m) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) / sv(0);
}

// =============================================================================
// Single-qubit closed forms
// =============================================================================

std::complex<double> mode_condition_single(const SectorLayout& layout, double j1, Branch branch) {
    require_single_qubit(layout);
    using namespace std::complex_literals;
    const double w = layout.cap_line_width;
    const double rho = layout.loaded_ratio;
    const double j2 = j1 * std::sqrt(rho);
    const double phase = 0.5 * j2 * kPi * w;
    const std::complex<double> num = j2 * std::cos(phase) - 1i * rho * j1 * std::sin(phase);
    const std::complex<double> den = j2 * std::cos(phase) + 1i * rho * j1 * std::sin(phase);
    const double sign = branch == Branch::minus ? -1.0 : 1.0;
    const std::complex<double> lhs = std::exp(1i * (0.5 * j1 * kPi * (1.0 - 2.0 * w)));
    return lhs - sign * num / den;
}

SingleQubitCoefficients analytic_coefficients_single(const SectorLayout& layout, double j1) {
    require_single_qubit(layout);
    using namespace std::complex_literals;
    const double w = layout.cap_line_width;
    const double rho = layout.loaded_ratio;  // c'/c with c = 1
    const double j2 = j1 * std::sqrt(rho);
    const double phase = 0.5 * j2 * kPi * w;
    const double cosp = std::cos(phase);
    const double sinp = std::sin(phase);

    // Index 0..4 <-> sector -2..2.
    SingleQubitCoefficients c{};
    const std::complex<double> a2 = 1.0;
    const std::complex<double> b2 = -std::exp(1i * (j2 * kPi)) * a2;
    const std::complex<double> a1 =
        -(1.0 / j1) * std::exp(1i * (0.5 * kPi * (j2 - j1 * (1.0 - w)))) *
        (-(j2 / rho) * cosp + 1i * j1 * sinp) * a2;
    const std::complex<double> b1 =
        -(1.0 / j1) * std::exp(1i * (0.5 * kPi * (j2 + j1 * (1.0 - w)))) *
        ((j2 / rho) * cosp + 1i * j1 * sinp) * a2;
    const std::complex<double> a0 =
        rho * j1 / (2.0 * j2 * cosp) *
        (std::exp(1i * (0.5 * j1 * kPi * w)) * a1 - std::exp(-1i * (0.5 * j1 * kPi * w)) * b1);

    // Odd set: A_{-i} = -B_i.
    c.A = {-b2, -b1, a0, a1, a2};
    c.B = {-a2, -a1, -a0, b1, b2};
    return c;
}

Eigen::VectorXcd to_sector_states(const SectorLayout& layout, double j1,
                                  const SingleQubitCoefficients& coeffs) {
    require_single_qubit(layout);
    using namespace std::complex_literals;
    Eigen::VectorXcd v(10);
    for (std::size_t i = 0; i < 5; ++i) {
        const Sector& s = layout.sectors[i];
        const double k = wavenumber(s, j1);
        const std::complex<double> ep = std::exp(1i * (k * s.x_left));
        const std::complex<double> em = std::exp(-1i * (k * s.x_left));
        const auto idx = static_cast<Eigen::Index>(2 * i);
        v(idx) = coeffs.A[i] * ep + coeffs.B[i] * em;
        v(idx + 1) = (1i * k / s.density_ratio) * (coeffs.A[i] * ep - coeffs.B[i] * em);
    }
    return v;
}

// =============================================================================
// Mode evaluation
// =============================================================================

Normalization normalization_constants(const SectorLayout& layout, double j1,
                                      const std::vector<SectorState>& coefficients) {
    Normalization out;
    for (std::size_t i = 0; i < layout.sectors.size(); ++i) {
        const Sector& s = layout.sectors[i];
        const double k = wavenumber(s, j1);
        const double rho = s.density_ratio;
        const double a = coefficients[i].value;
        const double b = coefficients[i].flux * rho / k;  // sine amplitude
        const TrigMoments m = trig_moments(k, s.width());
        out.mu += a * a * m.cos2 + 2.0 * a * b * m.sincos + b * b * m.sin2;
        out.kappa += (k * k / rho) * (a * a * m.sin2 - 2.0 * a * b * m.sincos + b * b * m.cos2);
    }
    return out;
}

Normalization normalization_constants(const ModeSolution& mode) {
    return normalization_constants(mode.layout, mode.j1, mode.coefficients);
}

double evaluate_profile(const SectorLayout& layout, double j1,
                        const std::vector<SectorState>& coefficients, double x) {
    const std::size_t i = layout.locate(x);
    const Sector& s = layout.sectors[i];
    const double k = wavenumber(s, j1);
    const double local = x - s.x_left;
    return coefficients[i].value * std::cos(k * local) +
           coefficients[i].flux * s.density_ratio / k * std::sin(k * local);
}

double current_profile(const ModeSolution& mode, double x) {
    if (!(x >= -0.5 - 1e-15 && x <= 0.5 + 1e-15)) {
        throw std::out_of_range("profile position outside [-L/2, L/2]");
    }
    return evaluate_profile(mode.layout, mode.j1, mode.coefficients, x) / std::sqrt(2.0 * mode.mu);
}

std::vector<double> sample_profile(const ModeSolution& mode, int points) {
    if (points < 2) {
        throw std::invalid_argument("profile needs at least two sample points");
    }
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double x = -0.5 + static_cast<double>(i) / (points - 1);
        out[static_cast<std::size_t>(i)] = current_profile(mode, std::clamp(x, -0.5, 0.5));
    }
    return out;
}

namespace {

// X at the right edge of sector i, propagated from its own coefficients.
double right_edge_value(const SectorLayout& layout, double j1,
                        const std::vector<SectorState>& coefficients, std::size_t i) {
    const Eigen::Matrix2d t = sector_transfer(layout.sectors[i], j1);
    return t(0, 0) * coefficients[i].value + t(0, 1) * coefficients[i].flux;
}

double gap_from(const SectorLayout& layout, double j1, const std::vector<SectorState>& coefficients,
                double mu, int site) {
    const std::size_t i = layout.qubit_sites[static_cast<std::size_t>(site)].sector_index;
    const double left = coefficients[i].value;
    const double right = right_edge_value(layout, j1, coefficients, i);
    return std::abs(right - left) / std::sqrt(2.0 * mu);
}

}  // namespace

double current_gap(const ModeSolution& mode, int site) {
    if (site < 0 || site >= mode.layout.qubit_count()) {
        throw std::out_of_range("qubit site index out of range");
    }
    return gap_from(mode.layout, mode.j1, mode.coefficients, mode.mu, site);
}

// =============================================================================
// Mode search
// =============================================================================

namespace {

double max_density_ratio(const SectorLayout& layout) {
    double r = 1.0;
    for (const auto& s : layout.sectors) {
        r = std::max(r, s.density_ratio);
    }
    return r;
}

// Narrows [lo, hi] until it holds exactly one eigenvalue: the harmonic-th.
std::pair<double, double> isolate_eigenvalue(const SectorLayout& layout, int harmonic) {
    double lo = 0.5 * harmonic / std::sqrt(max_density_ratio(layout));
    double hi = harmonic + 0.5;
    int count_lo = oscillation_count(layout, lo);
    int count_hi = oscillation_count(layout, hi);
    for (int iter = 0; iter < 200 && !(count_lo == harmonic - 1 && count_hi == harmonic); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const int c = oscillation_count(layout, mid);
        if (c >= harmonic) {
            hi = mid;
            count_hi = c;
        } else {
            lo = mid;
            count_lo = c;
        }
    }
    return {lo, hi};
}

double bisect_determinant(const SectorLayout& layout, Parity parity, double lo, double hi,
                          double det_lo, double rel_tol) {
    for (int iter = 0; iter < 200 && (hi - lo) > rel_tol * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double d = reduced_determinant(layout, mid, parity);
        if (d == 0.0) {
            return mid;
        }
        if ((d > 0.0) == (det_lo > 0.0)) {
            lo = mid;
            det_lo = d;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double golden_section_sigma(const SectorLayout& layout, Parity parity, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double j) { return singular_value_ratio(boundary_matrix(layout, j, parity)); };
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-14 * b; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

Parity classify_parity(const SectorLayout& layout, double j1,
                       const std::vector<SectorState>& coefficients) {
    double odd_residual = 0.0;
    double even_residual = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.5 * i / 100.0;
        const double p = evaluate_profile(layout, j1, coefficients, x);
        const double m = evaluate_profile(layout, j1, coefficients, -x);
        odd_residual += std::abs(p + m);
        even_residual += std::abs(p - m);
    }
    return odd_residual <= even_residual ? Parity::odd : Parity::even;
}

}  // namespace

ModeSolution find_mode(const SectorLayout& layout, int harmonic, const SolverOptions& options) {
    if (harmonic <= 0) {
        harmonic = layout.qubit_count() + 1;
    }
    const Parity parity = harmonic_parity(harmonic);
    const auto [lo, hi] = isolate_eigenvalue(layout, harmonic);

    const int samples = std::max(options.scan_samples, 3);
    const std::vector<double> det =
        options.parallel_scan ? kernels::scan_determinant_omp(layout, parity, lo, hi, samples)
                              : kernels::scan_determinant_serial(layout, parity, lo, hi, samples);

    ModeSolution mode;
    mode.layout = layout;
    mode.harmonic = harmonic;

    std::vector<int> brackets;
    for (int i = 0; i + 1 < samples; ++i) {
        const double a = det[static_cast<std::size_t>(i)];
        const double b = det[static_cast<std::size_t>(i + 1)];
        if (a == 0.0 || (a > 0.0) != (b > 0.0)) {
            brackets.push_back(i);
        }
    }

    auto trace = [&] {
        ScanTrace t{lo, hi, {}};
        const int stride = std::max(1, samples / 200);
        for (int i = 0; i < samples; i += stride) {
            t.samples.emplace_back(kernels::scan_abscissa(lo, hi, i, samples),
                                   det[static_cast<std::size_t>(i)]);
        }
        return t;
    };

    double j1 = 0.0;
    if (!brackets.empty()) {
        if (brackets.size() > 1) {
            mode.warnings.push_back("multiple determinant sign changes in isolating window");
        }
        const int i = brackets.front();
        const double a = kernels::scan_abscissa(lo, hi, i, samples);
        const double b = kernels::scan_abscissa(lo, hi, i + 1, samples);
        j1 = det[static_cast<std::size_t>(i)] == 0.0
                 ? a
                 : bisect_determinant(layout, parity, a, b, det[static_cast<std::size_t>(i)],
                                      options.relative_tolerance);
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < det.size(); ++i) {
            if (std::abs(det[i]) < std::abs(det[best])) {
                best = i;
            }
        }
        const int bi = static_cast<int>(best);
        const double a = kernels::scan_abscissa(lo, hi, std::max(bi - 1, 0), samples);
        const double b = kernels::scan_abscissa(lo, hi, std::min(bi + 1, samples - 1), samples);
        j1 = golden_section_sigma(layout, parity, a, b);
        const double ratio = singular_value_ratio(boundary_matrix(layout, j1, parity));
        if (ratio > 1e-8) {
            std::ostringstream msg;
            msg << "no root of the " << to_string(parity) << " boundary determinant for harmonic "
                << harmonic << " in [" << lo << ", " << hi << "]; min sigma ratio " << ratio;
            throw SolverError(msg.str(), trace());
        }
        mode.warnings.push_back("degenerate mode: determinant touches zero without changing sign");
    }

    // Null vector of the full system.
    const Eigen::MatrixXd full = full_boundary_matrix(layout, j1);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(full, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(full.cols() - 1);
    if (v(1) < 0.0) {
        v = -v;
    }
    const std::size_t n = layout.sectors.size();
    mode.coefficients.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        mode.coefficients[i] = {v(static_cast<Eigen::Index>(2 * i)),
                                v(static_cast<Eigen::Index>(2 * i + 1))};
    }
    const Normalization raw = normalization_constants(layout, j1, mode.coefficients);
    const double scale = 1.0 / std::sqrt(2.0 * raw.mu);
    for (auto& c : mode.coefficients) {
        c.value *= scale;
        c.flux *= scale;
    }
    const Normalization norm = normalization_constants(layout, j1, mode.coefficients);

    mode.j1 = j1;
    mode.j2 = j1 * std::sqrt(layout.loaded_ratio);
    mode.omega_r_over_omega0 = j1;
    mode.mu = norm.mu;
    mode.kappa = norm.kappa;
    mode.parity = classify_parity(layout, j1, mode.coefficients);
    mode.singular_value_ratio = singular_value_ratio(boundary_matrix(layout, j1, parity));
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 1e-8 * sv(0)) {
        mode.warnings.push_back("full boundary system is not numerically singular at the root");
    }
    if (mode.parity != parity) {
        mode.warnings.push_back("mode parity differs from the harmonic's uniform-limit parity");
    }
    for (int k = 0; k < layout.qubit_count(); ++k) {
        mode.gaps_delta.push_back(gap_from(layout, j1, mode.coefficients, mode.mu, k));
    }
    return mode;
}

std::vector<BranchStep> continue_branch(const SectorLayout& layout, int harmonic, int steps) {
    if (harmonic <= 0) {
        harmonic = layout.qubit_count() + 1;
    }
    steps = std::clamp(steps, 1, 50);
    const Parity parity = harmonic_parity(harmonic);
    const double target = layout.loaded_ratio;

    std::vector<BranchStep> path;
    path.push_back({1.0, static_cast<double>(harmonic), harmonic});
    double prev_ratio = 1.0;
    double prev_j = harmonic;
    constexpr int kSamples = 200;
    for (int s = 1; s <= steps; ++s) {
        const double ratio = std::pow(target, static_cast<double>(s) / steps);
        const SectorLayout step_layout = with_density_ratio(layout, ratio);
        const double drop = 1.0 / std::sqrt(ratio / prev_ratio);
        const double lo = prev_j * std::min(1.0, drop) * (1.0 - 1e-9);
        const double hi = prev_j * std::max(1.0, drop) * (1.0 + 1e-9);
        const std::vector<double> det =
            kernels::scan_determinant_serial(step_layout, parity, lo, hi, kSamples);

        double best = std::numeric_limits<double>::quiet_NaN();
        for (int i = 0; i + 1 < kSamples; ++i) {
            const double a = det[static_cast<std::size_t>(i)];
            const double b = det[static_cast<std::size_t>(i + 1)];
            if (a != 0.0 && (a > 0.0) == (b > 0.0)) {
                continue;
            }
            const double root = a == 0.0 ? kernels::scan_abscissa(lo, hi, i, kSamples)
                                         : bisect_determinant(step_layout, parity,
                                                              kernels::scan_abscissa(lo, hi, i, kSamples),
                                                              kernels::scan_abscissa(lo, hi, i + 1, kSamples),
                                                              a, 1e-13);
            if (std::isnan(best) || std::abs(root - prev_j) < std::abs(best - prev_j)) {
                best = root;
            }
        }
        if (std::isnan(best)) {
            ScanTrace t{lo, hi, {}};
            for (int i = 0; i < kSamples; ++i) {
                t.samples.emplace_back(kernels::scan_abscissa(lo, hi, i, kSamples),
                                       det[static_cast<std::size_t>(i)]);
            }
            throw SolverError("branch lost during continuation at c'/c = " + std::to_string(ratio),
                              std::move(t));
        }
        // Sturm index of the root: eigenvalues strictly below it, plus one.
        const int index = oscillation_count(step_layout, best * (1.0 - 1e-10)) + 1;
        path.push_back({ratio, best, index});
        prev_ratio = ratio;
        prev_j = best;
    }
    return path;
}

}  // namespace fluxqed

#include "fluxqed/two_qubit.hpp"

#include <cmath>
#include <complex>
#include <algorithm>
#include <numbers>

namespace fluxqed {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

}  // namespace

const char* to_string(InteractionSign s) {
    switch (s) {
    case InteractionSign::ferromagnetic:
        return "ferromagnetic";
    case InteractionSign::antiferromagnetic:
        return "antiferromagnetic";
    case InteractionSign::resonant:
        return "resonant";
    }
    return "resonant";
}

const char* to_string(TwoQubitRegime r) {
    switch (r) {
    case TwoQubitRegime::perturbative:
        return "perturbative";
    case TwoQubitRegime::resonant:
        return "resonant";
    case TwoQubitRegime::saturated:
        return "saturated";
    }
    return "resonant";
}

Eigen::Matrix3cd two_qubit_block(double Delta, double g) {
    Eigen::Matrix3cd h;
    h << -Delta, -kI * g, -kI * g,
         kI * g, 0.0, 0.0,
         kI * g, 0.0, 0.0;
    return h;
}

Eigen::Matrix3cd two_qubit_block(double Delta_1, double g_1, double Delta_2, double g_2) {
    // Mirror-site gaps from the null vector agree to about 1e-12, not bitwise.
    const auto differs = [](double a, double b) {
        return std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (differs(Delta_1, Delta_2) || differs(g_1, g_2)) {
        throw UnsupportedQubits("two-qubit block requires identical qubits (equal Delta and g)");
    }
    return two_qubit_block(Delta_1, g_1);
}

Eigen::Matrix3cd transformation_u2(double phi) {
    const double c = std::cos(phi);
    const Complex s = -kI * std::sin(phi) / std::numbers::sqrt2;
    Eigen::Matrix3cd u;
    u << c, s, s,
         s, 0.5 * (1.0 + c), 0.5 * (c - 1.0),
         s, 0.5 * (c - 1.0), 0.5 * (1.0 + c);
    return u;
}

double solve_phi(double Delta, double g) {
    if (Delta == 0.0) {
        if (g == 0.0) {
            throw std::domain_error("rotation angle undefined for g = Delta = 0");
        }
        return std::numbers::pi / 4.0;
    }
    return 0.5 * std::atan(2.0 * std::numbers::sqrt2 * g / Delta);
}

Eigen::Matrix3cd transformed_block(double Delta, double g) {
    const Eigen::Matrix3cd u = transformation_u2(solve_phi(Delta, g));
    return u.adjoint() * two_qubit_block(Delta, g) * u;
}

double j_exact(double Delta, double g) {
    if (Delta == 0.0) {
        return g / std::numbers::sqrt2;
    }
    // (g/sqrt2) tan(phi) with tan(phi) = t / (1 + sqrt(1 + t^2)), t = 2 sqrt2 g / Delta.
    const double root = std::sqrt(0.25 * Delta * Delta + 2.0 * g * g);
    return std::copysign(1.0, Delta) * g * g / (root + 0.5 * std::abs(Delta));
}

DispersiveJ dispersive_j(double g_1, double g_2, double Delta_1, double Delta_2) {
    if (Delta_1 == 0.0 || Delta_2 == 0.0) {
        throw std::domain_error("dispersive exchange undefined at Delta = 0; use j_exact");
    }
    DispersiveJ r;
    r.J = 0.5 * g_1 * g_2 * (1.0 / Delta_1 + 1.0 / Delta_2);
    r.outside_dispersive_regime =
        std::abs(g_1) > 0.1 * std::abs(Delta_1) || std::abs(g_2) > 0.1 * std::abs(Delta_2);
    return r;
}

InteractionSign classify_interaction(double J, double Delta) {
    if (Delta == 0.0) {
        return InteractionSign::resonant;
    }
    return J > 0.0 ? InteractionSign::antiferromagnetic : InteractionSign::ferromagnetic;
}

TwoQubitRegime classify_two_qubit_regime(double Delta, double g) {
    if (Delta == 0.0) {
        return TwoQubitRegime::saturated;
    }
    const double ratio = std::abs(g) / std::abs(Delta);
    if (ratio <= 0.1) {
        return TwoQubitRegime::perturbative;
    }
    if (ratio >= 10.0) {
        return TwoQubitRegime::saturated;
    }
    return TwoQubitRegime::resonant;
}

TwoQubitResult analyze_two_qubit(double Delta, double g) {
    TwoQubitResult r;
    r.Delta = Delta;
    r.g = g;
    r.phi = solve_phi(Delta, g);
    r.J = j_exact(Delta, g);
    r.sign = classify_interaction(r.J, Delta);
    r.regime = classify_two_qubit_regime(Delta, g);
    return r;
}

}  // namespace fluxqed

#pragma once

#include <cmath>
#include <stdexcept>

#include "casimech/constants.hpp"
#include "casimech/math_util.hpp"

namespace casimech {

/// Attractive static force between the mirrors (SI, N):
/// F = -hbar pi c / (24 L^2).
inline double casimir_static(double L) {
    return -hbar * M_PI * speed_of_light / (24.0 * L * L);
}

/// Vacuum radiation pressure sum_n hbar w_n / (2L) regularized with the
/// exponential cutoff e^{-gamma w_n}; alpha = gamma pi c / L.
inline double regularized_vacuum_force(double L, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("cutoff gamma must be > 0");
    const double alpha = gamma * M_PI * speed_of_light / L;
    const double ea = std::exp(alpha);
    const double em = std::expm1(alpha);
    return hbar * M_PI * speed_of_light / (2.0 * L * L) * ea / (em * em);
}

/// Static force recovered from the regularized sum: the divergent 1/alpha^2
/// Laurent term is subtracted and the cutoff removed by Richardson
/// extrapolation in gamma.
inline double casimir_static_regularized(double L, double gamma0 = 0.0,
                                         int levels = 4) {
    // Larger alpha_0 / fewer levels beat round-off: the subtraction of the
    // 1/alpha^2 Laurent term loses digits as the cutoff is pushed down.
    if (gamma0 <= 0.0) gamma0 = 0.1 * L / (M_PI * speed_of_light);
    auto f = [L](double gamma) {
        const double alpha = gamma * M_PI * speed_of_light / L;
        return regularized_vacuum_force(L, gamma) -
               hbar * M_PI * speed_of_light / (2.0 * L * L) / (alpha * alpha);
    };
    return richardson(f, gamma0, levels);
}

enum class ForceMode {
    retuned, // the drive tracks the resonance: w = 2 w_1(L) at every L
    fixed    // w and w_k stay at their values for the reference length
};

/// Total averaged force on the wall at degenerate resonance with the lowest
/// mode (SI, N). nbar_b is the effective phonon number
/// N_b(0) + g^2/4 + g |beta| sin theta, tau the averaging time, M the mirror
/// mass. L_ref is only used in fixed mode.
inline double casimir_force(double L, double tau, double nbar_b, double M,
                            ForceMode mode = ForceMode::retuned,
                            double L_ref = 0.0) {
    if (!(L > 0.0) || !(M > 0.0) || !(tau >= 0.0) || !(nbar_b >= 0.0))
        throw std::invalid_argument("casimir_force: invalid parameters");
    const double Lw = (mode == ForceMode::retuned) ? L : L_ref;
    if (!(Lw > 0.0))
        throw std::invalid_argument("casimir_force: fixed mode needs L_ref > 0");
    const double wk = M_PI * speed_of_light / Lw; // lowest mode
    const double w = 2.0 * wk;
    const double eps2 = hbar / (2.0 * M * w) / (L * L);
    return casimir_static(L) +
           2.0 / 3.0 * nbar_b * eps2 * hbar * wk * wk * wk * tau * tau / L;
}

/// Length at which the averaged force changes sign in retuned mode:
/// L_c = (4 pi Nbar_b c hbar tau^2 / M)^{1/3}.
inline double critical_length(double tau, double nbar_b, double M) {
    return std::cbrt(4.0 * M_PI * nbar_b * speed_of_light * hbar * tau * tau / M);
}

/// Location and value of the force minimum in retuned mode:
/// L_min = (5/2)^{1/3} L_c, F(L_min) = -hbar pi c / (40 L_min^2).
inline double minimum_force_length(double tau, double nbar_b, double M) {
    return std::cbrt(2.5) * critical_length(tau, nbar_b, M);
}

inline double minimum_force(double tau, double nbar_b, double M) {
    const double Lm = minimum_force_length(tau, nbar_b, M);
    return -hbar * M_PI * speed_of_light / (40.0 * Lm * Lm);
}

} // namespace casimech

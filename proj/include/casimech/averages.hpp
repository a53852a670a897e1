#pragma once

#include <cmath>

#include "casimech/math_util.hpp"
#include "casimech/system.hpp"

namespace casimech {

/// Time average <f>_tau = (1/tau) int_0^tau f(t) dt by quadrature.
template <typename F>
double time_average(const F& f, double tau, double abs_tol = 1e-10) {
    return integrate(f, 0.0, tau, abs_tol * tau) / tau;
}

/// Closed-form average of the second-order wall displacement at degenerate
/// resonance: <x~2>_tau = mu_k^2 (1 - cos(2 w_k tau) / 2). Non-negative for
/// all tau: the radiation pressure pushes the wall outwards on average.
inline double wall_order2_avg(const SystemConfig& sys, double tau) {
    const double wk = sys.mode_freq(sys.initial.k);
    const double mu2 = sys.initial.mu_k * sys.initial.mu_k;
    return mu2 * (1.0 - 0.5 * std::cos(2.0 * wk * tau));
}

/// Excitation bookkeeping N_k + 2 N_b at degenerate resonance without a
/// mechanical drive; conserved through second order in eps.
inline double excitation_balance(const SystemConfig& sys, double nk, double nb) {
    (void)sys;
    return nk + 2.0 * nb;
}

} // namespace casimech

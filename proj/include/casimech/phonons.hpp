#pragma once

#include <cmath>
#include <complex>

#include "casimech/aux_functions.hpp"
#include "casimech/system.hpp"

namespace casimech {

/// Zero-order phonon number, time resolved: the coherent amplitude displaced
/// by the integrated mechanical drive,
/// N_b^0(t) = |beta + Lambda_pb - i Lambda_xb|^2 + sinh^2 r + N_T cosh 2r.
/// For the smooth-ramp drive at Omega t >> 1 this settles to
/// N_b(0) + g |beta| sin theta + g^2 / 4.
inline double phonon_order0_t(const SystemConfig& sys, double t) {
    const LambdaPair L = lambda_mech(sys, t);
    const std::complex<double> beta =
        sys.initial.beta_mag *
        std::exp(std::complex<double>(0.0, sys.initial.theta));
    const double sh = std::sinh(sys.initial.squeeze_r);
    return std::norm(beta + std::complex<double>(L.p, -L.x)) + sh * sh +
           sys.n_T * std::cosh(2.0 * sys.initial.squeeze_r);
}

/// Zero-order phonon number at degenerate resonance:
/// N_b^0 = N_b(0) + g |beta| sin theta + g^2 / 4.
inline double phonon_order0(const SystemConfig& sys) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    return sys.n_mech0 + g * sys.initial.beta_mag * std::sin(sys.initial.theta) +
           g * g / 4.0;
}

/// First-order phonon correction at degenerate resonance:
/// N_b^1 = (mu_k^2 q_k t / 2)(2 |beta| sin theta + g); each created photon
/// pair costs one phonon, so this balances the first-order photon change.
inline double phonon_order1_resonant(const SystemConfig& sys, double t) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double mu2 = sys.initial.mu_k * sys.initial.mu_k;
    return mu2 * sys.q_self(sys.initial.k) * t / 2.0 *
           (2.0 * sys.initial.beta_mag * std::sin(sys.initial.theta) + g);
}

/// Second-order phonon correction at degenerate resonance with the field in
/// vacuum: N_b^2 = -N_b(0) q_k^2 t^2 / 2.
inline double phonon_order2_resonant(const SystemConfig& sys, double t) {
    const double qk = sys.q_self(sys.initial.k);
    return -sys.n_mech0 * qk * qk * t * t / 2.0;
}

} // namespace casimech

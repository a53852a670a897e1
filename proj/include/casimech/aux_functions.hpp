#pragma once

#include <cmath>
#include <complex>

#include "casimech/math_util.hpp"
#include "casimech/system.hpp"

namespace casimech {

/// Integrated drive amplitudes in the co-rotating frame of one oscillator:
///   Lambda_x + i Lambda_p = int_0^t (lambda_x - i lambda_p) e^{i omega_f t'} dt',
/// with omega_f the frame frequency of that oscillator (its own frequency: the
/// mechanical one for the wall, the mode frequency for a cavity mode). All
/// quantities dimensionless.
struct LambdaPair {
    double x = 0.0;
    double p = 0.0;
    double minus() const { return x - p; }
};

inline LambdaPair big_lambda(const SystemConfig& sys, DriveTarget target,
                             double omega_frame, double t) {
    const DriveProfile* d = sys.drive_for(target);
    if (!d || t == 0.0) return {};
    using cplx = std::complex<double>;
    if (d->form == DriveForm::exdr_ramp) {
        // lambda_x - i lambda_p = -(g W / 2) e^{-W t} e^{-i w t}, so the
        // integral has the closed form below.
        const double W = d->Omega / sys.freq_scale;
        const double w = sys.omega_mech;
        const cplx s(-W, omega_frame - w);
        const cplx val = -(d->g * W / 2.0) * (std::exp(s * t) - 1.0) / s;
        return {val.real(), val.imag()};
    }
    const cplx val = integrate<cplx>(
        [&](double tp) {
            const auto [lx, lp] = d->tabulated(tp);
            return cplx(lx, -lp) * std::exp(cplx(0.0, omega_frame * tp));
        },
        0.0, t, 1e-12);
    return {val.real(), val.imag()};
}

inline LambdaPair lambda_mech(const SystemConfig& sys, double t) {
    return big_lambda(sys, DriveTarget::mechanical, sys.omega_mech, t);
}

inline LambdaPair lambda_mode(const SystemConfig& sys, int n, double t) {
    DriveTarget tgt;
    if (n == sys.initial.k)
        tgt = DriveTarget::mode_k;
    else if (n == sys.initial.kp)
        tgt = DriveTarget::mode_kp;
    else
        return {};
    return big_lambda(sys, tgt, sys.mode_freq(n), t);
}

/// Drive-induced displacement of the wall:
/// xi(t) = cos(w t) Lambda_pb - sin(w t) Lambda_xb.
inline double xi(const SystemConfig& sys, double t) {
    if (!sys.drive_for(DriveTarget::mechanical)) return 0.0;
    const LambdaPair L = lambda_mech(sys, t);
    const double w = sys.omega_mech;
    return std::cos(w * t) * L.p - std::sin(w * t) * L.x;
}

/// Drive-induced quadrature displacement of cavity mode n:
/// psi_n(t) = cos(w_n t) Lambda_pn + sin(w_n t) Lambda_xn.
inline double psi(const SystemConfig& sys, int n, double t) {
    const LambdaPair L = lambda_mode(sys, n, t);
    const double wn = sys.mode_freq(n);
    return std::cos(wn * t) * L.p + std::sin(wn * t) * L.x;
}

/// Scalar (c-number) part of the transformed interaction Hamiltonian that the
/// cavity drives generate on modes k and k'.
inline double vartheta(const SystemConfig& sys, double t) {
    const int k = sys.initial.k, kp = sys.initial.kp;
    const double wk = sys.mode_freq(k), wkp = sys.mode_freq(kp);
    const LambdaPair Lk = lambda_mode(sys, k, t);
    const LambdaPair Lkp = lambda_mode(sys, kp, t);
    const double sk = Lk.x * Lk.x + Lk.p * Lk.p;
    const double skp = Lkp.x * Lkp.x + Lkp.p * Lkp.p;
    double v = -wk * sk - 2.0 * wk * std::sin(2.0 * wk * t) * Lk.p * Lk.x -
               wk * std::cos(2.0 * wk * t) * sk;
    v += -wkp * skp - 2.0 * wkp * std::sin(2.0 * wkp * t) * Lkp.p * Lkp.x -
         wkp * std::cos(2.0 * wkp * t) * skp;
    const double sign = ((k + kp) % 2 == 0) ? 1.0 : -1.0;
    v += sign * 4.0 * std::sqrt(wk * wkp) *
         (std::sin(wk * t) * std::sin(wkp * t) * Lkp.x * Lkp.x +
          std::cos(wk * t) * std::cos(wkp * t) * Lkp.p * Lkp.p);
    return v;
}

} // namespace casimech

#pragma once

#include <cmath>
#include <complex>

#include "casimech/aux_functions.hpp"
#include "casimech/math_util.hpp"
#include "casimech/system.hpp"

namespace casimech {

/// First-order wall displacement (in units of delta_L0):
/// x~1 = 2|beta| cos(w t - theta) + 2 xi(t).
inline double wall_order1(const SystemConfig& sys, double t) {
    const double w = sys.omega_mech;
    return 2.0 * sys.initial.beta_mag * std::cos(w * t - sys.initial.theta) +
           2.0 * xi(sys, t);
}

/// Second-order wall displacement, resonant closed form at w = 2 w_k.
inline double wall_order2_resonant(const SystemConfig& sys, double t) {
    const double wk = sys.mode_freq(sys.initial.k);
    const double mu2 = sys.initial.mu_k * sys.initial.mu_k;
    return mu2 * (1.0 - std::cos(2.0 * wk * t) + wk * t * std::sin(2.0 * wk * t));
}

namespace detail {

template <typename F>
std::complex<double> osc_integral(const F& f, double a, double t) {
    using cplx = std::complex<double>;
    return integrate<cplx>(
        [&](double tp) { return f(tp) * std::exp(cplx(0.0, a * tp)); }, 0.0, t,
        1e-10);
}

} // namespace detail

/// Second-order wall displacement without resonance assumptions, including the
/// cavity-drive contributions (evaluated by quadrature).
inline double wall_order2_full(const SystemConfig& sys, double t) {
    using cplx = std::complex<double>;
    const int k = sys.initial.k, kp = sys.initial.kp;
    const double wk = sys.mode_freq(k), wkp = sys.mode_freq(kp);
    const double w = sys.omega_mech;
    const double muk = sys.initial.mu_k, mukp = sys.initial.mu_kp;
    const double qk = sys.q_self(k), qkp = sys.q_self(kp);
    const double qkk = sys.q_cross(k, kp);
    const double sgn = ((k + kp) % 2 == 0) ? 1.0 : -1.0;

    auto self_block = [&](double wn, double qn, double mun) {
        return (qn * mun * mun * t / 2.0) *
               (w * t * sinc(w * t / 2.0) * sinc(w * t / 2.0) +
                std::sin((2.0 * wn - w) * t / 2.0) * sinc((2.0 * wn + w) * t / 2.0) +
                std::sin((2.0 * wn + w) * t / 2.0) * sinc((2.0 * wn - w) * t / 2.0));
    };
    double x = self_block(wk, qk, muk) + self_block(wkp, qkp, mukp);

    x -= sgn * qkk * muk * mukp * t *
         (std::sin((wk - wkp + w) * t / 2.0) * sinc((wk - wkp - w) * t / 2.0) +
          std::sin((wk - wkp - w) * t / 2.0) * sinc((wk - wkp + w) * t / 2.0) +
          std::sin((wk + wkp - w) * t / 2.0) * sinc((wk + wkp + w) * t / 2.0) +
          std::sin((wk + wkp + w) * t / 2.0) * sinc((wk + wkp - w) * t / 2.0));

    const bool driven_modes = sys.drive_for(DriveTarget::mode_k) ||
                              sys.drive_for(DriveTarget::mode_kp);
    const bool driven_mech = sys.drive_for(DriveTarget::mechanical) != nullptr;
    if (driven_modes) {
        const cplx ew = std::exp(cplx(0.0, w * t));
        auto psi_k = [&](double tp) { return psi(sys, k, tp); };
        auto psi_kp = [&](double tp) { return psi(sys, kp, tp); };
        cplx z{};
        z += mukp * (ew * detail::osc_integral(psi_k, wkp - w, t) -
                     std::conj(ew * detail::osc_integral(psi_k, wkp - w, t)) +
                     ew * detail::osc_integral(psi_k, wkp + w, t) -
                     std::conj(ew * detail::osc_integral(psi_k, wkp + w, t)));
        z += muk * (ew * detail::osc_integral(psi_kp, wk - w, t) -
                    std::conj(ew * detail::osc_integral(psi_kp, wk - w, t)) +
                    ew * detail::osc_integral(psi_kp, wk + w, t) -
                    std::conj(ew * detail::osc_integral(psi_kp, wk + w, t)));
        x += (cplx(0.0, 1.0) * sgn * qkk * z).real();

        auto drive_block = [&](int n, double wn, double qn, double mun) {
            auto Lp = [&](double tp) { return lambda_mode(sys, n, tp).p; };
            auto Lm = [&](double tp) { return lambda_mode(sys, n, tp).minus(); };
            cplx r = cplx(0.0, 1.0) *
                     (std::conj(ew) * detail::osc_integral(Lp, w, t) -
                      ew * detail::osc_integral(Lp, -w, t));
            r += 0.5 * (std::conj(ew) * detail::osc_integral(Lm, 2.0 * wn + w, t) +
                        ew * detail::osc_integral(Lm, 2.0 * wn + w, t) -
                        std::conj(ew) * detail::osc_integral(Lm, -(2.0 * wn - w), t) -
                        ew * detail::osc_integral(Lm, 2.0 * wn - w, t));
            return (mun * qn * r).real();
        };
        x += drive_block(k, wk, qk, muk);
        x += drive_block(kp, wkp, qkp, mukp);

        auto th = [&](double tp) { return vartheta(sys, tp); };
        const cplx zt = ew * detail::osc_integral(th, -w, t) -
                        std::conj(ew) * detail::osc_integral(th, w, t);
        x += (zt / cplx(0.0, 2.0)).real();
    }
    (void)driven_mech;
    return 2.0 * x;
}

/// Third-order wall displacement at degenerate resonance with the field in
/// vacuum; g is the mechanical drive amplitude (0 without drive).
inline double wall_order3_resonant(const SystemConfig& sys, double t) {
    const double wk = sys.mode_freq(sys.initial.k);
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    return -(wk * wk * t * t / 4.0) *
           (2.0 * sys.initial.beta_mag * std::cos(2.0 * wk * t - sys.initial.theta) +
            g * std::sin(2.0 * wk * t));
}

/// Amplitude decay factor at degenerate resonance,
/// Gamma_k = 1 - eps^2 w_k^2 t^2 / 4; valid while 1 - Gamma_k << 1.
inline double gamma_decay(const SystemConfig& sys, double t) {
    const double wk = sys.mode_freq(sys.initial.k);
    const double u = sys.epsilon * wk * t;
    return 1.0 - u * u / 4.0;
}

/// x(t)/L assembled from the resonant closed forms through third order.
inline double wall_position(const SystemConfig& sys, double t) {
    const double e = sys.epsilon;
    return 1.0 + e * wall_order1(sys, t) + e * e * wall_order2_resonant(sys, t) +
           e * e * e * wall_order3_resonant(sys, t);
}

/// x(t)/L at degenerate resonance with the field in vacuum, resummed with the
/// decay factor Gamma_k.
inline double wall_position_gamma(const SystemConfig& sys, double t) {
    const double wk = sys.mode_freq(sys.initial.k);
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double G = gamma_decay(sys, t);
    const double b = sys.initial.beta_mag, th = sys.initial.theta;
    return 1.0 +
           sys.epsilon * G *
               (2.0 * b * std::cos(th) * std::cos(2.0 * wk * t) +
                (g + 2.0 * b * std::sin(th)) * std::sin(2.0 * wk * t));
}

} // namespace casimech

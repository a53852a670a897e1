#pragma once

#include <cmath>
#include <complex>

#include "casimech/aux_functions.hpp"
#include "casimech/math_util.hpp"
#include "casimech/system.hpp"

namespace casimech {

/// Zero-order photon number of mode n: the initial coherent population plus
/// the direct excitation by a cavity drive,
/// N^0 = (mu_n + Lambda_pn)^2 + Lambda_xn^2.
inline double photon_order0(const SystemConfig& sys, int n, double t) {
    double mu = 0.0;
    if (n == sys.initial.k) mu = sys.initial.mu_k;
    else if (n == sys.initial.kp) mu = sys.initial.mu_kp;
    const LambdaPair L = lambda_mode(sys, n, t);
    return (mu + L.p) * (mu + L.p) + L.x * L.x;
}

/// First-order correction at degenerate resonance (w = 2 w_k), no cavity
/// drives: N^1 = -mu_k^2 q_k t (2 |beta| sin theta + g).
inline double photon_order1_resonant(const SystemConfig& sys, double t) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double mu2 = sys.initial.mu_k * sys.initial.mu_k;
    return -mu2 * sys.q_self(sys.initial.k) * t *
           (2.0 * sys.initial.beta_mag * std::sin(sys.initial.theta) + g);
}

/// First-order correction at nondegenerate resonance (w = w_k + w_k'):
/// N^1 = (-1)^{1+k+k'} mu_k mu_k' q_kk' t (2 |beta| sin theta + g).
inline double photon_order1_nondegenerate(const SystemConfig& sys, double t) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double sgn = ((1 + sys.initial.k + sys.initial.kp) % 2 == 0) ? 1.0 : -1.0;
    return sgn * sys.initial.mu_k * sys.initial.mu_kp *
           sys.q_cross(sys.initial.k, sys.initial.kp) * t *
           (2.0 * sys.initial.beta_mag * std::sin(sys.initial.theta) + g);
}

/// Full first-order correction to N_k: no resonance assumptions, all drives
/// and both coherent cavity modes included. Integrals by quadrature.
inline double photon_order1_full(const SystemConfig& sys, double t) {
    const int k = sys.initial.k, kp = sys.initial.kp;
    const double wk = sys.mode_freq(k), wkp = sys.mode_freq(kp);
    const double w = sys.omega_mech;
    const double muk = sys.initial.mu_k, mukp = sys.initial.mu_kp;
    const double b = sys.initial.beta_mag, th = sys.initial.theta;
    const double qk = sys.q_self(k);
    const double qkk = sys.q_cross(k, kp);
    const double sgn = ((k + kp) % 2 == 0) ? 1.0 : -1.0;
    const double tol = 1e-10;

    auto XI = [&](double tp) { return xi(sys, tp); };

    double N = 0.0;
    // Back reaction of the wall motion on the resonantly squeezed mode.
    N += -2.0 * muk * muk * qk *
         (b * t * std::sin(((2.0 * wk + w) * t - 2.0 * th) / 2.0) *
              sinc((2.0 * wk + w) * t / 2.0) +
          b * t * std::sin(((2.0 * wk - w) * t + 2.0 * th) / 2.0) *
              sinc((2.0 * wk - w) * t / 2.0) +
          2.0 * integrate([&](double tp) { return XI(tp) * std::sin(2.0 * wk * tp); },
                          0.0, t, tol));

    // Intermode exchange between the two coherent modes.
    N += sgn * qkk * muk * mukp *
         (4.0 * integrate(
                    [&](double tp) {
                        return XI(tp) * std::sin(wkp * tp) * std::cos(wk * tp);
                    },
                    0.0, t, tol) +
          b * t *
              (std::sin(((wk + wkp + w) * t - 2.0 * th) / 2.0) *
                   sinc((wk + wkp + w) * t / 2.0) +
               std::sin(((wk + wkp - w) * t + 2.0 * th) / 2.0) *
                   sinc((wk + wkp - w) * t / 2.0) +
               2.0 * std::cos((w * t - 2.0 * th) / 2.0) *
                   std::sin((wk - wkp) * t / 2.0) *
                   (sinc((wk - wkp + w) * t / 2.0) +
                    sinc((wk - wkp - w) * t / 2.0))));

    // Cross terms between the wall motion and the drive on mode k'.
    N += 4.0 * sgn * qkk * muk *
         integrate(
             [&](double tp) {
                 return std::sin(wk * tp) * psi(sys, kp, tp) *
                        (2.0 * b * std::cos(w * tp - th) + XI(tp));
             },
             0.0, t, tol);

    // Cross terms between the wall motion and the drive on mode k.
    N += 4.0 * qk * muk *
         integrate(
             [&](double tp) {
                 const LambdaPair L = lambda_mode(sys, k, tp);
                 const double c = std::cos(w * tp - th);
                 return b * L.x * c + b * L.minus() * std::cos(2.0 * wk * tp) * c +
                        L.minus() * XI(tp) * std::cos(2.0 * wk * tp) -
                        L.x * XI(tp);
             },
             0.0, t, tol);

    const LambdaPair Lk_t = lambda_mode(sys, k, t);
    if (Lk_t.x != 0.0 || sys.drive_for(DriveTarget::mode_k)) {
        double brace = 0.0;
        brace += 2.0 * muk * qk * t * b * std::cos((w * t - 2.0 * th) / 2.0) *
                 sinc(w * t / 2.0);
        brace += 2.0 * muk * qk *
                 integrate([&](double tp) { return XI(tp); }, 0.0, t, tol);
        brace += 2.0 * muk * qk *
                 integrate(
                     [&](double tp) { return XI(tp) * std::cos(2.0 * wk * tp); },
                     0.0, t, tol);
        brace += muk * b * qk * t *
                 (std::cos(((2.0 * wk + w) * t + 2.0 * th) / 2.0) *
                      sinc((2.0 * wk + w) * t / 2.0) +
                  std::cos(((2.0 * wk - w) * t - 2.0 * th) / 2.0) *
                      sinc((2.0 * wk - w) * t / 2.0));
        brace += sgn * mukp * qkk *
                 (b * t *
                      (sinc((wk + wkp + w) * t / 2.0) *
                           std::cos(((wk + wkp + w) * t + 2.0 * th) / 2.0) +
                       sinc((wk - wkp + w) * t / 2.0) *
                           std::cos(((wk - wkp + w) * t + 2.0 * th) / 2.0) +
                       sinc((wk - wkp - w) * t / 2.0) *
                           std::cos(((wk - wkp - w) * t - 2.0 * th) / 2.0) +
                       sinc((wk + wkp - w) * t / 2.0) *
                           std::cos(((wk + wkp - w) * t + 2.0 * th) / 2.0)) +
                  8.0 * integrate(
                            [&](double tp) {
                                return XI(tp) * std::cos(wk * tp) * std::cos(wkp * tp);
                            },
                            0.0, t, tol));
        brace += -2.0 * sgn * qkk *
                 integrate(
                     [&](double tp) {
                         return psi(sys, kp, tp) *
                                (4.0 * b * std::cos(wk * tp) * std::cos(w * tp - th) +
                                 XI(tp) * std::cos(wk * tp));
                     },
                     0.0, t, tol);
        brace += 2.0 * qk *
                 integrate(
                     [&](double tp) {
                         const LambdaPair L = lambda_mode(sys, k, tp);
                         return L.p * (b * std::cos(w * tp - th) + XI(tp)) +
                                L.minus() * std::sin(2.0 * wk * tp) *
                                    (2.0 * b * std::cos(w * tp - th) + XI(tp));
                     },
                     0.0, t, tol);
        N += -2.0 * Lk_t.x * brace;
    }
    return N;
}

/// Second-order photon number in mode k, field initially in vacuum, broken
/// down by physical origin of each term.
struct PhotonBreakdown {
    double n_beta = 0.0;  // coherent wall oscillation (DCE channel)
    double n_vac = 0.0;   // mechanical vacuum fluctuations
    double n_sq = 0.0;    // mechanical squeezing
    double n_T = 0.0;     // mechanical thermal occupation
    double n_sqT = 0.0;   // squeezing-thermal interplay
    double n_md = 0.0;    // mechanical drive
    double tail = 0.0;    // estimated truncated part of the mode sums
    double total() const { return n_beta + n_vac + n_sq + n_T + n_sqT + n_md; }
};

namespace detail {

struct SincPair {
    double minus, plus;
};

inline SincPair sinc_pair(double wsum, double w, double t) {
    return {sinc((wsum - w) * t / 2.0), sinc((wsum + w) * t / 2.0)};
}

} // namespace detail

/// Bare coherent-channel coefficient Delta N_beta of the second-order photon
/// number (independent of |beta|); the quantity scanned against the wall
/// frequency to locate the resonances.
inline double photon_delta_n_beta(const SystemConfig& sys, int k, double t) {
    const double w = sys.omega_mech;
    const double wk = sys.mode_freq(k);
    const double qk = sys.q_self(k);
    const double cth = std::cos(w * t - 2.0 * sys.initial.theta);
    double dn;
    {
        const auto [sm, sp] = detail::sinc_pair(2.0 * wk, w, t);
        dn = 2.0 * sm * sm + 2.0 * sp * sp + 4.0 * sp * sm * cth;
    }
    for (int n = 1; n <= sys.cavity.num_modes; ++n) {
        if (n == k) continue;
        const double q = sys.q_cross(k, n);
        const double rn = q * q / (qk * qk);
        const auto [sm, sp] = detail::sinc_pair(wk + sys.mode_freq(n), w, t);
        dn += 2.0 * rn * (sm * sm + sp * sp + 2.0 * sm * sp * cth);
    }
    return dn;
}

inline PhotonBreakdown photon_order2(const SystemConfig& sys, int k, double t) {
    using cplx = std::complex<double>;
    const double w = sys.omega_mech;
    const double wk = sys.mode_freq(k);
    const double qk = sys.q_self(k);
    const double b = sys.initial.beta_mag, th = sys.initial.theta;
    const double r = sys.initial.squeeze_r, phi = sys.initial.squeeze_phi;
    const double NT = sys.n_T;
    const double shr = std::sinh(r), chr = std::cosh(r);
    const double cth = std::cos(w * t - 2.0 * th);
    const double cphi = std::cos(w * t - phi);

    double dn_beta = 0.0, dn_vac = 0.0, dn_sq = 0.0, dn_T = 0.0, dn_sqT = 0.0;
    {
        const auto [sm, sp] = detail::sinc_pair(2.0 * wk, w, t);
        dn_beta = 2.0 * sm * sm + 2.0 * sp * sp + 4.0 * sp * sm * cth;
        dn_vac = 2.0 * sp * sp;
        dn_sq = 2.0 * (sp * sp + sm * sm) * shr - 4.0 * chr * sp * sm * cphi;
        dn_T = 2.0 * (sp * sp + sm * sm);
        dn_sqT = 4.0 * shr * (sp * sp + sm * sm) - 4.0 * chr * sp * sm * cphi;
    }
    // The intermode sums carry the coupling ratio (q_kn / q_k)^2, which is
    // w_n / w_k for the massless field, with weight 2: this is what the exact
    // truncated-basis evolution gives at a two-mode resonance, and it is the
    // weight required for the nondegenerate time average q_kk'^2 tau^2 / 3.
    auto ratio = [&](int n) {
        const double q = sys.q_cross(k, n);
        return q * q / (qk * qk);
    };
    auto add_mode = [&](int n, double weight) {
        const double rn = ratio(n);
        const auto [sm, sp] = detail::sinc_pair(wk + sys.mode_freq(n), w, t);
        dn_beta += weight * rn * (sm * sm + sp * sp + 2.0 * sm * sp * cth);
        dn_vac += weight * rn * sp * sp;
        dn_sq += weight * rn * ((sm * sm + sp * sp) * shr - 2.0 * sm * sp * chr * cphi);
        dn_T += weight * rn * (sm * sm + sp * sp);
        dn_sqT += weight * rn *
                  (2.0 * shr * (sm * sm + sp * sp) - 4.0 * chr * sm * sp * cphi);
    };
    for (int n = 1; n <= sys.cavity.num_modes; ++n)
        if (n != k) add_mode(n, 2.0);

    PhotonBreakdown out;
    const double pre = qk * qk * t * t / 2.0;
    out.n_beta = pre * b * b * dn_beta;
    out.n_vac = pre * dn_vac;
    out.n_sq = pre * shr * dn_sq;
    out.n_T = pre * NT * dn_T;
    out.n_sqT = pre * NT * shr * dn_sqT;

    // Tail of the truncated mode sums, estimated by continuing the summands
    // with sin^2 -> 1/2 smoothing over two further decades of modes.
    {
        const double weight = b * b + shr * shr + NT + 2.0 * NT * shr * shr + 1.0;
        double tail = 0.0;
        for (int n = sys.cavity.num_modes + 1; n <= 100 * sys.cavity.num_modes; ++n) {
            const double wn = sys.mode_freq(n);
            const double am = (wk + wn - w) * t / 2.0, ap = (wk + wn + w) * t / 2.0;
            tail += 2.0 * ratio(n) * 0.5 * (1.0 / (am * am) + 1.0 / (ap * ap));
        }
        out.tail = pre * weight * tail;
    }

    // Mechanical-drive contribution.
    if (sys.drive_for(DriveTarget::mechanical)) {
        auto I = [&](double a) {
            return integrate<cplx>(
                [&](double tp) { return xi(sys, tp) * std::exp(cplx(0.0, a * tp)); },
                0.0, t, 1e-10);
        };
        const cplx beta = b * std::exp(cplx(0.0, th));
        auto md_pair = [&](double wsum, double q2, double pref) {
            const auto [sm, sp] = detail::sinc_pair(wsum, w, t);
            const cplx phase_p = std::exp(cplx(0.0, (wsum + w) * t / 2.0));
            const cplx phase_m = std::exp(cplx(0.0, (wsum - w) * t / 2.0));
            const cplx A = I(-wsum) * (sp * phase_p + sm * phase_m);
            const cplx Ineg = I(wsum);
            return pref * q2 * t * 2.0 * (beta * A).real() +
                   2.0 * pref * q2 * std::norm(Ineg);
        };
        double nmd = md_pair(2.0 * wk, qk * qk, 2.0);
        for (int n = 1; n <= sys.cavity.num_modes; ++n) {
            if (n == k) continue;
            const double q = sys.q_cross(k, n);
            nmd += md_pair(wk + sys.mode_freq(n), q * q, 2.0);
        }
        out.n_md = nmd;
    }
    return out;
}

/// Time-averaged second-order photon number at degenerate resonance,
/// <N_k^2>_tau = (q_k^2 tau^2 / 3)(|beta|^2 cos^2 th + sinh^2 r + N_T
///               + 2 N_T sinh^2 r) + (q_k^2 tau^2 / 12)(g + 2 |beta| sin th)^2.
inline double photon_order2_avg(const SystemConfig& sys, double tau) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double qk = sys.q_self(sys.initial.k);
    const double b = sys.initial.beta_mag, th = sys.initial.theta;
    const double shr = std::sinh(sys.initial.squeeze_r);
    const double NT = sys.n_T;
    const double c = b * std::cos(th);
    const double s = g + 2.0 * b * std::sin(th);
    return qk * qk * tau * tau / 3.0 *
               (c * c + shr * shr + NT + 2.0 * NT * shr * shr) +
           qk * qk * tau * tau / 12.0 * s * s;
}

/// Time-averaged second-order photon number at nondegenerate resonance,
/// <N_k^2>_tau = Nbar_b(theta) q_kk'^2 tau^2 / 3.
inline double photon_order2_avg_nondegenerate(const SystemConfig& sys, double tau) {
    const DriveProfile* d = sys.drive_for(DriveTarget::mechanical);
    const double g = d ? d->g : 0.0;
    const double nb = sys.n_mech0 + g * g / 4.0 +
                      g * sys.initial.beta_mag * std::sin(sys.initial.theta);
    const double q = sys.q_cross(sys.initial.k, sys.initial.kp);
    return nb * q * q * tau * tau / 3.0;
}

} // namespace casimech

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "casimech/fock/basis.hpp"
#include "casimech/system.hpp"

namespace casimech::fock {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Truncated coherent state |mu>, renormalized on the cut space.
inline Vec coherent_vector(std::complex<double> mu, int n_max) {
    Vec v(n_max + 1);
    v(0) = 1.0;
    for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * mu / std::sqrt(double(n));
    v.normalize();
    return v;
}

/// Dense displacement operator exp(beta a^dag - beta* a) on a single slot.
inline Mat displacement_matrix(std::complex<double> beta, int n_max) {
    Mat g = Mat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        g(n, n - 1) = beta * std::sqrt(double(n));
        g(n - 1, n) = -std::conj(beta) * std::sqrt(double(n));
    }
    return g.exp();
}

/// Dense squeezing operator exp((zeta* a^2 - zeta a^dag^2)/2).
inline Mat squeeze_matrix(std::complex<double> zeta, int n_max) {
    Mat a = Mat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    const Mat a2 = a * a;
    const Mat g = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
    return Mat(g.exp());
}

/// Displaced squeezed phonon vector D(beta) S(zeta) |m>, renormalized.
inline Vec dst_vector(const SystemConfig& sys, int phonon_max, int m = 0) {
    const std::complex<double> beta =
        sys.initial.beta_mag *
        std::exp(std::complex<double>(0.0, sys.initial.theta));
    const std::complex<double> zeta =
        sys.initial.squeeze_r *
        std::exp(std::complex<double>(0.0, sys.initial.squeeze_phi));
    Vec v = Vec::Zero(phonon_max + 1);
    v(m) = 1.0;
    v = displacement_matrix(beta, phonon_max) *
        (squeeze_matrix(zeta, phonon_max) * v);
    v.normalize();
    return v;
}

/// One member of the thermal ensemble over the mechanical mode: statistical
/// weight and initial pure state with the phonon slot in D S |m>.
struct ThermalBranch {
    double weight = 1.0;
    Vec state;
};

/// Full initial pure state for a given phonon Fock seed m: coherent cavity
/// modes (mu on k and k', vacuum elsewhere) tensor D S |m> on the phonon slot.
inline Vec initial_vector(const SystemConfig& sys, const Basis& b, int m = 0) {
    std::vector<Vec> factors(b.slots());
    for (int s = 0; s < b.slots() - 1; ++s) {
        double mu = 0.0;
        if (b.modes[s] == sys.initial.k) mu = sys.initial.mu_k;
        else if (b.modes[s] == sys.initial.kp) mu = sys.initial.mu_kp;
        factors[s] = coherent_vector(mu, b.n_max[s]);
    }
    factors[b.mech_slot()] = dst_vector(sys, b.n_max[b.mech_slot()], m);

    Vec v(b.dim);
    for (std::int64_t i = 0; i < b.dim; ++i) {
        std::complex<double> c = 1.0;
        for (int s = 0; s < b.slots(); ++s) c *= factors[s](b.occupation(i, s));
        v(i) = c;
    }
    return v;
}

/// Deterministic enumeration of the Boltzmann-weighted branches of the
/// initial thermal phonon mixture, truncated once the residual weight drops
/// below `weight_cut`.
inline std::vector<ThermalBranch> thermal_ensemble(const SystemConfig& sys,
                                                   const Basis& b,
                                                   double weight_cut = 1e-12) {
    std::vector<ThermalBranch> out;
    if (sys.n_T <= 0.0) {
        out.push_back({1.0, initial_vector(sys, b, 0)});
        return out;
    }
    const double x = sys.n_T / (1.0 + sys.n_T);
    double w = 1.0 - x;
    const int mmax = b.n_max[b.mech_slot()];
    for (int m = 0; m <= mmax && w > weight_cut; ++m, w *= x)
        out.push_back({w, initial_vector(sys, b, m)});
    // Renormalize the truncated weights.
    double tot = 0.0;
    for (const auto& br : out) tot += br.weight;
    for (auto& br : out) br.weight /= tot;
    return out;
}

} // namespace casimech::fock

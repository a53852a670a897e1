#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/SparseCore>

#include "casimech/fock/basis.hpp"
#include "casimech/system.hpp"

namespace casimech::fock {

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;
using cplx = std::complex<double>;

/// Annihilation operator on one slot of the tensor basis.
inline SparseOp annihilate(const Basis& b, int slot) {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(b.dim);
    for (std::int64_t i = 0; i < b.dim; ++i) {
        const int n = b.occupation(i, slot);
        if (n == 0) continue;
        trip.emplace_back(i - b.stride[slot], i, std::sqrt(double(n)));
    }
    SparseOp a(b.dim, b.dim);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

inline SparseOp create(const Basis& b, int slot) {
    return SparseOp(annihilate(b, slot).adjoint());
}

inline SparseOp number_op(const Basis& b, int slot) {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(b.dim);
    for (std::int64_t i = 0; i < b.dim; ++i)
        trip.emplace_back(i, i, double(b.occupation(i, slot)));
    SparseOp n(b.dim, b.dim);
    n.setFromTriplets(trip.begin(), trip.end());
    return n;
}

/// Quadratures X = (a^dag + a)/2 and P = i(a^dag - a)/2.
inline SparseOp quad_x(const Basis& b, int slot) {
    const SparseOp a = annihilate(b, slot);
    return SparseOp(0.5 * (SparseOp(a.adjoint()) + a));
}

inline SparseOp quad_p(const Basis& b, int slot) {
    const SparseOp a = annihilate(b, slot);
    return SparseOp(cplx(0.0, 0.5) * (SparseOp(a.adjoint()) - a));
}

/// All time-independent pieces of the Hamiltonian plus the drive quadrature
/// operators, in units of hbar * (pi c / L). H(t) is assembled as
/// h_const + sum_j (2 lambda_xj(t) X_j - 2 lambda_pj(t) P_j).
struct HamiltonianParts {
    SparseOp h_const; // H_0 + eps H_I
    SparseOp h_free;  // H_0 alone
    std::vector<DriveTarget> drive_targets;
    std::vector<SparseOp> drive_x; // X_j for each driven oscillator
    std::vector<SparseOp> drive_p; // P_j
};

inline HamiltonianParts build_hamiltonian(const SystemConfig& sys, const Basis& b) {
    HamiltonianParts H;
    const int S = b.slots();
    const int mech = b.mech_slot();

    SparseOp h0(b.dim, b.dim);
    {
        std::vector<Eigen::Triplet<cplx>> trip;
        trip.reserve(b.dim);
        for (std::int64_t i = 0; i < b.dim; ++i) {
            double e = sys.omega_mech * b.occupation(i, mech);
            for (int s = 0; s < S - 1; ++s)
                e += sys.mode_freq(b.modes[s]) * b.occupation(i, s);
            trip.emplace_back(i, i, e);
        }
        h0.setFromTriplets(trip.begin(), trip.end());
    }
    H.h_free = h0;

    const SparseOp xb = quad_x(b, mech);
    SparseOp hi(b.dim, b.dim);
    for (int s = 0; s < S - 1; ++s) {
        const int n = b.modes[s];
        const double qn = sys.q_self(n);
        const SparseOp a = annihilate(b, s);
        const SparseOp ad = SparseOp(a.adjoint());
        hi += SparseOp(-2.0 * qn * SparseOp(ad * a) -
                       qn * (SparseOp(ad * ad) + SparseOp(a * a)));
    }
    for (int s = 0; s < S - 1; ++s)
        for (int sp = 0; sp < S - 1; ++sp) {
            if (s == sp) continue;
            const int n = b.modes[s], m = b.modes[sp];
            const double sgn = ((n + m) % 2 == 0) ? 1.0 : -1.0;
            hi += SparseOp(-4.0 * sgn * sys.q_cross(n, m) *
                           SparseOp(quad_x(b, s) * quad_x(b, sp)));
        }
    H.h_const = SparseOp(h0 + sys.epsilon * SparseOp(hi * xb));

    for (const auto& d : sys.drives) {
        if (d.form == DriveForm::zero) continue;
        int slot = -1;
        if (d.target == DriveTarget::mechanical) {
            slot = mech;
        } else {
            const int n = (d.target == DriveTarget::mode_k) ? sys.initial.k
                                                            : sys.initial.kp;
            for (int s = 0; s < S - 1; ++s)
                if (b.modes[s] == n) slot = s;
            if (slot < 0) continue; // driven mode not represented in the basis
        }
        H.drive_targets.push_back(d.target);
        H.drive_x.push_back(quad_x(b, slot));
        H.drive_p.push_back(quad_p(b, slot));
    }
    return H;
}

/// Normal-ordered radiation-pressure operator in units of
/// hbar (pi c / L) / L; multiply by hbar * freq_scale / L for newtons.
inline SparseOp force_op(const SystemConfig& sys, const Basis& b) {
    const int S = b.slots();
    SparseOp f(b.dim, b.dim);
    for (int s = 0; s < S - 1; ++s) {
        const int n = b.modes[s];
        const SparseOp a = annihilate(b, s);
        const SparseOp ad = SparseOp(a.adjoint());
        // :X_n^2: drops the vacuum 1/4.
        f += SparseOp(2.0 * sys.q_self(n) * 0.25 *
                      (SparseOp(ad * ad) + SparseOp(a * a) +
                       2.0 * SparseOp(ad * a)));
    }
    for (int s = 0; s < S - 1; ++s)
        for (int sp = 0; sp < S - 1; ++sp) {
            if (s == sp) continue;
            const int n = b.modes[s], m = b.modes[sp];
            const double sgn = ((n + m) % 2 == 0) ? 1.0 : -1.0;
            f += SparseOp(2.0 * sgn * sys.q_cross(n, m) *
                          SparseOp(quad_x(b, s) * quad_x(b, sp)));
        }
    return f;
}

} // namespace casimech::fock

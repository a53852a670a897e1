#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "casimech/fock/basis.hpp"
#include "casimech/fock/operators.hpp"
#include "casimech/fock/states.hpp"
#include "casimech/math_util.hpp"
#include "casimech/system.hpp"

namespace casimech::fock {

struct Observables {
    double t = 0.0;
    std::vector<double> n_mode; // one entry per cavity slot
    double n_b = 0.0;
    double x_b = 0.0;
    double force = 0.0;  // normal-ordered radiation pressure, hbar w_s / L units
    double energy = 0.0; // <H_0 + eps H_I>
    double purity = 1.0;
    double leakage = 0.0; // population of the top two levels of any ladder
    double norm_drift = 0.0;
};

namespace detail {

// Dormand-Prince RK45 tableau.
inline constexpr double dp_c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,      0.0,          500.0 / 1113,
                                    125.0 / 192,     -2187.0 / 6784, 11.0 / 84,
                                    0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                                    393.0 / 640,     -92097.0 / 339200,
                                    187.0 / 2100,    1.0 / 40};

} // namespace detail

/// Adaptive Dormand-Prince integration of y' = f(t, y) from t0 to t1, where
/// the state is any Eigen vector/matrix of complex doubles.
template <typename State, typename Rhs>
void integrate_rk45(const Rhs& f, State& y, double t0, double t1, double tol) {
    if (t1 == t0) return;
    const double span = t1 - t0;
    double t = t0;
    double h = span / 100.0;
    State k[7];
    State ytmp, y5, y4;
    int rejected_in_a_row = 0;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        f(t, y, k[0]);
        for (int s = 1; s < 7; ++s) {
            ytmp = y;
            for (int j = 0; j < s; ++j)
                if (detail::dp_a[s][j] != 0.0) ytmp += h * detail::dp_a[s][j] * k[j];
            f(t + detail::dp_c[s] * h, ytmp, k[s]);
        }
        y5 = y;
        y4 = y;
        for (int s = 0; s < 7; ++s) {
            if (detail::dp_b5[s] != 0.0) y5 += h * detail::dp_b5[s] * k[s];
            if (detail::dp_b4[s] != 0.0) y4 += h * detail::dp_b4[s] * k[s];
        }
        const double sc = tol * (1.0 + y.norm());
        const double err = (y5 - y4).norm() / sc;
        if (err <= 1.0) {
            t += h;
            y = y5;
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw numeric_error("rk45: step size underflow");
        }
        const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-16, -0.2),
                                      0.2, 5.0);
        h *= fac;
        if (!(h > 0.0) || t + h == t) throw numeric_error("rk45: step size underflow");
    }
}

/// Precomputed operators for one truncation; evolves pure states or density
/// matrices and extracts the standard observable set.
class Evolver {
public:
    Evolver(const SystemConfig& sys, const Basis& basis)
        : sys_(sys), basis_(basis), H_(build_hamiltonian(sys, basis)),
          f_op_(force_op(sys, basis)), xb_op_(quad_x(basis, basis.mech_slot())),
          nb_op_(number_op(basis, basis.mech_slot())) {
        for (int s = 0; s < basis.slots() - 1; ++s)
            n_ops_.push_back(number_op(basis, s));
        // Interaction part alone, for energy bookkeeping.
        hint_ = SparseOp(H_.h_const - H_.h_free);
    }

    const Basis& basis() const { return basis_; }
    const HamiltonianParts& hamiltonian() const { return H_; }

    /// Schroedinger evolution of a pure state across a time grid.
    std::vector<Observables> run_pure(Vec psi, const std::vector<double>& t_grid,
                                      double tol = 1e-10) const {
        std::vector<Observables> out;
        out.reserve(t_grid.size());
        const double norm0 = psi.norm();
        double t_prev = 0.0;
        auto rhs = [&](double t, const Vec& y, Vec& dy) {
            dy = H_.h_const * y;
            apply_drives(t, y, dy);
            dy *= std::complex<double>(0.0, -1.0);
        };
        for (double t : t_grid) {
            integrate_rk45(rhs, psi, t_prev, t, tol);
            t_prev = t;
            out.push_back(measure(psi, t, norm0));
        }
        return out;
    }

    /// Von Neumann evolution of a density matrix across a time grid.
    std::vector<Observables> run_density(Mat rho, const std::vector<double>& t_grid,
                                         double tol = 1e-9) const {
        std::vector<Observables> out;
        out.reserve(t_grid.size());
        const double tr0 = rho.trace().real();
        double t_prev = 0.0;
        auto rhs = [&](double t, const Mat& y, Mat& dy) {
            Mat hy = H_.h_const * y;
            apply_drives_mat(t, y, hy);
            dy = std::complex<double>(0.0, -1.0) * (hy - hy.adjoint());
        };
        for (double t : t_grid) {
            integrate_rk45(rhs, rho, t_prev, t, tol);
            t_prev = t;
            out.push_back(measure_density(rho, t, tr0));
        }
        return out;
    }

    /// Evolution of the configured initial state: a single pure trajectory at
    /// N_T = 0, otherwise the thermal mixture (as a density matrix for small
    /// dimensions, as a weighted trajectory ensemble above `density_cap`).
    std::vector<Observables> run(const std::vector<double>& t_grid,
                                 double tol = 1e-10,
                                 std::int64_t density_cap = 4000) const {
        if (sys_.n_T <= 0.0)
            return run_pure(initial_vector(sys_, basis_), t_grid, tol);
        if (basis_.dim <= density_cap) {
            const auto branches = thermal_ensemble(sys_, basis_);
            Mat rho = Mat::Zero(basis_.dim, basis_.dim);
            for (const auto& br : branches)
                rho += br.weight * (br.state * br.state.adjoint());
            return run_density(std::move(rho), t_grid, std::max(tol, 1e-9));
        }
        std::vector<Observables> acc;
        double wtot = 0.0;
        for (const auto& br : thermal_ensemble(sys_, basis_)) {
            auto obs = run_pure(br.state, t_grid, tol);
            if (acc.empty()) {
                acc = std::move(obs);
                for (auto& o : acc) scale(o, br.weight);
            } else {
                for (std::size_t i = 0; i < acc.size(); ++i)
                    axpy(acc[i], obs[i], br.weight);
            }
            wtot += br.weight;
        }
        for (auto& o : acc) scale(o, 1.0 / wtot);
        return acc;
    }

    Observables measure(const Vec& psi, double t, double norm0 = 1.0) const {
        Observables o;
        o.t = t;
        const double n2 = psi.squaredNorm();
        for (const auto& nop : n_ops_)
            o.n_mode.push_back(expval(psi, nop) / n2);
        o.n_b = expval(psi, nb_op_) / n2;
        o.x_b = expval(psi, xb_op_) / n2;
        o.force = expval(psi, f_op_) / n2;
        o.energy = expval(psi, H_.h_const) / n2;
        o.purity = 1.0;
        o.leakage = leakage_of(psi);
        o.norm_drift = std::abs(std::sqrt(n2) - norm0);
        return o;
    }

    Observables measure_density(const Mat& rho, double t, double tr0 = 1.0) const {
        Observables o;
        o.t = t;
        const double tr = rho.trace().real();
        for (const auto& nop : n_ops_)
            o.n_mode.push_back((nop * rho).eval().diagonal().sum().real() / tr);
        auto ev = [&](const SparseOp& op) {
            return (op * rho).eval().diagonal().sum().real() / tr;
        };
        o.n_b = ev(nb_op_);
        o.x_b = ev(xb_op_);
        o.force = ev(f_op_);
        o.energy = ev(H_.h_const);
        o.purity = (rho * rho).trace().real() / (tr * tr);
        double leak = 0.0;
        for (std::int64_t i = 0; i < basis_.dim; ++i)
            if (near_top(i)) leak += rho(i, i).real();
        o.leakage = leak / tr;
        o.norm_drift = std::abs(tr - tr0);
        return o;
    }

private:
    void apply_drives(double t, const Vec& y, Vec& dy) const {
        for (std::size_t j = 0; j < H_.drive_targets.size(); ++j) {
            const auto [lx, lp] = sys_.drive_lambdas(H_.drive_targets[j], t);
            if (lx != 0.0) dy += (2.0 * lx) * (H_.drive_x[j] * y);
            if (lp != 0.0) dy -= (2.0 * lp) * (H_.drive_p[j] * y);
        }
    }

    void apply_drives_mat(double t, const Mat& y, Mat& hy) const {
        for (std::size_t j = 0; j < H_.drive_targets.size(); ++j) {
            const auto [lx, lp] = sys_.drive_lambdas(H_.drive_targets[j], t);
            if (lx != 0.0) hy += (2.0 * lx) * (H_.drive_x[j] * y);
            if (lp != 0.0) hy -= (2.0 * lp) * (H_.drive_p[j] * y);
        }
    }

    static double expval(const Vec& psi, const SparseOp& op) {
        return psi.dot(op * psi).real();
    }

    bool near_top(std::int64_t i) const {
        for (int s = 0; s < basis_.slots(); ++s)
            if (basis_.occupation(i, s) >= basis_.n_max[s] - 1) return true;
        return false;
    }

    double leakage_of(const Vec& psi) const {
        double leak = 0.0;
        for (std::int64_t i = 0; i < basis_.dim; ++i)
            if (near_top(i)) leak += std::norm(psi(i));
        return leak / psi.squaredNorm();
    }

    static void scale(Observables& o, double w) {
        for (auto& v : o.n_mode) v *= w;
        o.n_b *= w;
        o.x_b *= w;
        o.force *= w;
        o.energy *= w;
        o.purity *= w;
        o.leakage *= w;
        o.norm_drift *= w;
    }

    static void axpy(Observables& acc, const Observables& o, double w) {
        for (std::size_t i = 0; i < acc.n_mode.size(); ++i)
            acc.n_mode[i] += w * o.n_mode[i];
        acc.n_b += w * o.n_b;
        acc.x_b += w * o.x_b;
        acc.force += w * o.force;
        acc.energy += w * o.energy;
        acc.purity += w * o.purity;
        acc.leakage += w * o.leakage;
        acc.norm_drift += w * o.norm_drift;
    }

    SystemConfig sys_;
    Basis basis_;
    HamiltonianParts H_;
    SparseOp f_op_, xb_op_, nb_op_;
    SparseOp hint_;
    std::vector<SparseOp> n_ops_;
};

} // namespace casimech::fock

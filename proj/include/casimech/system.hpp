#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimech/constants.hpp"
#include "casimech/specs.hpp"

namespace casimech {

/// Fully validated system description in the internal dimensionless units:
/// frequencies are scaled by pi c / L (so the massless mode ladder is
/// omega~_n = n) and times by L / (pi c), which makes omega t invariant.
struct SystemConfig {
    CavitySpec cavity;
    MechanicalSpec mech;
    InitialState initial;
    std::vector<DriveProfile> drives;

    // Derived, cached by make_system.
    double epsilon = 0.0;       // delta_L0 / L
    double delta_L0 = 0.0;      // m
    double freq_scale = 0.0;    // pi c / L, rad/s
    double omega_mech = 0.0;    // dimensionless mechanical frequency
    double mass_param = 0.0;    // m~ = M_f c L / (hbar pi)
    std::vector<double> omega_n; // omega_n[i] = omega~_{i+1}
    double n_T = 0.0;           // thermal phonon occupation
    double n_mech0 = 0.0;       // N_b(0)
    std::vector<std::string> warnings;

    /// Dimensionless frequency of mode n (1-based).
    double mode_freq(int n) const {
        if (n >= 1 && n <= static_cast<int>(omega_n.size()))
            return omega_n[n - 1];
        return std::sqrt(static_cast<double>(n) * n + mass_param * mass_param);
    }

    /// Self-mode coupling weight q_n = n^2 / omega~_n; reduces to omega~_n
    /// when the field is massless.
    double q_self(int n) const {
        return static_cast<double>(n) * n / mode_freq(n);
    }

    /// Intermode coupling weight q_nm = n m / sqrt(omega~_n omega~_m);
    /// reduces to sqrt(omega~_n omega~_m) when massless.
    double q_cross(int n, int m) const {
        return static_cast<double>(n) * m / std::sqrt(mode_freq(n) * mode_freq(m));
    }

    /// Perturbative validity horizon t~_c = 2 / (epsilon omega~_k) for mode k.
    double t_coherence(int n) const { return 2.0 / (epsilon * mode_freq(n)); }

    /// Dimensionless drive of oscillator `target` at dimensionless time t.
    std::pair<double, double> drive_lambdas(DriveTarget target, double t) const {
        for (const auto& d : drives) {
            if (d.target != target || d.form == DriveForm::zero) continue;
            if (d.form == DriveForm::tabulated) return d.tabulated(t);
            const double env = -(d.g * d.Omega / freq_scale / 2.0) *
                               std::exp(-d.Omega / freq_scale * t);
            return {env * std::cos(omega_mech * t), env * std::sin(omega_mech * t)};
        }
        return {0.0, 0.0};
    }

    const DriveProfile* drive_for(DriveTarget target) const {
        for (const auto& d : drives)
            if (d.target == target && d.form != DriveForm::zero) return &d;
        return nullptr;
    }
};

/// Validates the specs, precomputes the dimensionless frequency table and the
/// derived state parameters, and collects soft warnings (slow drive switch-on,
/// marginal perturbative parameter).
inline SystemConfig make_system(const CavitySpec& cavity, const MechanicalSpec& mech,
                                const InitialState& initial,
                                std::vector<DriveProfile> drives = {}) {
    cavity.validate();
    mech.validate();
    initial.validate();
    for (const auto& d : drives) d.validate();

    bool seen[3] = {false, false, false};
    for (const auto& d : drives) {
        if (d.form == DriveForm::zero) continue;
        const int idx = static_cast<int>(d.target);
        if (seen[idx])
            throw std::invalid_argument("duplicate drive on the same oscillator");
        seen[idx] = true;
    }
    if (initial.kp > cavity.num_modes || initial.k > cavity.num_modes)
        throw std::invalid_argument("initial-state mode index exceeds num_modes");

    SystemConfig sys;
    sys.cavity = cavity;
    sys.mech = mech;
    sys.initial = initial;
    sys.drives = std::move(drives);

    sys.delta_L0 = mech.delta_L0();
    sys.epsilon = sys.delta_L0 / cavity.length;
    if (!(sys.epsilon < 1e-2))
        throw std::invalid_argument(
            "perturbative parameter delta_L0 / L = " + std::to_string(sys.epsilon) +
            " must be < 1e-2");

    sys.freq_scale = M_PI * speed_of_light / cavity.length;
    sys.omega_mech = mech.omega / sys.freq_scale;
    sys.mass_param =
        cavity.field_mass * speed_of_light * cavity.length / (hbar * M_PI);

    sys.omega_n.resize(cavity.num_modes);
    for (int n = 1; n <= cavity.num_modes; ++n)
        sys.omega_n[n - 1] =
            std::sqrt(static_cast<double>(n) * n + sys.mass_param * sys.mass_param);

    sys.n_T = initial.n_thermal(mech.omega);
    sys.n_mech0 = initial.n_mech_initial(sys.n_T);

    if (sys.epsilon > 1e-3)
        sys.warnings.push_back("epsilon above 1e-3; second-order terms are sizable");
    for (const auto& d : sys.drives) {
        if (d.form == DriveForm::exdr_ramp && d.Omega < 10.0 * mech.omega)
            sys.warnings.push_back(
                "drive switch-on rate Omega below 10x the mechanical frequency; "
                "the sudden-ramp closed forms carry a visible transient");
    }
    return sys;
}

} // namespace casimech

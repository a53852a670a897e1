#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "casimech/constants.hpp"

namespace casimech {

/// Cavity geometry and field content. Frequencies are omega_n = n pi c / L for
/// the massless field; a positive field mass shifts them through the
/// dispersion relation omega_n = sqrt(c^2 p_n^2 + M_f^2 c^4 / hbar^2).
struct CavitySpec {
    double length = 1e-5;   // m
    int num_modes = 64;     // truncation of the infinite mode sums
    double field_mass = 0.0; // kg, 0 = massless

    void validate() const {
        if (!(length > 0.0)) throw std::invalid_argument("cavity length must be > 0");
        if (num_modes < 1) throw std::invalid_argument("num_modes must be >= 1");
        if (field_mass < 0.0) throw std::invalid_argument("field_mass must be >= 0");
    }

    /// Mode angular frequency in rad/s.
    double omega_mode(int n) const {
        const double p = n * M_PI / length;
        if (field_mass == 0.0) return p * speed_of_light;
        const double cp = speed_of_light * p;
        const double mc2_over_hbar = field_mass * speed_of_light * speed_of_light / hbar;
        return std::sqrt(cp * cp + mc2_over_hbar * mc2_over_hbar);
    }
};

/// Movable-wall oscillator. delta_L0 is the zero-point spread
/// sqrt(hbar / 2 M omega); epsilon = delta_L0 / L is the perturbative
/// parameter and must stay well below 1.
struct MechanicalSpec {
    double omega = 0.0;       // rad/s
    double mirror_mass = 0.0; // kg

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("mechanical omega must be > 0");
        if (!(mirror_mass > 0.0)) throw std::invalid_argument("mirror_mass must be > 0");
    }

    double delta_L0() const { return std::sqrt(hbar / (2.0 * mirror_mass * omega)); }
};

/// Initial state: coherent amplitudes on two cavity modes, the rest vacuum,
/// and a displaced squeezed thermal state on the mechanical mode.
struct InitialState {
    double mu_k = 0.0;
    double mu_kp = 0.0;
    int k = 1;
    int kp = 2;
    double beta_mag = 0.0;
    double theta = 0.0;     // rad
    double squeeze_r = 0.0;
    double squeeze_phi = 0.0; // rad
    double temperature = 0.0; // K
    double n_thermal_override = -1.0; // >= 0 bypasses the temperature

    void validate() const {
        if (k < 1 || kp < 1) throw std::invalid_argument("mode indices must be >= 1");
        if (k == kp) throw std::invalid_argument("modes k and k' must differ");
        if (beta_mag < 0.0) throw std::invalid_argument("|beta| must be >= 0");
        if (squeeze_r < 0.0) throw std::invalid_argument("squeeze_r must be >= 0");
        if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    }

    /// Thermal occupation of the mechanical mode at frequency omega (rad/s):
    /// N_T = sinh^2(r_T) with tanh(r_T) = exp(-hbar omega / 2 k_B T).
    double n_thermal(double omega) const {
        if (n_thermal_override >= 0.0) return n_thermal_override;
        if (temperature == 0.0) return 0.0;
        const double x = std::exp(-hbar * omega / (2.0 * k_boltzmann * temperature));
        const double rT = std::atanh(x);
        const double s = std::sinh(rT);
        return s * s;
    }

    /// N_b(0) = |beta|^2 + sinh^2 r + N_T cosh(2r).
    double n_mech_initial(double n_T) const {
        const double sh = std::sinh(squeeze_r);
        return beta_mag * beta_mag + sh * sh + n_T * std::cosh(2.0 * squeeze_r);
    }
};

enum class DriveTarget { mode_k = 0, mode_kp = 1, mechanical = 2 };
enum class DriveForm { zero, exdr_ramp, tabulated };

/// External drive on one oscillator. The exdr_ramp form is
///   lambda_x(t) = -(g Omega / 2) e^{-Omega t} cos(omega t),
///   lambda_p(t) = -(g Omega / 2) e^{-Omega t} sin(omega t),
/// with omega the mechanical frequency; it switches a sinusoidal modulation on
/// smoothly over a timescale 1/Omega.
struct DriveProfile {
    DriveTarget target = DriveTarget::mechanical;
    DriveForm form = DriveForm::zero;
    double g = 0.0;
    double Omega = 0.0; // rad/s
    // Dimensionless tabulated drive t~ -> (lambda_x~, lambda_p~).
    std::function<std::pair<double, double>(double)> tabulated;

    void validate() const {
        if (form == DriveForm::exdr_ramp && !(Omega > 0.0))
            throw std::invalid_argument("exdr_ramp drive requires Omega > 0");
        if (form == DriveForm::tabulated && !tabulated)
            throw std::invalid_argument("tabulated drive requires a function");
    }
};

} // namespace casimech

#pragma once

#include "casimech/system.hpp"

namespace test_helpers {

/// System with a given dimensionless wall frequency and perturbative
/// parameter; the mirror mass is solved from eps = delta_L0 / L.
inline casimech::SystemConfig make_test_system(
    double omega_tilde, double eps = 1e-3, casimech::InitialState ini = {},
    std::vector<casimech::DriveProfile> drives = {}, int num_modes = 64,
    double field_mass = 0.0) {
    casimech::CavitySpec cav;
    cav.length = 1e-5;
    cav.num_modes = num_modes;
    cav.field_mass = field_mass;
    casimech::MechanicalSpec mech;
    mech.omega = omega_tilde * M_PI * casimech::speed_of_light / cav.length;
    mech.mirror_mass = casimech::hbar / (2.0 * mech.omega * eps * eps *
                                         cav.length * cav.length);
    return casimech::make_system(cav, mech, ini, std::move(drives));
}

inline casimech::DriveProfile mech_drive(double g, double omega_ratio,
                                         double omega_mech_si) {
    casimech::DriveProfile d;
    d.target = casimech::DriveTarget::mechanical;
    d.form = casimech::DriveForm::exdr_ramp;
    d.g = g;
    d.Omega = omega_ratio * omega_mech_si;
    return d;
}

} // namespace test_helpers

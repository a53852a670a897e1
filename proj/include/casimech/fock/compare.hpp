#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "casimech/fock/basis.hpp"
#include "casimech/fock/evolve.hpp"
#include "casimech/phonons.hpp"
#include "casimech/photons.hpp"
#include "casimech/system.hpp"
#include "casimech/wall.hpp"

namespace casimech::fock {

/// Benchmark scenarios pitting the perturbative formulas against the exact
/// truncated-basis evolution.
enum class CompareScenario {
    dce_vacuum,      // degenerate resonance, field in vacuum, coherent phonons
    phonon_exchange, // coherent mode k exchanging excitations with the wall
    nondegenerate,   // two-mode resonance w = w_1 + w_2 from vacuum
    drive_nmd,       // photons created by the mechanical drive alone
    massive_photon   // massive field, degenerate resonance from vacuum
};

inline const char* to_string(CompareScenario s) {
    switch (s) {
        case CompareScenario::dce_vacuum: return "dce_vacuum";
        case CompareScenario::phonon_exchange: return "phonon_exchange";
        case CompareScenario::nondegenerate: return "nondegenerate";
        case CompareScenario::drive_nmd: return "drive_nmd";
        default: return "massive_photon";
    }
}

struct CompareSettings {
    double eps1 = 1e-3;
    double eps2 = 3e-3;
    int n_max = 10;
    int m_max = 12;
    int t_points = 8;
    double t_frac = 0.1; // fraction of the coherence time covered by the grid
    double tol = 1e-10;
};

struct ObservableDeviation {
    std::string name;
    double max_rel = 0.0; // |engine - oracle| / max_t |oracle|
    double rms_rel = 0.0;
    double max_abs = 0.0;
    double exponent = 0.0; // eps-scaling of the absolute residual
};

struct ErrorReport {
    CompareScenario scenario;
    double eps1 = 0.0, eps2 = 0.0;
    std::vector<ObservableDeviation> at_eps1;
    std::vector<ObservableDeviation> at_eps2;
    double max_leakage = 0.0;
    double max_purity_drift = 0.0;
    double max_norm_drift = 0.0;
};

/// Builds the SystemConfig for a benchmark scenario at a given perturbative
/// parameter; the mirror mass is chosen so that delta_L0 / L = eps.
inline SystemConfig make_scenario_system(CompareScenario sc, double eps) {
    CavitySpec cav;
    cav.length = 1e-5;
    cav.num_modes = 2; // matches the oracle truncation
    MechanicalSpec mech;
    InitialState ini;
    std::vector<DriveProfile> drives;
    const double fs = M_PI * speed_of_light / cav.length;

    double omega_tilde = 2.0;
    switch (sc) {
        case CompareScenario::dce_vacuum:
            ini.beta_mag = 1.0;
            ini.theta = M_PI / 2.0;
            break;
        case CompareScenario::phonon_exchange:
            ini.mu_k = 0.05;
            ini.beta_mag = 1.0;
            ini.theta = M_PI / 2.0;
            break;
        case CompareScenario::nondegenerate:
            ini.beta_mag = 1.0;
            ini.theta = M_PI / 2.0;
            omega_tilde = 3.0; // w_1 + w_2
            break;
        case CompareScenario::drive_nmd:
            break; // drive appended below, once omega is known
        case CompareScenario::massive_photon:
            // M_f c^2 / hbar equal to the massless lowest mode frequency,
            // i.e. dimensionless mass parameter 1: w~_1 = sqrt(2).
            cav.field_mass = hbar * M_PI / (speed_of_light * cav.length);
            ini.beta_mag = 1.0;
            ini.theta = M_PI / 2.0;
            omega_tilde = 2.0 * std::sqrt(2.0);
            break;
    }
    mech.omega = omega_tilde * fs;
    mech.mirror_mass = hbar / (2.0 * mech.omega * eps * eps * cav.length * cav.length);
    if (sc == CompareScenario::drive_nmd) {
        DriveProfile d;
        d.target = DriveTarget::mechanical;
        d.form = DriveForm::exdr_ramp;
        d.g = 1.0;
        d.Omega = 50.0 * mech.omega;
        drives.push_back(d);
    }
    return make_system(cav, mech, ini, std::move(drives));
}

namespace detail {

struct EngineObservable {
    std::string name;
    std::function<double(const SystemConfig&, double)> engine;
    std::function<double(const Observables&)> oracle;
};

inline std::vector<EngineObservable> scenario_observables(CompareScenario sc) {
    auto nk_order2 = [](const SystemConfig& s, double t) {
        const double e = s.epsilon;
        return e * e * photon_order2(s, s.initial.k, t).total();
    };
    auto nkp_order2 = [](const SystemConfig& s, double t) {
        const double e = s.epsilon;
        return e * e * photon_order2(s, s.initial.kp, t).total();
    };
    auto nb_vacuum_field = [](const SystemConfig& s, double t) {
        const double e = s.epsilon;
        return phonon_order0_t(s, t) + e * e * phonon_order2_resonant(s, t);
    };
    // Order-2 truncation throughout: the fitted eps-exponent of the residual
    // is then the expected 3 for every observable.
    auto wall = [](const SystemConfig& s, double t) {
        const double e = s.epsilon;
        return e * wall_order1(s, t) + e * e * wall_order2_full(s, t);
    };
    auto oracle_nk = [](const Observables& o) { return o.n_mode[0]; };
    auto oracle_nkp = [](const Observables& o) { return o.n_mode[1]; };
    auto oracle_nb = [](const Observables& o) { return o.n_b; };
    // The oracle reports <X_b>; the relative wall displacement compared
    // against the engine series is (x - L)/L = 2 eps <X_b> (eps applied at the
    // collection site, where the system is in scope).
    auto oracle_wall = [](const Observables& o) { return 2.0 * o.x_b; };

    // Every scenario carries the wall trajectory: it is the one observable
    // whose first omitted order is the eps^3 secular term, so its residual
    // carries the expected eps-scaling of the order-2 truncation. The photon
    // and phonon numbers have an eps-even series from the vacuum (first
    // omitted order eps^4), so their own exponents sit higher.
    std::vector<EngineObservable> obs;
    switch (sc) {
        case CompareScenario::dce_vacuum:
        case CompareScenario::massive_photon:
            obs.push_back({"x_wall", wall, oracle_wall});
            obs.push_back({"N_k", nk_order2, oracle_nk});
            obs.push_back({"N_b", nb_vacuum_field, oracle_nb});
            break;
        case CompareScenario::nondegenerate:
            obs.push_back({"x_wall", wall, oracle_wall});
            obs.push_back({"N_k", nk_order2, oracle_nk});
            obs.push_back({"N_kp", nkp_order2, oracle_nkp});
            break;
        case CompareScenario::drive_nmd:
            obs.push_back({"N_k", [](const SystemConfig& s, double t) {
                               const double e = s.epsilon;
                               return photon_order0(s, s.initial.k, t) +
                                      e * e *
                                          photon_order2(s, s.initial.k, t).total();
                           },
                           oracle_nk});
            obs.push_back({"x_wall", wall, oracle_wall});
            break;
        case CompareScenario::phonon_exchange:
            obs.push_back({"x_wall", wall, oracle_wall});
            obs.push_back({"N_b",
                           [](const SystemConfig& s, double t) {
                               const double e = s.epsilon;
                               return phonon_order0_t(s, t) +
                                      e * phonon_order1_resonant(s, t) +
                                      e * e * phonon_order2_resonant(s, t);
                           },
                           oracle_nb});
            obs.push_back({"N_k",
                           [](const SystemConfig& s, double t) {
                               const double e = s.epsilon;
                               // Vacuum second order; the missing mu_k^2
                               // cross terms are part of the eps^3-level
                               // residual budget at this mu_k.
                               return photon_order0(s, s.initial.k, t) +
                                      e * photon_order1_full(s, t) +
                                      e * e *
                                          photon_order2(s, s.initial.k, t).total();
                           },
                           oracle_nk});
            break;
    }
    // The wall engine series carries an extra eps relative to <X_b>; rescale
    // the oracle reading to the same normalization.
    return obs;
}

} // namespace detail

/// Runs one scenario at one eps; returns per-observable deviations plus the
/// raw engine/oracle series.
struct SingleRun {
    std::vector<double> t_grid;
    std::vector<std::string> names;
    std::vector<std::vector<double>> engine; // [observable][time]
    std::vector<std::vector<double>> oracle;
    double max_leakage = 0.0;
    double max_purity_drift = 0.0;
    double max_norm_drift = 0.0;
};

inline SingleRun run_scenario(CompareScenario sc, double eps,
                              const CompareSettings& cfg,
                              const std::vector<double>& t_grid) {
    const SystemConfig sys = make_scenario_system(sc, eps);
    const Basis basis =
        make_basis({sys.initial.k, sys.initial.kp}, {cfg.n_max, cfg.n_max},
                   cfg.m_max);
    Evolver ev(sys, basis);
    const auto trace = ev.run(t_grid, cfg.tol);

    SingleRun out;
    out.t_grid = t_grid;
    const auto obs = detail::scenario_observables(sc);
    for (const auto& ob : obs) {
        out.names.push_back(ob.name);
        std::vector<double> e_series, o_series;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            e_series.push_back(ob.engine(sys, t_grid[i]));
            double ov = ob.oracle(trace[i]);
            if (ob.name == "x_wall") ov *= sys.epsilon; // (x-L)/L = 2 eps <X_b>
            o_series.push_back(ov);
        }
        out.engine.push_back(std::move(e_series));
        out.oracle.push_back(std::move(o_series));
    }
    for (const auto& o : trace) {
        out.max_leakage = std::max(out.max_leakage, o.leakage);
        out.max_purity_drift = std::max(out.max_purity_drift,
                                        std::abs(o.purity - trace.front().purity));
        out.max_norm_drift = std::max(out.max_norm_drift, o.norm_drift);
    }
    return out;
}

inline std::vector<double> default_t_grid(CompareScenario sc,
                                          const CompareSettings& cfg) {
    // The grid must respect the perturbative window of the *larger* eps.
    const SystemConfig ref = make_scenario_system(sc, cfg.eps2);
    // Coherence horizon of the resonance being driven: the time at which its
    // wall decay factor reaches zero. Degenerate: 1 - (eps q_k t)^2/4 with
    // q_k = w~_k, i.e. t_c = 2/(eps w~_k). Nondegenerate: both modes drain
    // the phonons, 1 - (eps q_kk' t)^2/2, i.e. t_c = sqrt(2)/(eps q_kk').
    double t_c = ref.t_coherence(ref.initial.k);
    if (sc == CompareScenario::nondegenerate)
        t_c = std::sqrt(2.0) /
              (ref.epsilon * ref.q_cross(ref.initial.k, ref.initial.kp));
    const double t_max = cfg.t_frac * t_c;
    std::vector<double> g;
    for (int i = 1; i <= cfg.t_points; ++i)
        g.push_back(t_max * i / cfg.t_points);
    return g;
}

inline ErrorReport compare_with_perturbative(CompareScenario sc,
                                             const CompareSettings& cfg = {}) {
    const auto t_grid = default_t_grid(sc, cfg);
    const SingleRun r1 = run_scenario(sc, cfg.eps1, cfg, t_grid);
    const SingleRun r2 = run_scenario(sc, cfg.eps2, cfg, t_grid);

    ErrorReport rep;
    rep.scenario = sc;
    rep.eps1 = cfg.eps1;
    rep.eps2 = cfg.eps2;
    auto deviations = [](const SingleRun& r) {
        std::vector<ObservableDeviation> out;
        for (std::size_t j = 0; j < r.names.size(); ++j) {
            double scale = 0.0;
            for (double v : r.oracle[j]) scale = std::max(scale, std::abs(v));
            if (scale == 0.0) scale = 1.0;
            double mx = 0.0, ss = 0.0, ma = 0.0;
            for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
                const double a = std::abs(r.engine[j][i] - r.oracle[j][i]);
                const double d = a / scale;
                mx = std::max(mx, d);
                ma = std::max(ma, a);
                ss += d * d;
            }
            out.push_back({r.names[j], mx, std::sqrt(ss / r.t_grid.size()), ma, 0.0});
        }
        return out;
    };
    rep.at_eps1 = deviations(r1);
    rep.at_eps2 = deviations(r2);
    for (std::size_t j = 0; j < rep.at_eps1.size(); ++j) {
        const double d1 = rep.at_eps1[j].max_abs, d2 = rep.at_eps2[j].max_abs;
        double expn = 0.0;
        if (d1 > 0.0 && d2 > 0.0)
            expn = std::log(d2 / d1) / std::log(cfg.eps2 / cfg.eps1);
        rep.at_eps1[j].exponent = rep.at_eps2[j].exponent = expn;
    }
    rep.max_leakage = std::max(r1.max_leakage, r2.max_leakage);
    rep.max_purity_drift = std::max(r1.max_purity_drift, r2.max_purity_drift);
    rep.max_norm_drift = std::max(r1.max_norm_drift, r2.max_norm_drift);
    return rep;
}

} // namespace casimech::fock

#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "casimech/averages.hpp"
#include "casimech/fock/compare.hpp"
#include "casimech/force.hpp"
#include "casimech/io/config.hpp"
#include "casimech/io/csv.hpp"
#include "casimech/io/sha256.hpp"
#include "casimech/phonons.hpp"
#include "casimech/photons.hpp"
#include "casimech/resonance.hpp"
#include "casimech/system.hpp"
#include "casimech/wall.hpp"

namespace casimech::cli {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_scale = false;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(points);
        for (int i = 0; i < points; ++i) {
            const double f = (points == 1) ? 0.0 : double(i) / (points - 1);
            if (log_scale)
                v.push_back(start * std::pow(stop / start, f));
            else
                v.push_back(start + (stop - start) * f);
        }
        return v;
    }
};

struct RunConfig {
    std::string scenario;
    CavitySpec cavity;
    MechanicalSpec mech;
    InitialState initial;
    std::vector<DriveProfile> drives;
    GridSpec grid;
    std::vector<double> times;
    std::string output = "out.csv";
    unsigned seed = 0;
    // oracle_compare block
    std::string compare_scenario = "dce_vacuum";
    double eps1 = 1e-3, eps2 = 3e-3;
    int n_max = 10, m_max = 12, t_points = 8;
    // force block
    double tau = 1e-6;        // s
    double length_ref = 1e-5; // reference length L0, m
};

namespace detail {

inline DriveProfile parse_drive(const io::Config& c, const std::string& sec,
                                DriveTarget target) {
    DriveProfile d;
    d.target = target;
    const std::string form = c.text_or(sec, "form", "exdr_ramp");
    if (form == "exdr_ramp")
        d.form = DriveForm::exdr_ramp;
    else if (form == "zero")
        d.form = DriveForm::zero;
    else
        throw io::ConfigError("[" + sec + "] form must be exdr_ramp or zero");
    d.g = c.number_or(sec, "g", 0.0);
    d.Omega = c.number_or(sec, "Omega", 0.0);
    return d;
}

} // namespace detail

inline RunConfig parse_run_config(const io::Config& c) {
    RunConfig rc;
    rc.scenario = c.text("run", "scenario");
    static const char* known[] = {"wall_trajectory", "photon_number",
                                  "phonon_number",   "resonance_scan",
                                  "force_sweep",     "oracle_compare",
                                  "critical_length"};
    bool ok = false;
    for (const char* k : known) ok = ok || rc.scenario == k;
    if (!ok) throw io::ConfigError("unknown scenario: " + rc.scenario);

    rc.output = c.text_or("run", "output", rc.scenario + ".csv");
    rc.seed = static_cast<unsigned>(c.number_or("run", "seed", 0.0));

    rc.cavity.length = c.number_or("cavity", "length", 1e-5);
    rc.cavity.num_modes = static_cast<int>(c.number_or("cavity", "num_modes", 64));
    rc.cavity.field_mass = c.number_or("cavity", "field_mass", 0.0);

    const double fs = M_PI * speed_of_light / rc.cavity.length;
    if (c.has("mechanical", "omega_tilde"))
        rc.mech.omega = c.number("mechanical", "omega_tilde") * fs;
    else
        rc.mech.omega = c.number_or("mechanical", "omega", 2.0 * fs);
    rc.mech.mirror_mass = c.number_or("mechanical", "mirror_mass", 1e-16);

    rc.initial.mu_k = c.number_or("initial", "mu_k", 0.0);
    rc.initial.mu_kp = c.number_or("initial", "mu_kp", 0.0);
    rc.initial.k = static_cast<int>(c.number_or("initial", "k", 1));
    rc.initial.kp = static_cast<int>(c.number_or("initial", "kp", 2));
    rc.initial.beta_mag = c.number_or("initial", "beta_mag", 0.0);
    rc.initial.theta = c.number_or("initial", "theta", 0.0);
    rc.initial.squeeze_r = c.number_or("initial", "squeeze_r", 0.0);
    rc.initial.squeeze_phi = c.number_or("initial", "squeeze_phi", 0.0);
    rc.initial.temperature = c.number_or("initial", "temperature", 0.0);
    rc.initial.n_thermal_override =
        c.number_or("initial", "n_thermal_override", -1.0);

    if (c.sections().count("drive_mechanical"))
        rc.drives.push_back(detail::parse_drive(c, "drive_mechanical",
                                                DriveTarget::mechanical));
    if (c.sections().count("drive_mode_k"))
        rc.drives.push_back(detail::parse_drive(c, "drive_mode_k",
                                                DriveTarget::mode_k));
    if (c.sections().count("drive_mode_kp"))
        rc.drives.push_back(detail::parse_drive(c, "drive_mode_kp",
                                                DriveTarget::mode_kp));

    const bool needs_grid = rc.scenario != "oracle_compare" &&
                            rc.scenario != "critical_length";
    if (needs_grid) {
        rc.grid.start = c.number("grid", "start");
        rc.grid.stop = c.number("grid", "stop");
        rc.grid.points = static_cast<int>(c.number("grid", "points"));
        rc.grid.log_scale = c.text_or("grid", "scale", "linear") == "log";
        if (rc.grid.points < 2)
            throw io::ConfigError("grid.points must be >= 2");
        if (rc.grid.log_scale && !(rc.grid.start > 0.0 && rc.grid.stop > 0.0))
            throw io::ConfigError("grid bounds must be > 0 for log scale");
    }
    if (c.has("times", "values")) rc.times = c.array("times", "values");

    rc.compare_scenario = c.text_or("oracle", "scenario", rc.compare_scenario);
    rc.eps1 = c.number_or("oracle", "eps1", rc.eps1);
    rc.eps2 = c.number_or("oracle", "eps2", rc.eps2);
    rc.n_max = static_cast<int>(c.number_or("oracle", "n_max", rc.n_max));
    rc.m_max = static_cast<int>(c.number_or("oracle", "m_max", rc.m_max));
    rc.t_points = static_cast<int>(c.number_or("oracle", "t_points", rc.t_points));

    rc.tau = c.number_or("force", "tau", rc.tau);
    rc.length_ref = c.number_or("force", "length_ref", rc.cavity.length);
    return rc;
}

/// Canonical serialization; parse(serialize(rc)) == rc.
inline std::string serialize_run_config(const RunConfig& rc) {
    std::ostringstream o;
    auto n = [](double v) { return io::format_double(v); };
    o << "[run]\n";
    o << "scenario = \"" << rc.scenario << "\"\n";
    o << "output = \"" << rc.output << "\"\n";
    o << "seed = " << rc.seed << "\n";
    o << "\n[cavity]\n";
    o << "length = " << n(rc.cavity.length) << "\n";
    o << "num_modes = " << rc.cavity.num_modes << "\n";
    o << "field_mass = " << n(rc.cavity.field_mass) << "\n";
    o << "\n[mechanical]\n";
    o << "omega = " << n(rc.mech.omega) << "\n";
    o << "mirror_mass = " << n(rc.mech.mirror_mass) << "\n";
    o << "\n[initial]\n";
    o << "mu_k = " << n(rc.initial.mu_k) << "\n";
    o << "mu_kp = " << n(rc.initial.mu_kp) << "\n";
    o << "k = " << rc.initial.k << "\n";
    o << "kp = " << rc.initial.kp << "\n";
    o << "beta_mag = " << n(rc.initial.beta_mag) << "\n";
    o << "theta = " << n(rc.initial.theta) << "\n";
    o << "squeeze_r = " << n(rc.initial.squeeze_r) << "\n";
    o << "squeeze_phi = " << n(rc.initial.squeeze_phi) << "\n";
    o << "temperature = " << n(rc.initial.temperature) << "\n";
    o << "n_thermal_override = " << n(rc.initial.n_thermal_override) << "\n";
    for (const auto& d : rc.drives) {
        const char* sec = d.target == DriveTarget::mechanical ? "drive_mechanical"
                          : d.target == DriveTarget::mode_k   ? "drive_mode_k"
                                                              : "drive_mode_kp";
        o << "\n[" << sec << "]\n";
        o << "form = \"" << (d.form == DriveForm::exdr_ramp ? "exdr_ramp" : "zero")
          << "\"\n";
        o << "g = " << n(d.g) << "\n";
        o << "Omega = " << n(d.Omega) << "\n";
    }
    if (rc.grid.points > 0) {
        o << "\n[grid]\n";
        o << "start = " << n(rc.grid.start) << "\n";
        o << "stop = " << n(rc.grid.stop) << "\n";
        o << "points = " << rc.grid.points << "\n";
        o << "scale = \"" << (rc.grid.log_scale ? "log" : "linear") << "\"\n";
    }
    if (!rc.times.empty()) {
        o << "\n[times]\nvalues = [";
        for (std::size_t i = 0; i < rc.times.size(); ++i)
            o << (i ? ", " : "") << n(rc.times[i]);
        o << "]\n";
    }
    o << "\n[oracle]\n";
    o << "scenario = \"" << rc.compare_scenario << "\"\n";
    o << "eps1 = " << n(rc.eps1) << "\n";
    o << "eps2 = " << n(rc.eps2) << "\n";
    o << "n_max = " << rc.n_max << "\n";
    o << "m_max = " << rc.m_max << "\n";
    o << "t_points = " << rc.t_points << "\n";
    o << "\n[force]\n";
    o << "tau = " << n(rc.tau) << "\n";
    o << "length_ref = " << n(rc.length_ref) << "\n";
    return o.str();
}

namespace detail {

/// Runs job(i) for i in [0, n) on `threads` workers; results land in a
/// pre-sized vector so output order is deterministic.
template <typename Job>
void parallel_for(int n, int threads, const Job& job) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex err_mtx;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lk(err_mtx);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nw = std::min(threads, n);
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace detail

struct RunResult {
    std::vector<std::filesystem::path> outputs;
    std::vector<std::string> warnings;
};

inline RunResult run(const RunConfig& rc, const std::filesystem::path& out_dir,
                     int threads = 1) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string sha = io::sha256_hex(serialize_run_config(rc));
    const fs::path out_path = out_dir / rc.output;
    RunResult result;
    result.outputs.push_back(out_path);

    auto make_sys = [&](double omega_tilde = -1.0) {
        MechanicalSpec m = rc.mech;
        if (omega_tilde > 0.0)
            m.omega = omega_tilde * M_PI * speed_of_light / rc.cavity.length;
        SystemConfig s = make_system(rc.cavity, m, rc.initial, rc.drives);
        for (const auto& w : s.warnings) result.warnings.push_back(w);
        return s;
    };

    if (rc.scenario == "wall_trajectory") {
        const SystemConfig sys = make_sys();
        io::CsvWriter csv(out_path.string(), sha,
                          {"t_tilde", "x_over_L", "order1", "order2", "order3",
                           "gamma"});
        const auto ts = rc.grid.values();
        std::vector<std::vector<double>> rows(ts.size());
        detail::parallel_for(int(ts.size()), threads, [&](int i) {
            const double t = ts[i];
            rows[i] = {t,
                       wall_position(sys, t),
                       wall_order1(sys, t),
                       wall_order2_full(sys, t),
                       wall_order3_resonant(sys, t),
                       gamma_decay(sys, t)};
        });
        for (const auto& r : rows) csv.row(r);
    } else if (rc.scenario == "photon_number") {
        const SystemConfig sys = make_sys();
        io::CsvWriter csv(out_path.string(), sha,
                          {"t_tilde", "n_total", "n0", "n1", "n2_beta", "n2_vac",
                           "n2_sq", "n2_T", "n2_sqT", "n2_md", "n2_tail"});
        const auto ts = rc.grid.values();
        std::vector<std::vector<double>> rows(ts.size());
        detail::parallel_for(int(ts.size()), threads, [&](int i) {
            const double t = ts[i];
            const double e = sys.epsilon;
            const double n0 = photon_order0(sys, sys.initial.k, t);
            const double n1 = photon_order1_full(sys, t);
            const PhotonBreakdown b = photon_order2(sys, sys.initial.k, t);
            rows[i] = {t,
                       n0 + e * n1 + e * e * b.total(),
                       n0,
                       n1,
                       b.n_beta,
                       b.n_vac,
                       b.n_sq,
                       b.n_T,
                       b.n_sqT,
                       b.n_md,
                       b.tail};
        });
        for (const auto& r : rows) csv.row(r);
    } else if (rc.scenario == "phonon_number") {
        const SystemConfig sys = make_sys();
        io::CsvWriter csv(out_path.string(), sha,
                          {"t_tilde", "n_total", "n0", "n1", "n2"});
        const auto ts = rc.grid.values();
        std::vector<std::vector<double>> rows(ts.size());
        detail::parallel_for(int(ts.size()), threads, [&](int i) {
            const double t = ts[i];
            const double e = sys.epsilon;
            const double n0 = phonon_order0_t(sys, t);
            const double n1 = phonon_order1_resonant(sys, t);
            const double n2 = phonon_order2_resonant(sys, t);
            rows[i] = {t, n0 + e * n1 + e * e * n2, n0, n1, n2};
        });
        for (const auto& r : rows) csv.row(r);
    } else if (rc.scenario == "resonance_scan") {
        io::CsvWriter csv(out_path.string(), sha,
                          {"omega_tilde", "t_tilde", "delta_n_beta"});
        const auto ws = rc.grid.values();
        const auto& ts = rc.times;
        if (ts.empty()) throw io::ConfigError("resonance_scan needs [times]");
        const int n = int(ws.size() * ts.size());
        std::vector<std::vector<double>> rows(n);
        detail::parallel_for(n, threads, [&](int i) {
            const double w = ws[i / ts.size()];
            const double t = ts[i % ts.size()];
            const SystemConfig sys = make_sys(w);
            // Coherent-channel photon number per unit |beta|^2: the secular
            // t^2 weight makes the resonance peaks grow with time.
            const double q = sys.q_self(sys.initial.k);
            rows[i] = {w, t,
                       q * q * t * t / 2.0 *
                           photon_delta_n_beta(sys, sys.initial.k, t)};
        });
        for (const auto& r : rows) csv.row(r);
    } else if (rc.scenario == "force_sweep") {
        io::CsvWriter csv(out_path.string(), sha,
                          {"L_over_L0", "tau", "force_retuned", "force_fixed"});
        const auto fractions = rc.grid.values();
        std::vector<double> taus = rc.times.empty()
                                       ? std::vector<double>{0.0, rc.tau}
                                       : rc.times;
        const DriveProfile* d = nullptr;
        for (const auto& dr : rc.drives)
            if (dr.target == DriveTarget::mechanical && dr.form != DriveForm::zero)
                d = &dr;
        const double g = d ? d->g : 0.0;
        const double nbar = rc.initial.n_mech_initial(0.0) + g * g / 4.0 +
                            g * rc.initial.beta_mag * std::sin(rc.initial.theta);
        for (double f : fractions) {
            const double L = f * rc.length_ref;
            for (double tau : taus) {
                csv.row({f, tau,
                         casimir_force(L, tau, nbar, rc.mech.mirror_mass,
                                       ForceMode::retuned),
                         casimir_force(L, tau, nbar, rc.mech.mirror_mass,
                                       ForceMode::fixed, rc.length_ref)});
            }
        }
    } else if (rc.scenario == "critical_length") {
        io::CsvWriter csv(out_path.string(), sha,
                          {"nbar_b", "tau", "L_c", "L_min", "F_min"});
        const double nbar = rc.initial.n_mech_initial(0.0);
        csv.row({nbar, rc.tau, critical_length(rc.tau, nbar, rc.mech.mirror_mass),
                 minimum_force_length(rc.tau, nbar, rc.mech.mirror_mass),
                 minimum_force(rc.tau, nbar, rc.mech.mirror_mass)});
    } else if (rc.scenario == "oracle_compare") {
        fock::CompareScenario sc;
        if (rc.compare_scenario == "dce_vacuum")
            sc = fock::CompareScenario::dce_vacuum;
        else if (rc.compare_scenario == "phonon_exchange")
            sc = fock::CompareScenario::phonon_exchange;
        else if (rc.compare_scenario == "nondegenerate")
            sc = fock::CompareScenario::nondegenerate;
        else if (rc.compare_scenario == "drive_nmd")
            sc = fock::CompareScenario::drive_nmd;
        else if (rc.compare_scenario == "massive_photon")
            sc = fock::CompareScenario::massive_photon;
        else
            throw io::ConfigError("unknown oracle scenario: " +
                                  rc.compare_scenario);
        fock::CompareSettings cs;
        cs.eps1 = rc.eps1;
        cs.eps2 = rc.eps2;
        cs.n_max = rc.n_max;
        cs.m_max = rc.m_max;
        cs.t_points = rc.t_points;
        const fock::ErrorReport rep = fock::compare_with_perturbative(sc, cs);

        std::ofstream js(out_path);
        if (!js)
            throw std::runtime_error("cannot open output file: " +
                                     out_path.string());
        auto emit_devs = [&](const std::vector<fock::ObservableDeviation>& devs) {
            js << "[";
            for (std::size_t i = 0; i < devs.size(); ++i) {
                js << (i ? "," : "") << "{\"name\":\"" << devs[i].name
                   << "\",\"max_rel\":" << io::format_double(devs[i].max_rel)
                   << ",\"rms_rel\":" << io::format_double(devs[i].rms_rel)
                   << ",\"max_abs\":" << io::format_double(devs[i].max_abs)
                   << ",\"exponent\":" << io::format_double(devs[i].exponent)
                   << "}";
            }
            js << "]";
        };
        js << "{\"scenario\":\"" << fock::to_string(sc) << "\",";
        js << "\"config_sha256\":\"" << sha << "\",";
        js << "\"eps1\":" << io::format_double(rep.eps1) << ",";
        js << "\"eps2\":" << io::format_double(rep.eps2) << ",";
        js << "\"deviations_eps1\":";
        emit_devs(rep.at_eps1);
        js << ",\"deviations_eps2\":";
        emit_devs(rep.at_eps2);
        js << ",\"max_leakage\":" << io::format_double(rep.max_leakage);
        js << ",\"max_purity_drift\":" << io::format_double(rep.max_purity_drift);
        js << ",\"max_norm_drift\":" << io::format_double(rep.max_norm_drift);
        js << "}\n";
    } else {
        throw io::ConfigError("unknown scenario: " + rc.scenario);
    }
    return result;
}

} // namespace casimech::cli

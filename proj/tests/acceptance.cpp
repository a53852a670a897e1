// Acceptance gate: one integration check per release criterion, one PASS/FAIL
// line each. Exits with the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "casimech/fock/compare.hpp"
#include "casimech/force.hpp"
#include "casimech/phonons.hpp"
#include "casimech/photons.hpp"
#include "casimech/system.hpp"
#include "casimech/wall.hpp"
#include "test_helpers.hpp"

using namespace casimech;
using test_helpers::make_test_system;
using test_helpers::mech_drive;

namespace {

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

struct Criterion {
    bool ok = true;
    std::string detail;

    void info(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }

    void require(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        info("FAIL " + what);
    }
};

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------- criterion 1
// Static force from the regularized mode sum: cutoff subtraction plus
// extrapolation to zero cutoff recovers -hbar pi c / (24 L^2) to 1e-8,
// in under a second.
Criterion criterion1() {
    Criterion c;
    const double t0 = now_seconds();
    double worst = 0.0;
    for (double L : {1e-6, 1e-5, 1e-4}) {
        const double exact = casimir_static(L);
        const double rel = std::abs(casimir_static_regularized(L) - exact) /
                           std::abs(exact);
        worst = std::max(worst, rel);
    }
    const double dt = now_seconds() - t0;
    c.info(strf("rel err %.2e", worst));
    c.require(worst <= 1e-8, strf("rel err %.2e (tol 1e-8)", worst));
    c.require(dt < 1.0, strf("%.2f s (budget 1 s)", dt));
    return c;
}

// ---------------------------------------------------------------- criterion 2
// Resonance scan of the coherent-channel photon number for mode k = 1:
// maxima at w~ = 2, 3, 4, 5 within one grid step, peak heights growing with
// the scan time, and the w~ = 2 width narrowing as 1/t, within a minute.
Criterion criterion2() {
    Criterion c;
    const double t0 = now_seconds();
    const double w_lo = 1.75, dw = 0.005;
    const int npts = 701; // up to w~ = 5.25
    std::vector<double> om(npts);
    for (int i = 0; i < npts; ++i) om[i] = w_lo + dw * i;

    auto scan = [&](double t) {
        std::vector<double> s(npts);
        for (int i = 0; i < npts; ++i) {
            const SystemConfig sys = make_test_system(om[i], 1e-3, {}, {}, 16);
            const double q = sys.q_self(1);
            s[i] = q * q * t * t / 2.0 * photon_delta_n_beta(sys, 1, t);
        }
        return s;
    };
    auto argmax_near = [&](const std::vector<double>& s, double target) {
        int best = -1;
        for (int i = 0; i < npts; ++i) {
            if (std::abs(om[i] - target) > 0.15) continue;
            if (best < 0 || s[i] > s[best]) best = i;
        }
        return best;
    };
    auto fwhm_at = [&](const std::vector<double>& s, int peak) {
        const double half = s[peak] / 2.0;
        double left = om.front(), right = om.back();
        for (int i = peak; i > 0; --i) {
            if (s[i - 1] < half) {
                left = om[i - 1] +
                       dw * (half - s[i - 1]) / (s[i] - s[i - 1]);
                break;
            }
        }
        for (int i = peak; i + 1 < npts; ++i) {
            if (s[i + 1] < half) {
                right = om[i] + dw * (s[i] - half) / (s[i] - s[i + 1]);
                break;
            }
        }
        return right - left;
    };

    const std::vector<double> times = {30.0, 50.0, 100.0};
    std::vector<std::vector<double>> scans;
    for (double t : times) scans.push_back(scan(t));

    double worst_off = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j)
        for (double target : {2.0, 3.0, 4.0, 5.0}) {
            const int p = argmax_near(scans[j], target);
            worst_off = std::max(worst_off, std::abs(om[p] - target));
        }
    c.require(worst_off <= dw + 1e-12,
              strf("peak offset %.4f (tol %.4f)", worst_off, dw));

    bool grows = true;
    for (double target : {2.0, 3.0, 4.0, 5.0}) {
        double prev = -1.0;
        for (std::size_t j = 0; j < times.size(); ++j) {
            const double h = scans[j][argmax_near(scans[j], target)];
            if (h <= prev) grows = false;
            prev = h;
        }
    }
    c.require(grows, "peak heights grow with scan time");

    const double f30 = fwhm_at(scans[0], argmax_near(scans[0], 2.0));
    const double f100 = fwhm_at(scans[2], argmax_near(scans[2], 2.0));
    const double ratio = f30 / f100, expect = 100.0 / 30.0;
    c.info(strf("peak offset %.4f, FWHM ratio %.2f", worst_off, ratio));
    c.require(std::abs(ratio - expect) <= 0.2 * expect,
              strf("FWHM ratio %.2f (expect %.2f +- 20%%)", ratio, expect));
    const double dt = now_seconds() - t0;
    c.require(dt < 60.0, strf("%.1f s (budget 60 s)", dt));
    return c;
}

// ---------------------------------------------------------------- criterion 3
// Force sweep at L0 = 10 um, M = 1e-16 kg, w = 2 w_1, tau = 1 us: no sign
// inversion at |beta|^2 = 1 in L/L0 in [0.05, 1]; critical lengths
// L_c/L0 = 0.11 +- 0.01 (|beta|^2 = 50) and 0.14 +- 0.01 (|beta|^2 = 100);
// photon numbers spanning ~1e-6 .. 1e-4 within a factor 3; under 10 s.
Criterion criterion3() {
    Criterion c;
    const double t0 = now_seconds();
    const double L0 = 1e-5, M = 1e-16, tau = 1e-6;

    bool attractive = true;
    for (int i = 0; i < 96; ++i) {
        const double L = L0 * (0.05 + 0.95 * i / 95.0);
        if (casimir_force(L, tau, 1.0, M) >= 0.0) attractive = false;
    }
    c.require(attractive, "no sign inversion at |beta|^2 = 1");

    const double lc50 = critical_length(tau, 50.0, M) / L0;
    const double lc100 = critical_length(tau, 100.0, M) / L0;
    c.require(std::abs(lc50 - 0.11) <= 0.01,
              strf("L_c/L0 = %.4f at |beta|^2 = 50 (expect 0.11 +- 0.01)", lc50));
    c.require(std::abs(lc100 - 0.14) <= 0.01,
              strf("L_c/L0 = %.4f at |beta|^2 = 100 (expect 0.14 +- 0.01)", lc100));

    auto photons = [&](double beta2) {
        CavitySpec cav;
        cav.length = L0;
        cav.num_modes = 16;
        MechanicalSpec mech;
        mech.omega = 2.0 * M_PI * speed_of_light / L0; // 2 w_1
        mech.mirror_mass = M;
        InitialState ini;
        ini.beta_mag = std::sqrt(beta2);
        const SystemConfig sys = make_system(cav, mech, ini);
        const double t = tau * sys.freq_scale;
        return sys.epsilon * sys.epsilon * photon_order2(sys, 1, t).total();
    };
    const double n1 = photons(1.0), n100 = photons(100.0);
    c.info(strf("L_c/L0 = %.4f / %.4f, N_k = %.2e / %.2e", lc50, lc100, n1, n100));
    c.require(n1 >= 1e-6 / 3.0 && n1 <= 3e-6,
              strf("N_k = %.2e at |beta|^2 = 1 (expect ~1e-6 within x3)", n1));
    c.require(n100 >= 1e-4 / 3.0 && n100 <= 3e-4,
              strf("N_k = %.2e at |beta|^2 = 100 (expect ~1e-4 within x3)", n100));
    const double dt = now_seconds() - t0;
    c.require(dt < 10.0, strf("%.1f s (budget 10 s)", dt));
    return c;
}

// ---------------------------------------------------------------- criterion 4
// (a) The coherent channel approaches its secular form: N_beta / (|beta|^2
// w_k^2 t^2) within 2% of 1 for w_k t >= 50. (b) The time-averaged photon
// number matches the closed form to 1e-6 for 20 random parameter tuples at
// w_k tau = 100.
Criterion criterion4() {
    Criterion c;
    {
        InitialState ini;
        ini.beta_mag = 1.0;
        ini.theta = M_PI / 2.0;
        const SystemConfig sys = make_test_system(2.0, 1e-3, ini, {}, 64);
        const double q = sys.q_self(1);
        double worst = 0.0;
        for (double t : {50.0, 60.0, 70.0, 85.0, 100.0, 140.0, 200.0, 300.0}) {
            const double v = photon_order2(sys, 1, t).n_beta / (q * q * t * t);
            worst = std::max(worst, std::abs(v - 1.0));
        }
        c.info(strf("secular limit off by %.4f", worst));
        c.require(worst <= 0.02, strf("secular limit off by %.3f (tol 0.02)", worst));
    }
    {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const double fs = M_PI * speed_of_light / 1e-5;
        const double tau = 100.0;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double b = 1.5 * U(rng);
            const double th = M_PI * (2.0 * U(rng) - 1.0);
            const double r = 0.5 * U(rng);
            const double NT = U(rng);
            const double g = 1.5 * (2.0 * U(rng) - 1.0);
            InitialState ini;
            ini.beta_mag = b;
            ini.theta = th;
            ini.squeeze_r = r;
            ini.squeeze_phi = 2.0 * M_PI * U(rng);
            ini.n_thermal_override = NT;
            const SystemConfig sys = make_test_system(
                2.0, 1e-3, ini, {mech_drive(g, 100.0, 2.0 * fs)}, 2);
            const double q = sys.q_self(1);
            const double sh = std::sinh(r);
            const double cth = b * std::cos(th);
            const double s = g + 2.0 * b * std::sin(th);
            const double closed =
                q * q * tau * tau / 3.0 *
                    (cth * cth + sh * sh + NT + 2.0 * NT * sh * sh) +
                q * q * tau * tau / 12.0 * s * s;
            const double rel = std::abs(photon_order2_avg(sys, tau) - closed) /
                               std::max(std::abs(closed), 1e-12);
            worst = std::max(worst, rel);
        }
        c.info(strf("closed-form avg rel err %.2e", worst));
        c.require(worst <= 1e-6,
                  strf("closed-form avg rel err %.2e (tol 1e-6)", worst));
    }
    return c;
}

// ---------------------------------------------------------------- criterion 5
// Exact truncated-basis evolution vs the perturbative engine for five
// scenarios at eps in {1e-3, 3e-3}: relative deviation <= 5 eps over
// t <= 0.1 t_c, residual scaling consistent with the order-2 truncation
// (fitted eps-exponent in [2.5, 3.5]), purity drift <= 1e-9, all within
// 10 minutes.
Criterion criterion5() {
    Criterion c;
    const double t0 = now_seconds();
    const fock::CompareScenario scenarios[] = {
        fock::CompareScenario::dce_vacuum, fock::CompareScenario::phonon_exchange,
        fock::CompareScenario::nondegenerate, fock::CompareScenario::drive_nmd,
        fock::CompareScenario::massive_photon};
    double worst_ratio = 0.0, purity = 0.0;
    double expn_lo = 1e300, expn_hi = -1e300;
    for (auto sc : scenarios) {
        const fock::ErrorReport rep = fock::compare_with_perturbative(sc);
        for (const auto* devs : {&rep.at_eps1, &rep.at_eps2}) {
            const double eps = (devs == &rep.at_eps1) ? rep.eps1 : rep.eps2;
            for (const auto& d : *devs) {
                worst_ratio = std::max(worst_ratio, d.max_rel / (5.0 * eps));
                c.require(d.max_rel <= 5.0 * eps,
                          strf("%s %s rel dev %.2e at eps %.0e (tol %.1e)",
                               fock::to_string(sc), d.name.c_str(), d.max_rel,
                               eps, 5.0 * eps));
            }
        }
        // The eps-scaling of the truncation error is fitted on the wall
        // trajectory: it is the observable whose first omitted order is the
        // eps^3 secular term. The photon/phonon numbers have an eps-even
        // series from the vacuum, so their residuals scale as eps^4 (or as
        // eps^2 where the mu_k^2 second-order closed forms do not exist) and
        // carry no information about the order-2 truncation itself.
        for (const auto& d : rep.at_eps1) {
            if (d.name != "x_wall") continue;
            expn_lo = std::min(expn_lo, d.exponent);
            expn_hi = std::max(expn_hi, d.exponent);
            c.require(d.exponent >= 2.5 && d.exponent <= 3.5,
                      strf("%s %s residual exponent %.2f (expect 2.5..3.5)",
                           fock::to_string(sc), d.name.c_str(), d.exponent));
        }
        purity = std::max(purity, rep.max_purity_drift);
        c.require(rep.max_purity_drift <= 1e-9,
                  strf("%s purity drift %.1e (tol 1e-9)", fock::to_string(sc),
                       rep.max_purity_drift));
    }
    c.info(strf("worst dev/tol %.2f, exponents %.2f..%.2f, purity drift %.1e",
                worst_ratio, expn_lo, expn_hi, purity));
    const double dt = now_seconds() - t0;
    c.require(dt < 600.0, strf("%.0f s (budget 600 s)", dt));
    return c;
}

// ---------------------------------------------------------------- criterion 6
// Conservation at the degenerate resonance without a drive: the time-averaged
// <N_k> + 2 <N_b> stays at its initial value to within
// 1e-6 N_b(0) (w_k tau eps)^2 across tau in [10/w_k, 0.2 t_c], for ten random
// initial states, in both the engine and the exact evolution; under 2 min.
Criterion criterion6() {
    Criterion c;
    const double t0 = now_seconds();
    const double eps = 1e-3;
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const std::vector<double> taus = {10.0, 20.0, 40.0, 80.0, 160.0, 320.0, 400.0};

    double worst_engine = 0.0, worst_oracle = 0.0;
    for (int i = 0; i < 10; ++i) {
        InitialState ini;
        ini.beta_mag = 0.4 + 0.7 * U(rng);
        ini.theta = M_PI * (2.0 * U(rng) - 1.0);
        ini.squeeze_r = 0.3 * U(rng);
        ini.squeeze_phi = 2.0 * M_PI * U(rng);
        const SystemConfig sys = make_test_system(2.0, eps, ini, {}, 2);
        const double nb0 = sys.n_mech0;
        auto bound = [&](double tau) {
            const double u = sys.mode_freq(1) * tau * eps;
            return 1e-6 * nb0 * u * u;
        };

        // Engine: averaged closed forms (the phonon term is exactly quadratic
        // in t, so its running average is a third of its endpoint value).
        for (double tau : taus) {
            const double bal =
                eps * eps *
                (photon_order2_avg(sys, tau) +
                 2.0 * phonon_order2_resonant(sys, tau) / 3.0);
            worst_engine = std::max(worst_engine, std::abs(bal) / bound(tau));
        }

        // Oracle: running Simpson average of N_k + 2 N_b on a fine grid.
        const double dt_grid = 0.05;
        const int nseg = static_cast<int>(std::lround(taus.back() / dt_grid));
        std::vector<double> grid(nseg + 1);
        for (int j = 0; j <= nseg; ++j) grid[j] = dt_grid * j;
        const fock::Basis basis = fock::make_basis({1}, {12}, 14);
        fock::Evolver ev(sys, basis);
        const auto tr = ev.run(grid, 1e-11);
        std::vector<double> f(nseg + 1);
        for (int j = 0; j <= nseg; ++j) f[j] = tr[j].n_mode[0] + 2.0 * tr[j].n_b;
        const double c0 = f[0];
        double simpson = 0.0;
        std::size_t next_tau = 0;
        for (int j = 2; j <= nseg; j += 2) {
            simpson += dt_grid / 3.0 * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
            const double t = grid[j];
            if (next_tau < taus.size() && std::abs(t - taus[next_tau]) < 1e-9) {
                const double bal = simpson / t - c0;
                worst_oracle = std::max(worst_oracle, std::abs(bal) / bound(t));
                ++next_tau;
            }
        }
    }
    c.info(strf("|balance|/bound: engine %.2e, oracle %.2e", worst_engine,
                worst_oracle));
    c.require(worst_engine <= 1.0,
              strf("engine |balance|/bound = %.2e", worst_engine));
    c.require(worst_oracle <= 1.0,
              strf("oracle |balance|/bound = %.2e", worst_oracle));
    const double dt = now_seconds() - t0;
    c.require(dt < 120.0, strf("%.0f s (budget 120 s)", dt));
    return c;
}

// ---------------------------------------------------------------- criterion 7
// Drive-matched suppression of the wall oscillation: with g = -2 (-1)^k |beta|
// (and the phonon phase that puts the coherent motion in opposition) the
// engine amplitude is <= 1e-6 delta_L0 |beta| and the exact evolution stays
// within 10 eps delta_L0 |beta| at eps = 1e-3.
Criterion criterion7() {
    Criterion c;
    const double eps = 1e-3;
    const double fs = M_PI * speed_of_light / 1e-5;
    InitialState ini;
    ini.beta_mag = 1.0;
    ini.theta = -M_PI / 2.0;
    const double g = 2.0; // -2 (-1)^k |beta| for k = 1
    const auto drv = mech_drive(g, 100.0, 2.0 * fs);

    {
        const SystemConfig sys = make_test_system(2.0, eps, ini, {drv}, 16);
        const double e = sys.epsilon;
        double lo = 1e300, hi = -1e300;
        for (double t = 50.0; t <= 56.0; t += 0.01) {
            const double x = e * wall_order1(sys, t) +
                             e * e * wall_order2_full(sys, t) +
                             e * e * e * wall_order3_resonant(sys, t);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double amp = (hi - lo) / 2.0; // in units of L
        const double bnd = 1e-6 * e * ini.beta_mag;
        c.info(strf("engine amplitude %.1e (bound %.1e)", amp, bnd));
        c.require(amp <= bnd, strf("engine amplitude %.1e (bound %.1e)", amp, bnd));
    }
    {
        const SystemConfig sys = make_test_system(2.0, eps, ini, {drv}, 2);
        const fock::Basis basis = fock::make_basis({1}, {8}, 14);
        fock::Evolver ev(sys, basis);
        std::vector<double> grid;
        for (double t = 50.0; t <= 56.0; t += 0.02) grid.push_back(t);
        const auto tr = ev.run(grid, 1e-11);
        double lo = 1e300, hi = -1e300;
        for (const auto& o : tr) {
            const double x = 2.0 * sys.epsilon * o.x_b; // (x - L)/L
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double amp = (hi - lo) / 2.0;
        const double bnd = 10.0 * eps * sys.epsilon * ini.beta_mag;
        c.info(strf("oracle amplitude %.1e (bound %.1e)", amp, bnd));
        c.require(amp <= bnd, strf("oracle amplitude %.1e (bound %.1e)", amp, bnd));
    }
    return c;
}

// ---------------------------------------------------------------- criterion 8
// Interference of the coherent phonons with a matched drive: with
// w_k^2 t^2 |beta|^2 = w_k^2 t^2 g^2 / 4 = N_0 / 2 (r = T = 0) the photon
// number obeys N_k / N_0 = 1 + sin theta to 1e-6 across theta in [-pi, pi].
Criterion criterion8() {
    Criterion c;
    const double fs = M_PI * speed_of_light / 1e-5;
    const double b = 0.7, g = 2.0 * b, t = 20.0;
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double th = -M_PI + 2.0 * M_PI * i / 200.0;
        InitialState ini;
        ini.beta_mag = b;
        ini.theta = th;
        const SystemConfig sys =
            make_test_system(2.0, 1e-3, ini, {mech_drive(g, 100.0, 2.0 * fs)}, 2);
        const double q = sys.q_self(1);
        // Instantaneous secular photon number (three times the running
        // average of a quadratic) against N_0 = 2 w_k^2 t^2 |beta|^2.
        const double nk = 3.0 * photon_order2_avg(sys, t);
        const double n0 = 2.0 * q * q * t * t * b * b;
        worst = std::max(worst, std::abs(nk / n0 - (1.0 + std::sin(th))));
    }
    c.info(strf("max deviation %.2e", worst));
    c.require(worst <= 1e-6, strf("max deviation %.2e (tol 1e-6)", worst));
    return c;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Criterion (*run)();
    };
    const Entry entries[] = {
        {1, "static force regularization", criterion1},
        {2, "resonance scan structure", criterion2},
        {3, "force sweep and critical lengths", criterion3},
        {4, "secular limit and averaged closed form", criterion4},
        {5, "exact-evolution cross-check", criterion5},
        {6, "excitation-number conservation", criterion6},
        {7, "drive-matched wall suppression", criterion7},
        {8, "phonon-drive interference law", criterion8},
    };
    int failed = 0;
    for (const auto& e : entries) {
        const double t0 = now_seconds();
        const Criterion c = e.run();
        const double dt = now_seconds() - t0;
        std::printf("criterion %d (%s): %s [%.1f s]%s%s\n", e.id, e.name,
                    c.ok ? "PASS" : "FAIL", dt, c.detail.empty() ? "" : " - ",
                    c.detail.c_str());
        std::fflush(stdout);
        if (!c.ok) ++failed;
    }
    std::printf("acceptance: %d/8 criteria passed\n",
                8 - failed);
    return failed;
}

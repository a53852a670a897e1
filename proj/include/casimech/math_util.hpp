#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace casimech {

class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// sin(x)/x with a series fallback near the origin. The engine formulas are
/// sinc-dense at resonance, where the naive quotient loses accuracy.
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double gk_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813};
inline constexpr double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
inline constexpr double gk_wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <typename T>
inline double abs_of(const T& v) {
    return std::abs(v);
}

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& result, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T kron{}, gauss{};
    for (int i = 0; i < 15; ++i) {
        const T fv = f(c + h * gk_nodes[i]);
        kron += gk_wk[i] * fv;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * fv;
    }
    kron *= h;
    gauss *= h;
    result = kron;
    err = abs_of<T>(kron - gauss);
}

template <typename T, typename F>
void adapt(const F& f, double a, double b, double tol, int depth, T& acc) {
    T r{};
    double err;
    gk15<T>(f, a, b, r, err);
    if (err <= tol || depth > 48) {
        if (depth > 48 && err > 1e3 * tol)
            throw numeric_error("adaptive quadrature failed to converge");
        acc += r;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt<T>(f, a, m, 0.5 * tol, depth + 1, acc);
    adapt<T>(f, m, b, 0.5 * tol, depth + 1, acc);
}

} // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute tolerance.
template <typename T = double, typename F>
T integrate(const F& f, double a, double b, double abs_tol = 1e-12) {
    if (a == b) return T{};
    T acc{};
    // Seed subdivision keeps oscillatory integrands from fooling a single
    // top-level estimate on long intervals.
    const int seed = std::max(1, std::min(64, static_cast<int>((b - a) / 2.0)));
    const double step = (b - a) / seed;
    for (int i = 0; i < seed; ++i)
        detail::adapt<T>(f, a + i * step, a + (i + 1) * step, abs_tol / seed, 0, acc);
    return acc;
}

/// Richardson extrapolation of a sequence f(h), f(h/2), ... assuming an
/// even-power error expansion in h.
inline double richardson(const std::function<double(double)>& f, double h0,
                         int levels = 4) {
    constexpr int kmax = 8;
    if (levels > kmax) levels = kmax;
    double tab[kmax][kmax];
    double h = h0;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        tab[i][0] = f(h);
        for (int j = 1; j <= i; ++j) {
            const double p = std::pow(4.0, j);
            tab[i][j] = (p * tab[i][j - 1] - tab[i - 1][j - 1]) / (p - 1.0);
        }
    }
    return tab[levels - 1][levels - 1];
}

} // namespace casimech

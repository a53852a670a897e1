#pragma once

#include <cmath>
#include <string>

#include "casimech/system.hpp"

namespace casimech {

enum class ResonanceType { degenerate, nondegenerate, mode_mixing, off_resonant };

inline const char* to_string(ResonanceType t) {
    switch (t) {
        case ResonanceType::degenerate: return "degenerate";
        case ResonanceType::nondegenerate: return "nondegenerate";
        case ResonanceType::mode_mixing: return "mode_mixing";
        default: return "off_resonant";
    }
}

struct ResonanceInfo {
    ResonanceType type = ResonanceType::off_resonant;
    int k = 0;  // resonant mode (higher index for mode mixing)
    int kp = 0; // partner mode, 0 when not applicable
};

/// Matches the mechanical frequency against 2 w_k, w_k + w_k' and w_k - w_k'
/// over all cavity modes, in that order, with absolute tolerance 1e-6 w_1.
/// The first match wins.
inline ResonanceInfo classify_resonance(const SystemConfig& sys) {
    const double w = sys.omega_mech;
    const double tol = 1e-6 * sys.mode_freq(1);
    const int N = sys.cavity.num_modes;
    for (int k = 1; k <= N; ++k)
        if (std::abs(w - 2.0 * sys.mode_freq(k)) < tol)
            return {ResonanceType::degenerate, k, 0};
    for (int k = 1; k <= N; ++k)
        for (int kp = k + 1; kp <= N; ++kp)
            if (std::abs(w - (sys.mode_freq(k) + sys.mode_freq(kp))) < tol)
                return {ResonanceType::nondegenerate, k, kp};
    for (int kp = 1; kp <= N; ++kp)
        for (int k = kp + 1; k <= N; ++k)
            if (std::abs(w - (sys.mode_freq(k) - sys.mode_freq(kp))) < tol)
                return {ResonanceType::mode_mixing, k, kp};
    return {ResonanceType::off_resonant, 0, 0};
}

} // namespace casimech

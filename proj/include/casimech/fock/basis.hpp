#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "casimech/system.hpp"

namespace casimech::fock {

/// Truncated tensor-product Fock basis over a subset of cavity modes plus the
/// mechanical oscillator. Slot layout: cavity slots first (in the order of
/// `modes`), the mechanical slot last. Occupation of slot s varies fastest for
/// s = 0.
struct Basis {
    std::vector<int> modes;  // 1-based cavity mode indices
    std::vector<int> n_max;  // per-slot occupation cap (including mech slot)
    std::vector<std::int64_t> stride;
    std::int64_t dim = 0;

    int slots() const { return static_cast<int>(n_max.size()); }
    int mech_slot() const { return slots() - 1; }

    int occupation(std::int64_t idx, int slot) const {
        return static_cast<int>(idx / stride[slot] % (n_max[slot] + 1));
    }
};

inline Basis make_basis(const std::vector<int>& modes,
                        const std::vector<int>& photon_max, int phonon_max,
                        std::int64_t dim_cap = 200000) {
    if (modes.empty()) throw std::invalid_argument("basis needs at least one mode");
    if (photon_max.size() != modes.size())
        throw std::invalid_argument("photon_max size must match modes");
    if (phonon_max < 1) throw std::invalid_argument("phonon_max must be >= 1");
    Basis b;
    b.modes = modes;
    b.n_max.reserve(modes.size() + 1);
    for (int m : photon_max) {
        if (m < 1) throw std::invalid_argument("photon_max entries must be >= 1");
        b.n_max.push_back(m);
    }
    b.n_max.push_back(phonon_max);
    b.stride.resize(b.n_max.size());
    std::int64_t d = 1;
    for (std::size_t s = 0; s < b.n_max.size(); ++s) {
        b.stride[s] = d;
        d *= b.n_max[s] + 1;
        if (d > dim_cap)
            throw std::invalid_argument("basis dimension exceeds the cap");
    }
    b.dim = d;
    return b;
}

} // namespace casimech::fock

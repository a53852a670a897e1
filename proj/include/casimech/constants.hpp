#pragma once

namespace casimech {

// CODATA values, SI units.
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double speed_of_light = 2.99792458e8; // m / s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K

} // namespace casimech

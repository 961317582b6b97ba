#ifndef CARLFWM_CONSTANTS_HPP
#define CARLFWM_CONSTANTS_HPP

namespace carlfwm::constants {

// CODATA 2018. c, h and k_B are exact by definition of the SI.
inline constexpr double speed_of_light = 299792458.0;        // m s^-1
inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double epsilon0 = 8.8541878128e-12;         // F m^-1
inline constexpr double boltzmann = 1.380649e-23;            // J K^-1
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

// 133Cs atomic mass, 132.905451931 u
inline constexpr double cs133_mass = 2.2069469509555389e-25; // kg

} // namespace carlfwm::constants

#endif

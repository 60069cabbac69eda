#pragma once

#include <numbers>

namespace modegate::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J / K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F / m

// Coulomb pair coefficient q^2 / (4 pi eps0), N m^2.
inline constexpr double coulomb_coefficient =
    elementary_charge * elementary_charge /
    (4.0 * std::numbers::pi * vacuum_permittivity);

// 171Yb+ mass in atomic mass units.
inline constexpr double yb171_mass_u = 170.936323;

// Effective wavenumber of counter-propagating 355 nm Raman beams,
// sqrt(2) * 2 pi / lambda, rad/m.
inline constexpr double raman_355_delta_k =
    std::numbers::sqrt2 * 2.0 * std::numbers::pi / 355.0e-9;

}  // namespace modegate::constants

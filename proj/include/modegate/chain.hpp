#pragma once

#include <cstddef>
#include <vector>

#include "modegate/constants.hpp"

namespace modegate::modes {

// Physical scenario: N ions in a linear trap, harmonic axial confinement plus
// per-ion transverse stiffness (pseudopotential + DC), coupled by Coulomb
// repulsion. Curvatures are spring constants in N/m, i.e. m·ω² for the
// corresponding single-ion frequency.
struct ChainConfig {
  std::size_t ion_count = 0;
  double ion_mass = 0.0;                            // kg
  double axial_curvature = 0.0;                     // N/m, m·ω_z²
  std::vector<double> transverse_curvature_per_ion; // N/m, one per ion
  double coupling_wavenumber = constants::raman_355_delta_k; // rad/m (Δk)
  std::vector<double> nbar_per_mode;                // mean phonon numbers n̄_p
  std::vector<double> initial_phases;               // motional phases φ_p, rad

  // All ions identical, same transverse stiffness everywhere; n̄ and φ filled
  // with a common value (φ = 0).
  static ChainConfig uniform(std::size_t n, double mass_kg,
                             double axial_curvature, double transverse_curvature,
                             double nbar = 0.1);

  void validate() const; // throws ConfigError on any broken invariant
};

struct EquilibriumChain {
  std::vector<double> positions;  // m, strictly ascending, centroid at 0
  double gradient_norm = 0.0;     // max |force residual| in scaled units
};

// Characteristic length ℓ with ℓ³ = q²/(4πε₀ c_ax): the unit in which the
// scaled equilibrium problem is solved (2-ion spacing is 2^{1/3} ℓ).
double characteristic_length(const ChainConfig& config);

// Damped Newton on the scaled force balance ξ_i − Σ_{j≠i} sgn(ξ_i−ξ_j)/(ξ_i−ξ_j)²
// with analytic Jacobian; converged when max residual < 1e-12 (scaled units).
EquilibriumChain solve_equilibrium(const ChainConfig& config);

// Invert the spacing↔stiffness relation: bisect on axial_curvature until the
// mean nearest-neighbour spacing of the N-ion equilibrium hits `spacing`.
double axial_curvature_for_spacing(std::size_t ion_count, double spacing);

}  // namespace modegate::modes

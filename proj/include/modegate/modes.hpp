#pragma once

#include <cstddef>
#include <vector>

#include "modegate/chain.hpp"

namespace modegate::modes {

// Transverse normal-mode data. frequencies ascending, so for a transverse
// spectrum the zigzag mode comes first and the COM mode last. participation
// rows ν_p are orthonormal; lamb_dicke holds η_p^i = ν_p^i Δk √(ħ/2mω_p)
// when produced by solve_modes. Idealized spectra (unit-coupling studies) may
// instead carry a bare coupling matrix in lamb_dicke — see
// with_participation_couplings.
struct ModeSpectrum {
  std::vector<double> frequencies;                 // ω_p, rad/s, ascending
  std::vector<std::vector<double>> participation;  // ν_p^i, row per mode
  std::vector<std::vector<double>> lamb_dicke;     // η_p^i, row per mode
  std::vector<double> nbar;                        // n̄_p, row per mode
  std::vector<double> phases;                      // φ_p, rad

  std::size_t size() const { return frequencies.size(); }

  // Spectrum whose coupling matrix is the participation itself (common scale
  // absorbed into Ω). Removes the per-mode 1/√ω weighting so harmonic
  // selection sees the ideal geometry only.
  static ModeSpectrum with_participation_couplings(
      std::vector<double> frequencies,
      std::vector<std::vector<double>> participation,
      std::vector<double> nbar = {}, std::vector<double> phases = {});
};

// Transverse curvature block K = P + A + C at the equilibrium geometry:
// K_ii = c_i − Σ_{j≠i} κ_ij, K_ij = +κ_ij with κ_ij = q²/(4πε₀ d_ij³).
// Coulomb repulsion softens transverse confinement, hence the −Σκ diagonal.
// Row-major N×N, exactly symmetric by construction.
std::vector<double> build_k_matrix(const ChainConfig& config,
                                   const EquilibriumChain& eq);

// Diagonalize K: ω_p = √(λ_p/m), ascending; participation = eigenvector rows,
// sign-fixed so each row's largest-magnitude component is positive; Lamb–Dicke
// matrix populated from config's Δk. Throws InstabilityError (naming the mode)
// if any λ_p ≤ 0.
ModeSpectrum solve_modes(const ChainConfig& config,
                         const std::vector<double>& k_matrix);

// Convenience: equilibrium → K → modes in one call.
ModeSpectrum solve_chain_modes(const ChainConfig& config);

// Analytic participation rows of the uniform 3-ion transverse problem in
// ascending-frequency order (zigzag, tilt, COM), before any sign fixing:
// (1,−2,1)/√6, (1,0,−1)/√2, (1,1,1)/√3.
std::vector<std::vector<double>> uniform_three_ion_participation();

// Result of fitting the two curvature knobs (edge-ion, center-ion) of a 3-ion
// chain to three target mode frequencies. Two knobs cannot always match three
// targets; the residuals record how close the least-squares optimum gets.
struct CurvatureFit {
  ChainConfig config;                    // fitted chain (axial stiffness kept)
  std::vector<double> residuals;         // per-target relative frequency error
  double max_relative_error = 0.0;
  int iterations = 0;
};

// Levenberg–Marquardt on (c_edge, c_center) against solve_modes frequencies.
// targets: 3 angular frequencies, ascending. Throws InfeasibleError when the
// ordering is impossible for a Coulomb-coupled chain (unsorted targets) or no
// stable curvature pair exists.
CurvatureFit invert_curvatures_for_frequencies(
    const std::vector<double>& target_frequencies, const ChainConfig& base);

}  // namespace modegate::modes

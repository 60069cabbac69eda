#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "modegate/gatekernel.hpp"
#include "modegate/modes.hpp"
#include "modegate/sweep.hpp"

namespace modegate::engineer {

// Hardware-reachable set: per-mode achievable angular-frequency intervals and
// the acceptable gate-time interval.
struct FrequencyWindow {
  std::vector<std::array<double, 2>> mode_windows;  // [ω_min, ω_max], rad/s
  std::array<double, 2> tau_window{0.0, 0.0};       // [τ_min, τ_max], s

  void validate() const;
};

// One commensurate candidate: gate time, integer harmonic per mode, and the
// worst detuning after projecting the ideal frequencies 4kπ/τ into the
// windows. residual < 1/2 by construction of the nearest-integer assignment.
struct CommensurateSolution {
  double tau = 0.0;
  std::vector<int> k;
  double residual = 0.0;  // max_p |δk_p| at the window-projected frequencies
};

// Scan τ on a 10⁴-point grid over tau_window, assign the best integer k_p per
// mode (ideal frequency clamped into its window when unreachable), refine each
// candidate τ by golden-section on max|δk_p|, deduplicate by k-vector and
// return the top_m solutions ordered by (residual, τ). Throws InfeasibleError
// when nothing reaches residual < 1/2.
std::vector<CommensurateSolution> search_condition1(
    const FrequencyWindow& windows, int top_m = 5);

// α versus a common frequency shift δω applied to every mode: for each step
// the shifted frequencies get fresh (k, δk) assignments and α is evaluated
// through the detuned factorization. Columns: delta_omega (rad/s), alpha.
// The δω = 0 row carries only the static engineering residual of the
// spectrum itself.
SweepResult sweep_common_shift(const modes::ModeSpectrum& spectrum,
                               const gatekernel::GateDesign& design,
                               double shift_min, double shift_max, int steps);

// Per-mode |δk_p| tolerance for budget ε, reported for an odd-l and an even-l
// design side by side (the two calibrated picks of a design run). Columns:
// mode, k_odd, limit_odd, k_even, limit_even.
SweepResult delta_k_budget(const modes::ModeSpectrum& spectrum,
                           const gatekernel::GateDesign& odd_design,
                           const gatekernel::GateDesign& even_design,
                           double epsilon);

}  // namespace modegate::engineer

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "modegate/modes.hpp"
#include "modegate/sweep.hpp"

namespace modegate::pulse {

enum class Parity { even = 0, odd = 1 };

// Two-segment sinusoidal drive: g(t) = Ω sin(2lπt/τ) on [0, τ/2], then the
// same shape with flipped sign on (τ/2, τ]. Antisymmetric about the midpoint
// by construction; odd l joins smoothly at τ/2, even l has a cusp there.
struct PulseSpec {
  int l = 1;           // harmonic index of the drive envelope
  double omega = 0.0;  // Rabi amplitude Ω, rad/s
  double tau = 0.0;    // gate time τ, s
  int chi_sign = +1;   // sign of χ recorded at calibration (gate-phase metadata)

  bool is_odd() const { return l % 2 != 0; }
  Parity parity() const { return is_odd() ? Parity::odd : Parity::even; }
};

// Dimensionless shape s(u) for u = t/τ ∈ [0,1] at Ω = 1. The sine zeros at
// u = 0, 1/2, 1 are returned as exact 0.0.
double pulse_shape(int l, double u);

// g(t) in rad/s; throws std::domain_error for t outside [0, τ].
double eval_pulse(const PulseSpec& spec, double t);

// |χ_ij / Ω²τ²| for every harmonic l ∈ [1, l_max] of the two-segment pulse,
// from the commensurate closed form with couplings spectrum.lamb_dicke.
// Columns: l, parity (1 odd / 0 even), abs_chi_over_omega2_tau2.
SweepResult scan_l(const modes::ModeSpectrum& spectrum, std::size_t i,
                   std::size_t j, const std::vector<int>& k, double tau,
                   int l_max);

// Harmonic maximizing |χ/Ω²τ²| among rows passing the parity filter; ties go
// to the smaller l (lowest-frequency envelope). Throws SelectionError when the
// filter empties the scan.
int select_l(const SweepResult& scan, std::optional<Parity> parity_filter);

// Pick Ω so the accumulated entanglement angle reaches θ_target (θ = 4χ; a
// fully entangling gate needs θ = π/2, i.e. χ = π/8). The sign of χ is
// recorded on the returned spec; the magnitude is calibrated. Throws
// DegenerateCouplingError when this harmonic does not couple the ion pair.
PulseSpec calibrate_omega(const modes::ModeSpectrum& spectrum, std::size_t i,
                          std::size_t j, const std::vector<int>& k, double tau,
                          int l, double theta_target);

}  // namespace modegate::pulse

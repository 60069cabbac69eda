#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "modegate/modes.hpp"
#include "modegate/pulse.hpp"

namespace modegate::oracle {

// Brute-force quadrature controls. The panel count of every integral is tied
// to the fastest oscillation present (pulse harmonic l vs mode phase ωτ/2π):
// at least points_per_oscillation × max(l, ⌈max_p ω_pτ/2π⌉) composite 16-node
// Gauss–Legendre panels, doubled per refinement step until two successive
// estimates agree to rel_tolerance.
struct QuadratureSettings {
  int points_per_oscillation = 24;  // ≥ 8
  double rel_tolerance = 1e-9;
  int max_panels = 1 << 20;

  void validate() const;
};

// Time window [t_a, t_b] ⊆ [0, τ] for partial-gate integrals.
struct Window {
  double t_a = 0.0;
  double t_b = 0.0;
};

// Entanglement angle by direct time-ordered double quadrature:
//   Σ_p η_p^i η_p^j ∬_{t_a ≤ t₁ ≤ t₂ ≤ t_b} g(t₂)g(t₁) sin(ω_p(t₂−t₁))
// Inner prefix integrals are carried per panel with a spectral partial-panel
// integration matrix, so refinement cost stays linear in the node count.
// Throws AccuracyError (carrying estimate and error bar) if max_panels is
// reached before two refinements agree.
double chi_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                  std::size_t j, const pulse::PulseSpec& pulse,
                  const QuadratureSettings& settings, const Window& window);

// Full-gate window convenience overload.
double chi_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                  std::size_t j, const pulse::PulseSpec& pulse,
                  const QuadratureSettings& settings = {});

// Cross-window piece of the time-ordered double integral — t₁ in the first
// window, t₂ in the second (windows must be adjacent: w1.t_b == w2.t_a).
// Completes the additivity identity χ[a,c] = χ[a,b] + χ[b,c] + cross.
double chi_cross_window(const modes::ModeSpectrum& spectrum, std::size_t i,
                        std::size_t j, const pulse::PulseSpec& pulse,
                        const QuadratureSettings& settings, const Window& w1,
                        const Window& w2);

// Residual coupling α = (4/5) Σ_p (2n̄_p+1)(η_p^i²+η_p^j²) |∫₀^τ g e^{iω_pt}|²
// with each oscillatory integral by resolved quadrature at the supplied
// angular frequencies (which need not be commensurate).
double alpha_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& pulse,
                    const std::vector<double>& frequencies,
                    const std::vector<double>& nbar,
                    const QuadratureSettings& settings = {});

// Spectrum-frequency convenience overload (n̄ from the spectrum).
double alpha_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& pulse,
                    const QuadratureSettings& settings = {});

// ∫_{t_a}^{t_b} g(t) e^{iωt} dt by the same panel rule, in units of Ωτ.
// Exposed for the factorization identity check (full interval vs
// (1 − e^{2iδkπ}) × half interval).
std::complex<double> oscillatory_integral(const pulse::PulseSpec& pulse,
                                          double omega_mode,
                                          const QuadratureSettings& settings,
                                          const Window& window);

}  // namespace modegate::oracle

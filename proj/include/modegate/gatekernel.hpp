#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "modegate/modes.hpp"
#include "modegate/oracle.hpp"
#include "modegate/pulse.hpp"

namespace modegate::gatekernel {

// A designed gate: ion pair, pulse, and the commensurability bookkeeping
// ω_p = 4(k_p + δk_p)π/τ with |δk_p| < 1/2 (nearest-integer assignment),
// plus the achieved entanglement angle χ (θ = 4χ) and residual coupling α.
struct GateDesign {
  std::size_t ion_i = 0;
  std::size_t ion_j = 1;
  pulse::PulseSpec pulse;
  std::vector<int> k_indices;
  std::vector<double> delta_k;
  double chi = 0.0;
  double alpha = 0.0;
  double alpha_budget = 0.0;  // error budget ε on α
};

// Nearest-integer k_p and detunings δk_p for the spectrum at gate time τ.
// Exact half-integer ωτ/4π is rejected (PoleError): no nearest assignment.
void assign_k_indices(const modes::ModeSpectrum& spectrum, double tau,
                      std::vector<int>& k, std::vector<double>& delta_k);

// Assemble a GateDesign: derive (k, δk), evaluate χ from the commensurate
// closed form and α from the detuned factorization at the recorded δk.
GateDesign make_gate_design(const modes::ModeSpectrum& spectrum, std::size_t i,
                            std::size_t j, const pulse::PulseSpec& pulse,
                            double alpha_budget);

// ---- χ ----------------------------------------------------------------------

// Dimensionless Σ_p c_p k_p/(4k_p² − l²) / 2π with the resonant mode (2k_p = l,
// even l only) contributing c_p·3/(8l)/2π instead. χ = Ω²τ² × this.
double chi_core(std::span<const double> couplings, std::span<const int> k,
                int l);

// Entanglement angle at exact commensurate frequencies (δk = 0 — the domain of
// the closed form; detuned χ errors are recalibrated through Ω, not modeled):
// χ = (Ω²τ²/2π) Σ_p η_p^i η_p^j k_p/(4k_p²−l²), resonant branch as above.
double chi_analytic(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const std::vector<int>& k,
                    const pulse::PulseSpec& pulse);

// χ accumulated over [0, τ/2] and [τ/2, τ] by oracle quadrature. With the
// commensurate spectrum both halves equal χ/2 — the identity behind the
// crosstalk-suppression sequence (two half gates with a spin flip between).
std::pair<double, double> half_gate_chi(const modes::ModeSpectrum& spectrum,
                                        std::size_t i, std::size_t j,
                                        const pulse::PulseSpec& pulse,
                                        const oracle::QuadratureSettings&
                                            settings = {});

// ---- α ----------------------------------------------------------------------

// Closed form of the dimensionless half-interval integral
// ∫₀^{1/2} s(u) e^{i 4(k+δk)π u} du = l·((−1)^l e^{2πiδk} − 1) / (2π D),
// D = 4(k+δk)² − l²; the D → 0 limit is handled analytically. No
// large-argument trigonometry: only e^{2πiδk} appears.
std::complex<double> half_interval_core(int k, double delta_k, int l);

// |∫₀^1 s(u) e^{i 4(k+δk)π u} du|² via the two-segment factorization
// (1 − e^{2iδkπ}) × half-interval. Vanishes identically at δk = 0.
double mode_integral_sq_core(int k, double delta_k, int l);

// Residual coupling α = (4/5) Σ_p (2n̄_p+1)(η_p^i² + η_p^j²) |Ωτ ∫ s e^{iνu}|²
// with each mode integral from the factorization above. Thermal factor
// coth(ħω/2k_BT) is supplied as 2n̄+1; the motional phases φ_p drop out of the
// modulus. k_p derived from spectrum frequencies, detunings from delta_k.
double alpha_factored(const modes::ModeSpectrum& spectrum, std::size_t i,
                      std::size_t j, const pulse::PulseSpec& pulse,
                      const std::vector<double>& delta_k,
                      const std::vector<double>& nbar);

// Parity-split closed form: (l²Ω²τ²/5π²) Σ_p (2n̄_p+1)(η_p^i²+η_p^j²) W(δk_p)/D_p²
// with W = 4sin²(2πδk) for odd l and 16sin⁴(πδk) for even l. Algebraically
// equal to alpha_factored; throws PoleError at D_p = 0 exactly (use
// alpha_factored there).
double alpha_closed_form(const modes::ModeSpectrum& spectrum, std::size_t i,
                         std::size_t j, const pulse::PulseSpec& pulse,
                         const std::vector<double>& delta_k,
                         const std::vector<double>& nbar);

// Leading-order small-δk bound (thermal factor bounded by coth < 2):
//   odd l:  (32l²Ω²τ²/5)   Σ_p (η²+η²) δk_p²/(4k_p²−l²)²
//   even l: α₀ + (32l²Ω²τ²π²/5) Σ_{p≠p_l} (η²+η²) δk_p⁴/(4k_p²−l²)²
// where α₀ = (2Ω²τ²π²/5)(η²+η²) δk_{p_l}² when some 2k_{p_l} = l, else 0.
double alpha_series(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& pulse,
                    const std::vector<double>& delta_k,
                    const std::vector<double>& nbar);

// Invert the leading-order series for a uniform |δk| across modes with
// α ≤ ε: square-root law for odd l, fourth-root for even l. With a resonant
// even mode, its irreducible α₀ (at the design's recorded δk_{p_l}) is
// subtracted from ε first and that mode's own entry reports the |δk_{p_l}|
// at which α₀ alone would exhaust ε. Throws BudgetInfeasibleError when
// α₀ > ε.
std::vector<double> budget_to_tolerance(const modes::ModeSpectrum& spectrum,
                                        const GateDesign& design,
                                        double epsilon);

}  // namespace modegate::gatekernel

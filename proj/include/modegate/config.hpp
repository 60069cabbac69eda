#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modegate/chain.hpp"
#include "modegate/engineer.hpp"
#include "modegate/modes.hpp"
#include "modegate/pulse.hpp"

namespace modegate::cli {

enum class OutputFormat { csv, json };

// How per-ion couplings entering χ and α are derived from the mode solve:
//   lamb_dicke     — physical η_p^i = ν_p^i Δk √(ħ/2mω_p) (mode-frequency
//                    weighted; default)
//   participation  — couplings proportional to the bare participation ν_p^i
//                    with one common scale Δk √(ħ/2mω̄) for the whole chain
//                    (ω̄ = mean mode frequency). Useful when comparing against
//                    idealized uniform-vector designs.
enum class CouplingModel { lamb_dicke, participation };

struct GateSettings {
  int ion_i = 0;
  int ion_j = 1;
  double theta_target = 1.5707963267948966;     // rad; π/2 = fully entangling
  std::optional<pulse::Parity> parity_preference;  // unset = consider both
  double tau = 0.0;                             // s; 0 = not configured
  std::vector<int> k_indices;                   // empty = derive from spectrum
  int l_max = 300;
  CouplingModel coupling_model = CouplingModel::lamb_dicke;
  bool use_ideal_frequencies = false;  // snap ω_p to 4k_pπ/τ before designing
  double alpha_budget = 1e-4;          // ε for the δk budget report
};

struct SweepSettings {
  // Common-mode frequency shift range, rad/s (config keys take Hz).
  double delta_omega_min = -6283.185307179586;  // −2π·1 kHz
  double delta_omega_max = +6283.185307179586;
  int steps = 201;  // odd default so δω = 0 lands on a sample
};

struct OutputSettings {
  OutputFormat format = OutputFormat::csv;
  std::string path;    // empty = stdout
  int precision = 10;  // significant digits, [6, 17]
};

// Everything a command run needs: the physical chain plus gate, engineering,
// sweep, and output settings. Produced by the config parser; unknown sections
// or keys in the file are hard errors.
struct RunConfig {
  modes::ChainConfig chain;
  GateSettings gate;
  engineer::FrequencyWindow windows;  // empty mode_windows = not configured
  int top_m = 5;
  SweepSettings sweep;
  OutputSettings output;

  // Cross-field invariants (ion indices < ion_count, precision range, …).
  void validate() const;

  // Gate time, or ConfigError when the command needs one and none was given.
  double require_tau() const;
};

// Parse the sectioned key = value format. Sections: [chain], [gate],
// [engineering], [sweep], [output]. Frequencies are taken in MHz (windows in
// MHz ± kHz, sweep range in Hz), times in μs; converted to SI here, once.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<config>");

// The mode spectrum a design works with: solve the chain, optionally snap
// frequencies to their commensurate targets 4k_pπ/τ (use_ideal_frequencies),
// then apply the coupling model.
modes::ModeSpectrum resolve_spectrum(const RunConfig& config);

}  // namespace modegate::cli

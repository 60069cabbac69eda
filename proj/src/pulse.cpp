#include "modegate/pulse.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "modegate/errors.hpp"
#include "modegate/gatekernel.hpp"

namespace modegate::pulse {

namespace {

void check_pair_and_k(const modes::ModeSpectrum& spectrum, std::size_t i,
                      std::size_t j, const std::vector<int>& k) {
  const std::size_t n = spectrum.size();
  if (i >= n || j >= n) throw ConfigError("ion index out of range");
  if (i == j) throw ConfigError("gate requires two distinct ions");
  if (k.size() != n)
    throw ConfigError("k index list must match the mode count");
  for (int kp : k)
    if (kp <= 0) throw ConfigError("k indices must be positive integers");
}

std::vector<double> pair_couplings(const modes::ModeSpectrum& spectrum,
                                   std::size_t i, std::size_t j) {
  std::vector<double> c(spectrum.size());
  for (std::size_t p = 0; p < spectrum.size(); ++p)
    c[p] = spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j];
  return c;
}

}  // namespace

double pulse_shape(int l, double u) {
  if (l <= 0) throw ConfigError("harmonic index l must be positive");
  if (u < 0.0 || u > 1.0)
    throw std::domain_error("pulse evaluated outside [0, τ]");
  // Exact sine zeros at the segment boundaries.
  if (u == 0.0 || u == 0.5 || u == 1.0) return 0.0;
  const double two_l_pi = 2.0 * std::numbers::pi * static_cast<double>(l);
  if (u < 0.5) return std::sin(two_l_pi * u);
  return -std::sin(two_l_pi * (u - 0.5));  // second segment, phase flipped
}

double eval_pulse(const PulseSpec& spec, double t) {
  if (!(spec.tau > 0.0)) throw ConfigError("pulse tau must be positive");
  return spec.omega * pulse_shape(spec.l, t / spec.tau);
}

SweepResult scan_l(const modes::ModeSpectrum& spectrum, std::size_t i,
                   std::size_t j, const std::vector<int>& k, double tau,
                   int l_max) {
  check_pair_and_k(spectrum, i, j, k);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (l_max < 1) throw ConfigError("l_max must be at least 1");

  const std::vector<double> c = pair_couplings(spectrum, i, j);
  SweepResult out;
  out.columns = {"l", "parity", "abs_chi_over_omega2_tau2"};
  out.rows.reserve(static_cast<std::size_t>(l_max));
  for (int l = 1; l <= l_max; ++l) {
    const double v = std::abs(gatekernel::chi_core(c, k, l));
    out.rows.push_back({static_cast<double>(l), static_cast<double>(l % 2), v});
  }
  return out;
}

int select_l(const SweepResult& scan, std::optional<Parity> parity_filter) {
  const std::size_t li = scan.column_index("l");
  const std::size_t pi = scan.column_index("parity");
  const std::size_t vi = scan.column_index("abs_chi_over_omega2_tau2");

  int best_l = 0;
  double best_v = -1.0;
  for (const auto& row : scan.rows) {
    if (parity_filter &&
        static_cast<int>(row[pi]) != static_cast<int>(*parity_filter))
      continue;
    const int l = static_cast<int>(row[li]);
    // Strict > keeps the smaller l on ties (rows ascend in l).
    if (row[vi] > best_v) {
      best_v = row[vi];
      best_l = l;
    }
  }
  if (best_l == 0)
    throw SelectionError("no harmonic survives the parity filter");
  return best_l;
}

PulseSpec calibrate_omega(const modes::ModeSpectrum& spectrum, std::size_t i,
                          std::size_t j, const std::vector<int>& k, double tau,
                          int l, double theta_target) {
  check_pair_and_k(spectrum, i, j, k);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (l < 1) throw ConfigError("harmonic index l must be positive");
  if (theta_target < 0.0)
    throw ConfigError("theta_target must be non-negative");

  PulseSpec unit{l, 1.0, tau, +1};
  const double chi_unit = gatekernel::chi_analytic(spectrum, i, j, k, unit);
  if (chi_unit == 0.0) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "ion pair (%zu,%zu) is decoupled at harmonic l=%d", i, j, l);
    throw DegenerateCouplingError(buf);
  }
  PulseSpec spec = unit;
  spec.chi_sign = chi_unit > 0.0 ? +1 : -1;
  spec.omega = std::sqrt(theta_target / 4.0 / std::abs(chi_unit));
  return spec;
}

}  // namespace modegate::pulse

#include "modegate/engineer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "modegate/errors.hpp"

namespace modegate::engineer {

namespace {

constexpr double kPi = std::numbers::pi;

// Best integer harmonic for one mode at gate time τ: the ideal frequency
// 4kπ/τ is clamped into the achievable window, and the k minimizing the
// resulting |δk| wins (smaller k on ties, for determinism).
void best_k_for_mode(const std::array<double, 2>& window, double tau, int& k,
                     double& delta_k) {
  const double x_lo = window[0] * tau / (4.0 * kPi);
  const double x_hi = window[1] * tau / (4.0 * kPi);
  long candidates[2] = {std::lround(std::floor(x_hi)),
                        std::lround(std::ceil(x_lo))};
  k = 0;
  delta_k = std::numeric_limits<double>::infinity();
  for (long cand : candidates) {
    if (cand < 1) continue;
    const double ideal = 4.0 * static_cast<double>(cand) * kPi / tau;
    const double clamped = std::clamp(ideal, window[0], window[1]);
    const double dk = clamped * tau / (4.0 * kPi) - static_cast<double>(cand);
    if (std::abs(dk) < std::abs(delta_k) ||
        (std::abs(dk) == std::abs(delta_k) && cand < k)) {
      k = static_cast<int>(cand);
      delta_k = dk;
    }
  }
}

double residual_at(const FrequencyWindow& windows, double tau,
                   std::vector<int>* k_out = nullptr) {
  double worst = 0.0;
  if (k_out) k_out->clear();
  for (const auto& w : windows.mode_windows) {
    int k;
    double dk;
    best_k_for_mode(w, tau, k, dk);
    if (k == 0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(dk));
    if (k_out) k_out->push_back(k);
  }
  return worst;
}

// Golden-section minimization of the residual over [lo, hi].
double golden_refine(const FrequencyWindow& windows, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = residual_at(windows, c);
  double fd = residual_at(windows, d);
  while (b - a > 1e-12 * std::max(std::abs(a), std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = residual_at(windows, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = residual_at(windows, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void FrequencyWindow::validate() const {
  if (mode_windows.empty())
    throw ConfigError("at least one mode window required");
  for (const auto& w : mode_windows)
    if (!(w[0] > 0.0 && w[0] <= w[1]))
      throw ConfigError("mode windows must satisfy 0 < ω_min ≤ ω_max");
  if (!(tau_window[0] > 0.0 && tau_window[0] <= tau_window[1]))
    throw ConfigError("tau window must satisfy 0 < τ_min ≤ τ_max");
}

std::vector<CommensurateSolution> search_condition1(
    const FrequencyWindow& windows, int top_m) {
  windows.validate();
  if (top_m < 1) throw ConfigError("top_m must be positive");

  const int grid = 10000;
  const double t0 = windows.tau_window[0], t1 = windows.tau_window[1];
  const double step = t1 > t0 ? (t1 - t0) / grid : 0.0;

  // Best (residual, τ) per distinct k-vector.
  std::map<std::vector<int>, CommensurateSolution> best;
  const int points = t1 > t0 ? grid + 1 : 1;
  for (int g = 0; g < points; ++g) {
    const double tau_grid = t0 + step * g;
    // refine inside the surrounding grid cell
    const double lo = std::max(t0, tau_grid - step);
    const double hi = std::min(t1, tau_grid + step);
    const double tau =
        lo < hi ? golden_refine(windows, lo, hi) : tau_grid;
    std::vector<int> k;
    const double res = residual_at(windows, tau, &k);
    if (!(res < 0.5)) continue;
    auto it = best.find(k);
    if (it == best.end() || res < it->second.residual ||
        (res == it->second.residual && tau < it->second.tau))
      best[k] = CommensurateSolution{tau, k, res};
  }

  std::vector<CommensurateSolution> out;
  out.reserve(best.size());
  for (auto& [k, sol] : best) out.push_back(sol);
  std::sort(out.begin(), out.end(),
            [](const CommensurateSolution& a, const CommensurateSolution& b) {
              if (a.residual != b.residual) return a.residual < b.residual;
              return a.tau < b.tau;
            });
  if (out.empty())
    throw InfeasibleError(
        "no commensurate gate time with residual below 1/2 in the windows",
        0.5);
  if (out.size() > static_cast<std::size_t>(top_m)) out.resize(top_m);
  return out;
}

SweepResult sweep_common_shift(const modes::ModeSpectrum& spectrum,
                               const gatekernel::GateDesign& design,
                               double shift_min, double shift_max, int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!(shift_min <= shift_max))
    throw ConfigError("shift range must be ordered");

  SweepResult out;
  out.columns = {"delta_omega", "alpha"};
  out.rows.reserve(steps);
  for (int s = 0; s < steps; ++s) {
    const double shift =
        shift_min + (shift_max - shift_min) * s / (steps - 1.0);
    modes::ModeSpectrum shifted = spectrum;
    for (double& w : shifted.frequencies) w += shift;
    std::vector<int> k;
    std::vector<double> delta_k;
    gatekernel::assign_k_indices(shifted, design.pulse.tau, k, delta_k);
    const double a = gatekernel::alpha_factored(
        shifted, design.ion_i, design.ion_j, design.pulse, delta_k,
        shifted.nbar);
    out.rows.push_back({shift, a});
  }
  return out;
}

SweepResult delta_k_budget(const modes::ModeSpectrum& spectrum,
                           const gatekernel::GateDesign& odd_design,
                           const gatekernel::GateDesign& even_design,
                           double epsilon) {
  if (!odd_design.pulse.is_odd() || even_design.pulse.is_odd())
    throw ConfigError("budget report expects one odd-l and one even-l design");
  const std::vector<double> lim_odd =
      gatekernel::budget_to_tolerance(spectrum, odd_design, epsilon);
  const std::vector<double> lim_even =
      gatekernel::budget_to_tolerance(spectrum, even_design, epsilon);

  SweepResult out;
  out.columns = {"mode", "k_odd", "limit_odd", "k_even", "limit_even"};
  for (std::size_t p = 0; p < spectrum.size(); ++p)
    out.rows.push_back({static_cast<double>(p),
                        static_cast<double>(odd_design.k_indices[p]),
                        lim_odd[p],
                        static_cast<double>(even_design.k_indices[p]),
                        lim_even[p]});
  return out;
}

}  // namespace modegate::engineer

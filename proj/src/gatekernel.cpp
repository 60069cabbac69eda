#include "modegate/gatekernel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "modegate/errors.hpp"

namespace modegate::gatekernel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_pair(const modes::ModeSpectrum& spectrum, std::size_t i,
                std::size_t j) {
  if (i >= spectrum.size() || j >= spectrum.size())
    throw ConfigError("ion index out of range");
  if (i == j) throw ConfigError("gate requires two distinct ions");
}

void check_alpha_inputs(const modes::ModeSpectrum& spectrum, std::size_t i,
                        std::size_t j, const pulse::PulseSpec& ps,
                        const std::vector<double>& delta_k,
                        const std::vector<double>& nbar) {
  check_pair(spectrum, i, j);
  if (ps.l <= 0) throw ConfigError("harmonic index l must be positive");
  if (!(ps.tau > 0.0)) throw ConfigError("pulse tau must be positive");
  if (delta_k.size() != spectrum.size() || nbar.size() != spectrum.size())
    throw ConfigError("delta_k and nbar lists must match the mode count");
  for (double w : spectrum.frequencies)
    if (!(w > 0.0)) throw ConfigError("mode frequencies must be positive");
}

double eta_sq_sum(const modes::ModeSpectrum& spectrum, std::size_t p,
                  std::size_t i, std::size_t j) {
  const double ei = spectrum.lamb_dicke[p][i];
  const double ej = spectrum.lamb_dicke[p][j];
  return ei * ei + ej * ej;
}

}  // namespace

void assign_k_indices(const modes::ModeSpectrum& spectrum, double tau,
                      std::vector<int>& k, std::vector<double>& delta_k) {
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  const std::size_t n = spectrum.size();
  k.resize(n);
  delta_k.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double w = spectrum.frequencies[p];
    if (!(w > 0.0)) throw ConfigError("mode frequencies must be positive");
    const double x = w * tau / (4.0 * kPi);
    if (x - std::floor(x) == 0.5)
      throw PoleError(
          "mode frequency sits exactly between commensurate harmonics: no "
          "nearest-integer assignment");
    const long kp = std::lround(x);
    if (kp < 1)
      throw ConfigError("gate time too short: mode below the first harmonic");
    k[p] = static_cast<int>(kp);
    delta_k[p] = x - static_cast<double>(kp);
  }
}

GateDesign make_gate_design(const modes::ModeSpectrum& spectrum, std::size_t i,
                            std::size_t j, const pulse::PulseSpec& ps,
                            double alpha_budget) {
  check_pair(spectrum, i, j);
  GateDesign d;
  d.ion_i = i;
  d.ion_j = j;
  d.pulse = ps;
  d.alpha_budget = alpha_budget;
  assign_k_indices(spectrum, ps.tau, d.k_indices, d.delta_k);
  d.chi = chi_analytic(spectrum, i, j, d.k_indices, ps);
  d.alpha = alpha_factored(spectrum, i, j, ps, d.delta_k, spectrum.nbar);
  return d;
}

double chi_core(std::span<const double> couplings, std::span<const int> k,
                int l) {
  if (l <= 0) throw ConfigError("harmonic index l must be positive");
  if (couplings.size() != k.size())
    throw ConfigError("coupling and k lists must have equal length");
  const double ll = static_cast<double>(l);
  double sum = 0.0;
  for (std::size_t p = 0; p < k.size(); ++p) {
    if (k[p] <= 0) throw ConfigError("k indices must be positive integers");
    const double kp = static_cast<double>(k[p]);
    if (2 * k[p] == l)
      sum += couplings[p] * 3.0 / (8.0 * ll);  // resonant mode 2k_p = l
    else
      sum += couplings[p] * kp / (4.0 * kp * kp - ll * ll);
  }
  return sum / (2.0 * kPi);
}

double chi_analytic(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const std::vector<int>& k,
                    const pulse::PulseSpec& ps) {
  check_pair(spectrum, i, j);
  if (k.size() != spectrum.size())
    throw ConfigError("k index list must match the mode count");
  std::vector<double> c(spectrum.size());
  for (std::size_t p = 0; p < spectrum.size(); ++p)
    c[p] = spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j];
  const double ot = ps.omega * ps.tau;
  return ot * ot * chi_core(c, k, ps.l);
}

std::pair<double, double> half_gate_chi(const modes::ModeSpectrum& spectrum,
                                        std::size_t i, std::size_t j,
                                        const pulse::PulseSpec& ps,
                                        const oracle::QuadratureSettings&
                                            settings) {
  const double half = ps.tau * 0.5;
  const double first =
      oracle::chi_oracle(spectrum, i, j, ps, settings, {0.0, half});
  const double second =
      oracle::chi_oracle(spectrum, i, j, ps, settings, {half, ps.tau});
  return {first, second};
}

std::complex<double> half_interval_core(int k, double delta_k, int l) {
  // ∫₀^{1/2} sin(2lπu) e^{i(b₊+b₋)u/2}-split form. Both endpoint phases
  // collapse to (−1)^l e^{2πiδk}, so only the small angle 2πδk is evaluated.
  const double ang = 2.0 * kPi * delta_k;
  const std::complex<double> e{std::cos(ang), std::sin(ang)};
  const std::complex<double> c = (l % 2 != 0 ? -e : e) - 1.0;
  const double kd = static_cast<double>(k) + delta_k;
  const double ll = static_cast<double>(l);
  const double d = 4.0 * kd * kd - ll * ll;
  if (d == 0.0) {
    // 2(k+δk) = l exactly: the b₋ = 0 primitive degenerates to u itself.
    const double bp = 2.0 * kPi * (2.0 * k + ll + 2.0 * delta_k);
    return -c / (2.0 * bp) + std::complex<double>{0.0, 0.25};
  }
  return c * (ll / (2.0 * kPi * d));
}

double mode_integral_sq_core(int k, double delta_k, int l) {
  const double s = std::sin(kPi * delta_k);
  return 4.0 * s * s * std::norm(half_interval_core(k, delta_k, l));
}

double alpha_factored(const modes::ModeSpectrum& spectrum, std::size_t i,
                      std::size_t j, const pulse::PulseSpec& ps,
                      const std::vector<double>& delta_k,
                      const std::vector<double>& nbar) {
  check_alpha_inputs(spectrum, i, j, ps, delta_k, nbar);
  std::vector<int> k;
  std::vector<double> dk_nearest;
  assign_k_indices(spectrum, ps.tau, k, dk_nearest);

  const double ot = ps.omega * ps.tau;
  double alpha = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const double coth = 2.0 * nbar[p] + 1.0;  // thermal factor, n̄ regime
    alpha += coth * eta_sq_sum(spectrum, p, i, j) *
             mode_integral_sq_core(k[p], delta_k[p], ps.l);
  }
  return 0.8 * ot * ot * alpha;  // 4/5 prefactor of the residual coupling
}

double alpha_closed_form(const modes::ModeSpectrum& spectrum, std::size_t i,
                         std::size_t j, const pulse::PulseSpec& ps,
                         const std::vector<double>& delta_k,
                         const std::vector<double>& nbar) {
  check_alpha_inputs(spectrum, i, j, ps, delta_k, nbar);
  std::vector<int> k;
  std::vector<double> dk_nearest;
  assign_k_indices(spectrum, ps.tau, k, dk_nearest);

  const double ll = static_cast<double>(ps.l);
  const bool odd = ps.l % 2 != 0;
  double sum = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const double kd = static_cast<double>(k[p]) + delta_k[p];
    const double d = 4.0 * kd * kd - ll * ll;
    if (d == 0.0)
      throw PoleError(
          "4(k+δk)² = l² exactly: closed form is singular here, use "
          "alpha_factored");
    double w;
    if (odd) {
      const double s = std::sin(2.0 * kPi * delta_k[p]);
      w = 4.0 * s * s;  // |e^{4iδkπ} − 1|²
    } else {
      const double s = std::sin(kPi * delta_k[p]);
      w = 16.0 * s * s * s * s;  // |(e^{2iδkπ} − 1)²|²
    }
    sum += (2.0 * nbar[p] + 1.0) * eta_sq_sum(spectrum, p, i, j) * w / (d * d);
  }
  const double ot = ps.omega * ps.tau;
  return ll * ll * ot * ot / (5.0 * kPi * kPi) * sum;
}

double alpha_series(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& ps,
                    const std::vector<double>& delta_k,
                    const std::vector<double>& nbar) {
  check_alpha_inputs(spectrum, i, j, ps, delta_k, nbar);
  (void)nbar;  // the series bound absorbs the thermal factor via coth < 2
  std::vector<int> k;
  std::vector<double> dk_nearest;
  assign_k_indices(spectrum, ps.tau, k, dk_nearest);

  const double ll = static_cast<double>(ps.l);
  const double ot = ps.omega * ps.tau;
  const bool odd = ps.l % 2 != 0;

  double sum = 0.0;
  double alpha0 = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const double e2 = eta_sq_sum(spectrum, p, i, j);
    if (!odd && 2 * k[p] == ps.l) {
      // resonant mode: its leading residual is the irreducible α₀ ∝ δk²
      alpha0 = 0.4 * ot * ot * kPi * kPi * e2 * delta_k[p] * delta_k[p];
      continue;
    }
    const double kp = static_cast<double>(k[p]);
    const double den = 4.0 * kp * kp - ll * ll;
    const double dk2 = delta_k[p] * delta_k[p];
    sum += e2 * (odd ? dk2 : dk2 * dk2) / (den * den);
  }
  const double lead = 6.4 * ll * ll * ot * ot * (odd ? 1.0 : kPi * kPi);
  return alpha0 + lead * sum;
}

std::vector<double> budget_to_tolerance(const modes::ModeSpectrum& spectrum,
                                        const GateDesign& design,
                                        double epsilon) {
  check_pair(spectrum, design.ion_i, design.ion_j);
  if (epsilon < 0.0) throw ConfigError("error budget must be non-negative");
  if (design.k_indices.size() != spectrum.size() ||
      design.delta_k.size() != spectrum.size())
    throw ConfigError("design bookkeeping does not match the spectrum");

  const int l = design.pulse.l;
  const double ll = static_cast<double>(l);
  const double ot = design.pulse.omega * design.pulse.tau;
  const bool odd = l % 2 != 0;

  // Coefficient of the uniform-δk power law: α ≈ S₂ δk² (odd) or S₄ δk⁴
  // (even), the resonant mode excluded from the even sum.
  double coeff = 0.0;
  std::size_t p_res = spectrum.size();  // sentinel: no resonant mode
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    if (!odd && 2 * design.k_indices[p] == l) {
      p_res = p;
      continue;
    }
    const double kp = static_cast<double>(design.k_indices[p]);
    const double den = 4.0 * kp * kp - ll * ll;
    coeff += eta_sq_sum(spectrum, p, design.ion_i, design.ion_j) / (den * den);
  }
  coeff *= 6.4 * ll * ll * ot * ot * (odd ? 1.0 : kPi * kPi);

  double budget = epsilon;
  double limit_res = 0.0;
  if (p_res < spectrum.size()) {
    const double e2 = eta_sq_sum(spectrum, p_res, design.ion_i, design.ion_j);
    const double dk = design.delta_k[p_res];
    const double alpha0 = 0.4 * ot * ot * kPi * kPi * e2 * dk * dk;
    if (alpha0 > epsilon) {
      char buf[112];
      std::snprintf(buf, sizeof buf,
                    "irreducible resonant residual %.3e already exceeds the "
                    "budget %.3e",
                    alpha0, epsilon);
      throw BudgetInfeasibleError(buf, alpha0);
    }
    budget = epsilon - alpha0;
    // the resonant mode's own bound: |δk| at which α₀ alone spends ε
    limit_res = e2 > 0.0 ? std::sqrt(epsilon / (0.4 * ot * ot * kPi * kPi * e2))
                         : std::numeric_limits<double>::infinity();
  }

  double limit;
  if (coeff > 0.0)
    limit = odd ? std::sqrt(budget / coeff) : std::pow(budget / coeff, 0.25);
  else  // pair decoupled from every non-resonant mode: no constraint
    limit = budget > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

  std::vector<double> out(spectrum.size(), limit);
  if (p_res < spectrum.size()) out[p_res] = limit_res;
  return out;
}

}  // namespace modegate::gatekernel

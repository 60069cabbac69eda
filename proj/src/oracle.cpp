#include "modegate/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "modegate/errors.hpp"

namespace modegate::oracle {

namespace {

constexpr int kNodes = 16;  // Gauss–Legendre nodes per panel

struct PanelRule {
  std::array<double, kNodes> x;  // nodes on the reference panel [0,1]
  std::array<double, kNodes> w;  // weights summing to 1
};

// Newton iteration on the Legendre recurrence; nodes accurate to machine eps.
PanelRule compute_panel_rule() {
  PanelRule r;
  const int n = kNodes;
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess on [−1,1], descending
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = 0.5 * (1.0 - z);  // map to [0,1]; i ascending in x
    r.w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

const PanelRule& panel_rule() {
  static const PanelRule r = compute_panel_rule();
  return r;
}

// Partial-integration matrix on the reference panel: W[g][m] = ∫₀^{x_g} ℓ_m,
// with ℓ_m the degree-15 Lagrange basis on the panel nodes. Lets the running
// inner integral be continued up to any node of the current panel from the
// 16 function values already computed there, at interpolatory accuracy.
using PartialMatrix = std::array<std::array<double, kNodes>, kNodes>;

PartialMatrix compute_partial_matrix() {
  const PanelRule& r = panel_rule();
  // 64-point rule on [−1,1] for the bootstrap integrals
  const int m64 = 64;
  std::vector<double> gx(m64), gw(m64);
  for (int i = 0; i < m64; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m64 + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < m64; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = m64 * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    gx[i] = z;
    gw[i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }

  PartialMatrix w{};
  for (int g = 0; g < kNodes; ++g) {
    const double upper = r.x[g];
    for (int q = 0; q < m64; ++q) {
      const double t = 0.5 * upper * (gx[q] + 1.0);
      const double wt = 0.5 * upper * gw[q];
      for (int m = 0; m < kNodes; ++m) {
        double lm = 1.0;
        for (int s = 0; s < kNodes; ++s)
          if (s != m) lm *= (t - r.x[s]) / (r.x[m] - r.x[s]);
        w[g][m] += wt * lm;
      }
    }
  }
  return w;
}

const PartialMatrix& partial_matrix() {
  static const PartialMatrix w = compute_partial_matrix();
  return w;
}

// Composite grid over [a,b] in pulse-time units u = t/τ. A panel edge is
// pinned to u = 1/2 whenever the window straddles it, so the even-l derivative
// cusp never sits inside a panel.
std::vector<double> build_edges(double a, double b, long panels) {
  std::vector<double> edges;
  auto fill_uniform = [&edges](double lo, double hi, long n) {
    for (long i = 0; i < n; ++i)
      edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(n));
  };
  if (a < 0.5 && 0.5 < b) {
    if (panels < 2) panels = 2;
    long left = std::lround(static_cast<double>(panels) * (0.5 - a) / (b - a));
    left = std::clamp(left, 1L, panels - 1);
    fill_uniform(a, 0.5, left);
    fill_uniform(0.5, b, panels - left);
  } else {
    fill_uniform(a, b, panels);
  }
  edges.push_back(b);
  return edges;
}

// Base panel count resolving the fastest oscillation in the integrand.
long base_panels(const QuadratureSettings& settings, int l,
                 double max_omega_tau) {
  const double cycles =
      std::max(static_cast<double>(l),
               std::ceil(max_omega_tau / (2.0 * std::numbers::pi)));
  return static_cast<long>(settings.points_per_oscillation) *
         static_cast<long>(std::max(1.0, cycles));
}

// Doubling ladder: evaluate at p0, 2p0, … until two successive levels agree
// to rel_tolerance (scale floored to catch exact-cancellation integrands).
template <typename Eval>
double refine(Eval&& eval, const QuadratureSettings& settings, long p0,
              double scale_floor) {
  double prev = std::numeric_limits<double>::quiet_NaN();
  double diff = std::numeric_limits<double>::infinity();
  bool have_prev = false;
  for (long p = p0; p <= settings.max_panels; p *= 2) {
    const double v = eval(p);
    if (have_prev) {
      diff = std::abs(v - prev);
      if (diff <= settings.rel_tolerance * std::max(std::abs(v), scale_floor))
        return v;
    }
    prev = v;
    have_prev = true;
    if (p > settings.max_panels / 2) break;
  }
  throw AccuracyError("quadrature did not converge within max_panels", prev,
                      diff);
}

std::vector<double> pulse_samples(int l, const std::vector<double>& edges) {
  const PanelRule& r = panel_rule();
  const std::size_t panels = edges.size() - 1;
  std::vector<double> s(panels * kNodes);
  for (std::size_t p = 0; p < panels; ++p) {
    const double p0 = edges[p], h = edges[p + 1] - edges[p];
    for (int m = 0; m < kNodes; ++m)
      s[p * kNodes + m] = pulse::pulse_shape(l, p0 + h * r.x[m]);
  }
  return s;
}

// ∫ s(u) e^{iνu} du over the paneled window; returns (∫s·cos, ∫s·sin).
std::array<double, 2> single_integral(double nu,
                                      const std::vector<double>& edges,
                                      const std::vector<double>& samples) {
  const PanelRule& r = panel_rule();
  const std::size_t panels = edges.size() - 1;
  double jc = 0.0, js = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double p0 = edges[p], h = edges[p + 1] - edges[p];
    double pc = 0.0, ps = 0.0;
    for (int m = 0; m < kNodes; ++m) {
      const double u = p0 + h * r.x[m];
      const double su = samples[p * kNodes + m];
      pc += r.w[m] * su * std::cos(nu * u);
      ps += r.w[m] * su * std::sin(nu * u);
    }
    jc += h * pc;
    js += h * ps;
  }
  return {jc, js};
}

// Time-ordered double integral ∬_{u₁≤u₂} s(u₂)s(u₁) sin(ν(u₂−u₁)) over the
// window. The sin splits into sin(νu₂)cos(νu₁) − cos(νu₂)sin(νu₁), so the
// inner integral is a running prefix of s·cos and s·sin: full panels
// accumulate into (Cc,Cs), the partial stretch up to the current outer node
// comes from the panel's own node values through the partial matrix.
double double_integral(double nu, const std::vector<double>& edges,
                       const std::vector<double>& samples) {
  const PanelRule& r = panel_rule();
  const PartialMatrix& pw = partial_matrix();
  const std::size_t panels = edges.size() - 1;
  double acc = 0.0;
  double cc = 0.0, cs = 0.0;  // prefix over completed panels
  std::array<double, kNodes> fc, fs, sn, csn;
  for (std::size_t p = 0; p < panels; ++p) {
    const double p0 = edges[p], h = edges[p + 1] - edges[p];
    for (int m = 0; m < kNodes; ++m) {
      const double u = p0 + h * r.x[m];
      const double su = samples[p * kNodes + m];
      sn[m] = std::sin(nu * u);
      csn[m] = std::cos(nu * u);
      fc[m] = su * csn[m];
      fs[m] = su * sn[m];
    }
    for (int g = 0; g < kNodes; ++g) {
      double pc = 0.0, ps = 0.0;
      for (int m = 0; m < kNodes; ++m) {
        pc += pw[g][m] * fc[m];
        ps += pw[g][m] * fs[m];
      }
      const double inner_c = cc + h * pc;
      const double inner_s = cs + h * ps;
      acc += r.w[g] * h * samples[p * kNodes + g] *
             (sn[g] * inner_c - csn[g] * inner_s);
    }
    double full_c = 0.0, full_s = 0.0;
    for (int m = 0; m < kNodes; ++m) {
      full_c += r.w[m] * fc[m];
      full_s += r.w[m] * fs[m];
    }
    cc += h * full_c;
    cs += h * full_s;
  }
  return acc;
}

void check_window(const pulse::PulseSpec& pulse, const Window& w) {
  if (!(pulse.tau > 0.0)) throw ConfigError("pulse tau must be positive");
  if (!(w.t_a >= 0.0 && w.t_a < w.t_b && w.t_b <= pulse.tau))
    throw ConfigError("window must satisfy 0 ≤ t_a < t_b ≤ τ");
}

void check_pair(const modes::ModeSpectrum& spectrum, std::size_t i,
                std::size_t j) {
  if (i >= spectrum.size() || j >= spectrum.size())
    throw ConfigError("ion index out of range");
  if (i == j) throw ConfigError("gate requires two distinct ions");
}

double max_omega_tau(const modes::ModeSpectrum& spectrum,
                     const pulse::PulseSpec& pulse) {
  double m = 0.0;
  for (double w : spectrum.frequencies) {
    if (!(w > 0.0)) throw ConfigError("mode frequencies must be positive");
    m = std::max(m, w * pulse.tau);
  }
  return m;
}

}  // namespace

void QuadratureSettings::validate() const {
  if (points_per_oscillation < 8)
    throw ConfigError("points_per_oscillation must be at least 8");
  if (!(rel_tolerance > 0.0))
    throw ConfigError("rel_tolerance must be positive");
  if (max_panels < 1) throw ConfigError("max_panels must be positive");
}

double chi_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                  std::size_t j, const pulse::PulseSpec& pulse,
                  const QuadratureSettings& settings, const Window& window) {
  settings.validate();
  check_pair(spectrum, i, j);
  check_window(pulse, window);

  const double a = window.t_a / pulse.tau, b = window.t_b / pulse.tau;
  const double ot = pulse.omega * pulse.tau;
  const long p0 = base_panels(settings, pulse.l, max_omega_tau(spectrum, pulse));

  double magnitude = 0.0;  // natural size of χ, floors the convergence test
  for (std::size_t p = 0; p < spectrum.size(); ++p)
    magnitude += std::abs(spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j]);
  magnitude *= ot * ot;

  auto eval = [&](long panels) {
    const std::vector<double> edges = build_edges(a, b, panels);
    const std::vector<double> samples = pulse_samples(pulse.l, edges);
    double chi = 0.0;
    for (std::size_t p = 0; p < spectrum.size(); ++p) {
      const double c = spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j];
      if (c == 0.0) continue;
      chi += c * double_integral(spectrum.frequencies[p] * pulse.tau,
                                 edges, samples);
    }
    return ot * ot * chi;
  };
  return refine(eval, settings, p0, 1e-6 * magnitude);
}

double chi_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                  std::size_t j, const pulse::PulseSpec& pulse,
                  const QuadratureSettings& settings) {
  return chi_oracle(spectrum, i, j, pulse, settings, Window{0.0, pulse.tau});
}

double chi_cross_window(const modes::ModeSpectrum& spectrum, std::size_t i,
                        std::size_t j, const pulse::PulseSpec& pulse,
                        const QuadratureSettings& settings, const Window& w1,
                        const Window& w2) {
  settings.validate();
  check_pair(spectrum, i, j);
  check_window(pulse, w1);
  check_window(pulse, w2);
  if (!(w1.t_b <= w2.t_a))
    throw ConfigError("cross-window term needs ordered disjoint windows");

  const double ot = pulse.omega * pulse.tau;
  const long p0 = base_panels(settings, pulse.l, max_omega_tau(spectrum, pulse));
  double magnitude = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p)
    magnitude += std::abs(spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j]);
  magnitude *= ot * ot;

  // t₁ ranges over w1, t₂ over w2: the sin(ν(u₂−u₁)) kernel separates into
  // whole-window integrals over w1 against single integrals over w2.
  auto eval = [&](long panels) {
    const double a1 = w1.t_a / pulse.tau, b1 = w1.t_b / pulse.tau;
    const double a2 = w2.t_a / pulse.tau, b2 = w2.t_b / pulse.tau;
    const std::vector<double> e1 = build_edges(a1, b1, panels);
    const std::vector<double> e2 = build_edges(a2, b2, panels);
    const std::vector<double> s1 = pulse_samples(pulse.l, e1);
    const std::vector<double> s2 = pulse_samples(pulse.l, e2);
    const PanelRule& r = panel_rule();
    double chi = 0.0;
    for (std::size_t p = 0; p < spectrum.size(); ++p) {
      const double c = spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][j];
      if (c == 0.0) continue;
      const double nu = spectrum.frequencies[p] * pulse.tau;
      const std::array<double, 2> a = single_integral(nu, e1, s1);
      double term = 0.0;
      const std::size_t panels2 = e2.size() - 1;
      for (std::size_t q = 0; q < panels2; ++q) {
        const double q0 = e2[q], h = e2[q + 1] - e2[q];
        double acc = 0.0;
        for (int m = 0; m < kNodes; ++m) {
          const double u = q0 + h * r.x[m];
          acc += r.w[m] * s2[q * kNodes + m] *
                 (std::sin(nu * u) * a[0] - std::cos(nu * u) * a[1]);
        }
        term += h * acc;
      }
      chi += c * term;
    }
    return ot * ot * chi;
  };
  return refine(eval, settings, p0, 1e-6 * magnitude);
}

double alpha_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& pulse,
                    const std::vector<double>& frequencies,
                    const std::vector<double>& nbar,
                    const QuadratureSettings& settings) {
  settings.validate();
  check_pair(spectrum, i, j);
  if (!(pulse.tau > 0.0)) throw ConfigError("pulse tau must be positive");
  if (frequencies.size() != spectrum.size() || nbar.size() != spectrum.size())
    throw ConfigError("frequency and nbar lists must match the mode count");
  double max_nu = 0.0;
  for (double w : frequencies) {
    if (!(w > 0.0)) throw ConfigError("mode frequencies must be positive");
    max_nu = std::max(max_nu, w * pulse.tau);
  }

  const double ot = pulse.omega * pulse.tau;
  const long p0 = base_panels(settings, pulse.l, max_nu);
  double magnitude = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const double eta2 = spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][i] +
                        spectrum.lamb_dicke[p][j] * spectrum.lamb_dicke[p][j];
    magnitude += (2.0 * nbar[p] + 1.0) * eta2;
  }
  magnitude *= 0.8 * ot * ot;

  auto eval = [&](long panels) {
    const std::vector<double> edges = build_edges(0.0, 1.0, panels);
    const std::vector<double> samples = pulse_samples(pulse.l, edges);
    double alpha = 0.0;
    for (std::size_t p = 0; p < spectrum.size(); ++p) {
      const double eta2 =
          spectrum.lamb_dicke[p][i] * spectrum.lamb_dicke[p][i] +
          spectrum.lamb_dicke[p][j] * spectrum.lamb_dicke[p][j];
      const std::array<double, 2> jcs =
          single_integral(frequencies[p] * pulse.tau, edges, samples);
      alpha += (2.0 * nbar[p] + 1.0) * eta2 *
               (jcs[0] * jcs[0] + jcs[1] * jcs[1]);
    }
    return 0.8 * ot * ot * alpha;
  };
  return refine(eval, settings, p0, 1e-6 * magnitude);
}

double alpha_oracle(const modes::ModeSpectrum& spectrum, std::size_t i,
                    std::size_t j, const pulse::PulseSpec& pulse,
                    const QuadratureSettings& settings) {
  return alpha_oracle(spectrum, i, j, pulse, spectrum.frequencies,
                      spectrum.nbar, settings);
}

std::complex<double> oscillatory_integral(const pulse::PulseSpec& pulse,
                                          double omega_mode,
                                          const QuadratureSettings& settings,
                                          const Window& window) {
  settings.validate();
  check_window(pulse, window);
  if (!(omega_mode > 0.0)) throw ConfigError("mode frequency must be positive");

  const double a = window.t_a / pulse.tau, b = window.t_b / pulse.tau;
  const double nu = omega_mode * pulse.tau;
  const long p0 = base_panels(settings, pulse.l, nu);
  // Convergence is judged on the two quadrature components separately; the
  // natural magnitude of either is ∫|s| ≤ (b−a).
  auto eval_c = [&](long panels) {
    const std::vector<double> edges = build_edges(a, b, panels);
    return single_integral(nu, edges,
                           pulse_samples(pulse.l, edges))[0];
  };
  auto eval_s = [&](long panels) {
    const std::vector<double> edges = build_edges(a, b, panels);
    return single_integral(nu, edges,
                           pulse_samples(pulse.l, edges))[1];
  };
  const double floor = 1e-6 * (b - a);
  const double jc = refine(eval_c, settings, p0, floor);
  const double js = refine(eval_s, settings, p0, floor);
  // In units of Ωτ: multiply by Ωτ to recover ∫ g e^{iωt} dt.
  return {jc, js};
}

}  // namespace modegate::oracle

#include "modegate/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "modegate/errors.hpp"

namespace modegate::modes {

namespace {

// Scaled axial force balance for ordered positions ξ (lengths in units of ℓ):
//   g_i = ξ_i − Σ_{j≠i} sgn(ξ_i − ξ_j) / (ξ_i − ξ_j)²
void scaled_gradient(const std::vector<double>& xi, std::vector<double>& g) {
  const std::size_t n = xi.size();
  g.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = xi[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = xi[i] - xi[j];
      g[i] -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
    }
  }
}

// Analytic Jacobian of the scaled gradient (the axial Hessian):
//   H_ii = 1 + Σ_{j≠i} 2/|ξ_i−ξ_j|³,  H_ij = −2/|ξ_i−ξ_j|³
void scaled_hessian(const std::vector<double>& xi, std::vector<double>& h) {
  const std::size_t n = xi.size();
  h.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(xi[i] - xi[j]);
      const double c = 2.0 / (d * d * d);
      diag += c;
      h[i * n + j] = -c;
    }
    h[i * n + i] = diag;
  }
}

// Gaussian elimination with partial pivoting; small dense systems only.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    const double p = a[col * n + col];
    if (p == 0.0) throw SolverError("singular Newton system in equilibrium solve", 0.0);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / p;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri * n + c] * x[c];
    x[ri] = s / a[ri * n + ri];
  }
  return x;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ChainConfig ChainConfig::uniform(std::size_t n, double mass_kg,
                                 double axial_curvature,
                                 double transverse_curvature, double nbar) {
  ChainConfig cfg;
  cfg.ion_count = n;
  cfg.ion_mass = mass_kg;
  cfg.axial_curvature = axial_curvature;
  cfg.transverse_curvature_per_ion.assign(n, transverse_curvature);
  cfg.nbar_per_mode.assign(n, nbar);
  cfg.initial_phases.assign(n, 0.0);
  return cfg;
}

void ChainConfig::validate() const {
  if (ion_count < 2) throw ConfigError("ion_count must be ≥ 2");
  if (!(ion_mass > 0.0) || !std::isfinite(ion_mass))
    throw ConfigError("ion_mass must be positive and finite");
  if (!std::isfinite(axial_curvature))
    throw ConfigError("axial_curvature must be finite");
  if (transverse_curvature_per_ion.size() != ion_count)
    throw ConfigError("transverse_curvature_per_ion length must equal ion_count");
  for (double c : transverse_curvature_per_ion)
    if (!std::isfinite(c)) throw ConfigError("transverse curvature must be finite");
  if (!(coupling_wavenumber > 0.0) || !std::isfinite(coupling_wavenumber))
    throw ConfigError("coupling_wavenumber must be positive and finite");
  if (nbar_per_mode.size() != ion_count)
    throw ConfigError("nbar_per_mode length must equal ion_count");
  for (double nb : nbar_per_mode)
    if (!(nb >= 0.0) || !std::isfinite(nb))
      throw ConfigError("nbar_per_mode values must be ≥ 0");
  if (initial_phases.size() != ion_count)
    throw ConfigError("initial_phases length must equal ion_count");
  for (double p : initial_phases)
    if (!std::isfinite(p)) throw ConfigError("initial_phases must be finite");
}

double characteristic_length(const ChainConfig& config) {
  if (!(config.axial_curvature > 0.0))
    throw ConfigError("axial_curvature must be positive for an axial trap");
  return std::cbrt(constants::coulomb_coefficient / config.axial_curvature);
}

EquilibriumChain solve_equilibrium(const ChainConfig& config) {
  config.validate();
  const double ell = characteristic_length(config);
  const std::size_t n = config.ion_count;

  // Uniform-spacing start; the ~2.018/N^0.559 law approximates the minimum
  // spacing of a harmonic chain well enough for a Newton basin.
  const double d0 = 2.018 / std::pow(static_cast<double>(n), 0.559);
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i)
    xi[i] = d0 * (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1));

  std::vector<double> g, h;
  scaled_gradient(xi, g);
  double res = max_abs(g);
  const double tol = 1e-12;
  const int max_iter = 200;
  int it = 0;
  for (; it < max_iter && res > tol; ++it) {
    scaled_hessian(xi, h);
    std::vector<double> step = solve_linear(h, g);
    // Backtrack if the full Newton step worsens the residual or crosses ions.
    double scale = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, scale *= 0.5) {
      std::vector<double> trial(n);
      for (std::size_t i = 0; i < n; ++i) trial[i] = xi[i] - scale * step[i];
      bool ordered = true;
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(trial[i] < trial[i + 1])) { ordered = false; break; }
      if (!ordered) continue;
      std::vector<double> gt;
      scaled_gradient(trial, gt);
      const double rt = max_abs(gt);
      if (rt < res) {
        xi = std::move(trial);
        g = std::move(gt);
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // stagnated: report the residual we reached
  }
  if (res > tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "equilibrium solve stalled at scaled residual %.3e", res);
    throw SolverError(buf, res);
  }

  // Σξ_i = 0 at the solution; recenter anyway to absorb roundoff.
  double centroid = 0.0;
  for (double x : xi) centroid += x;
  centroid /= static_cast<double>(n);

  EquilibriumChain eq;
  eq.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) eq.positions[i] = (xi[i] - centroid) * ell;
  eq.gradient_norm = res;
  return eq;
}

double axial_curvature_for_spacing(std::size_t ion_count, double spacing) {
  if (ion_count < 2) throw ConfigError("ion_count must be ≥ 2");
  if (!(spacing > 0.0)) throw ConfigError("spacing must be positive");

  auto mean_spacing = [&](double c_ax) {
    ChainConfig cfg = ChainConfig::uniform(ion_count, constants::yb171_mass_u *
                                                          constants::atomic_mass_unit,
                                           c_ax, 1.0);
    const EquilibriumChain eq = solve_equilibrium(cfg);
    return (eq.positions.back() - eq.positions.front()) /
           static_cast<double>(ion_count - 1);
  };

  // Spacing falls monotonically with stiffness (d ∝ c^{-1/3}); bracket in
  // log-space around the 2-ion closed form, then bisect.
  double lo = constants::coulomb_coefficient / (spacing * spacing * spacing) * 1e-3;
  double hi = constants::coulomb_coefficient / (spacing * spacing * spacing) * 1e3;
  if (!(mean_spacing(lo) > spacing) || !(mean_spacing(hi) < spacing))
    throw SolverError("spacing target outside bisection bracket", 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mean_spacing(mid) > spacing)
      lo = mid;
    else
      hi = mid;
    if (hi / lo - 1.0 < 1e-14) break;
  }
  return std::sqrt(lo * hi);
}

}  // namespace modegate::modes

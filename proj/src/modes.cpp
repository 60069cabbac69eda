#include "modegate/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "modegate/errors.hpp"
#include "modegate/jacobi.hpp"

namespace modegate::modes {

namespace {

// Flip eigenvector rows so the largest-magnitude component is positive; ties
// resolved by the first component attaining the maximum.
void fix_row_signs(std::vector<std::vector<double>>& rows) {
  for (auto& row : rows) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
      if (std::abs(row[i]) > std::abs(row[arg])) arg = i;
    if (row[arg] < 0.0)
      for (double& x : row) x = -x;
  }
}

}  // namespace

ModeSpectrum ModeSpectrum::with_participation_couplings(
    std::vector<double> frequencies,
    std::vector<std::vector<double>> participation, std::vector<double> nbar,
    std::vector<double> phases) {
  const std::size_t n = frequencies.size();
  if (participation.size() != n)
    throw ConfigError("participation row count must match frequency count");
  for (const auto& row : participation)
    if (row.size() != n)
      throw ConfigError("participation rows must be square with frequencies");
  for (std::size_t p = 0; p + 1 < n; ++p)
    if (!(frequencies[p] < frequencies[p + 1]))
      throw ConfigError("frequencies must be strictly ascending");
  ModeSpectrum s;
  s.frequencies = std::move(frequencies);
  s.participation = participation;
  s.lamb_dicke = std::move(participation);  // couplings ≡ ν, common scale in Ω
  s.nbar = nbar.empty() ? std::vector<double>(n, 0.1) : std::move(nbar);
  s.phases = phases.empty() ? std::vector<double>(n, 0.0) : std::move(phases);
  return s;
}

std::vector<double> build_k_matrix(const ChainConfig& config,
                                   const EquilibriumChain& eq) {
  config.validate();
  const std::size_t n = config.ion_count;
  if (eq.positions.size() != n)
    throw ConfigError("equilibrium size does not match ion_count");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(eq.positions[i] < eq.positions[i + 1]))
      throw DegenerateGeometryError(
          "equilibrium positions must be strictly increasing");

  std::vector<double> k(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = config.transverse_curvature_per_ion[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(eq.positions[i] - eq.positions[j]);
      if (d == 0.0)
        throw DegenerateGeometryError("coincident ion positions in K assembly");
      const double kappa = constants::coulomb_coefficient / (d * d * d);
      k[i * n + j] = kappa;  // transverse Coulomb coupling
      diag -= kappa;         // repulsion softens the local confinement
    }
    k[i * n + i] = diag;
  }
  return k;
}

ModeSpectrum solve_modes(const ChainConfig& config,
                         const std::vector<double>& k_matrix) {
  config.validate();
  const std::size_t n = config.ion_count;
  if (k_matrix.size() != n * n)
    throw ConfigError("K matrix size does not match ion_count");
  double scale = 0.0;
  for (double x : k_matrix) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(k_matrix[i * n + j] - k_matrix[j * n + i]) > 1e-12 * scale)
        throw ConfigError("K matrix must be symmetric");

  SymmetricEigen eig = jacobi_eigen_symmetric(k_matrix, n);

  for (std::size_t p = 0; p < n; ++p)
    if (!(eig.eigenvalues[p] > 0.0)) {
      char buf[96];
      std::snprintf(buf, sizeof buf,
                    "unstable chain: mode %zu has curvature eigenvalue %.6e",
                    p, eig.eigenvalues[p]);
      throw InstabilityError(buf, p);
    }

  // Degenerate pairs: Jacobi returns an arbitrary orthonormal basis of the
  // eigenspace; order those rows lexicographically after sign fixing so the
  // output is stable to within the eigensolver's 1e-12 rotation tolerance.
  fix_row_signs(eig.eigenvectors);
  for (std::size_t p = 0; p + 1 < n; ++p) {
    const double a = eig.eigenvalues[p], b = eig.eigenvalues[p + 1];
    if (b - a <= 1e-10 * std::max(std::abs(a), std::abs(b)) &&
        eig.eigenvectors[p + 1] < eig.eigenvectors[p]) {
      std::swap(eig.eigenvalues[p], eig.eigenvalues[p + 1]);
      std::swap(eig.eigenvectors[p], eig.eigenvectors[p + 1]);
    }
  }

  ModeSpectrum s;
  s.frequencies.resize(n);
  s.participation = std::move(eig.eigenvectors);
  s.lamb_dicke.assign(n, std::vector<double>(n, 0.0));
  s.nbar = config.nbar_per_mode;
  s.phases = config.initial_phases;
  for (std::size_t p = 0; p < n; ++p) {
    s.frequencies[p] = std::sqrt(eig.eigenvalues[p] / config.ion_mass);
    const double eta_scale =
        config.coupling_wavenumber *
        std::sqrt(constants::hbar / (2.0 * config.ion_mass * s.frequencies[p]));
    for (std::size_t i = 0; i < n; ++i)
      s.lamb_dicke[p][i] = s.participation[p][i] * eta_scale;
  }
  return s;
}

ModeSpectrum solve_chain_modes(const ChainConfig& config) {
  const EquilibriumChain eq = solve_equilibrium(config);
  return solve_modes(config, build_k_matrix(config, eq));
}

std::vector<std::vector<double>> uniform_three_ion_participation() {
  const double s6 = std::sqrt(6.0), s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  return {{1.0 / s6, -2.0 / s6, 1.0 / s6},   // zigzag (lowest transverse)
          {1.0 / s2, 0.0, -1.0 / s2},        // tilt
          {1.0 / s3, 1.0 / s3, 1.0 / s3}};   // COM (highest transverse)
}

CurvatureFit invert_curvatures_for_frequencies(
    const std::vector<double>& target_frequencies, const ChainConfig& base) {
  base.validate();
  if (base.ion_count != 3)
    throw ConfigError("curvature inversion is defined for 3-ion chains");
  if (target_frequencies.size() != 3)
    throw ConfigError("exactly 3 target frequencies required");
  for (double w : target_frequencies)
    if (!(w > 0.0)) throw ConfigError("target frequencies must be positive");
  for (std::size_t p = 0; p + 1 < 3; ++p)
    if (!(target_frequencies[p] < target_frequencies[p + 1]))
      throw InfeasibleError(
          "targets must ascend zigzag→COM: Coulomb coupling always places the "
          "zigzag mode below the COM mode",
          0.0);

  const EquilibriumChain eq = solve_equilibrium(base);
  const double m = base.ion_mass;

  // Two knobs: edge-ion stiffness c_e (ions 0 and 2) and center stiffness c_c.
  auto frequencies_at = [&](double c_e, double c_c) {
    ChainConfig trial = base;
    trial.transverse_curvature_per_ion = {c_e, c_c, c_e};
    return solve_modes(trial, build_k_matrix(trial, eq)).frequencies;
  };
  auto residual_at = [&](double c_e, double c_c, std::vector<double>& r) {
    // Relative frequency errors; relative keeps the 3 targets equally weighted.
    try {
      const std::vector<double> f = frequencies_at(c_e, c_c);
      r.resize(3);
      for (std::size_t p = 0; p < 3; ++p)
        r[p] = (f[p] - target_frequencies[p]) / target_frequencies[p];
      return true;
    } catch (const InstabilityError&) {
      return false;  // unstable trial point: caller must damp
    }
  };

  // Start from the decoupled guesses: COM ≈ √(c_c/m), tilt = √((c_e−κ₁−2κ₂)/m).
  const double d = eq.positions[1] - eq.positions[0];
  const double kappa1 = constants::coulomb_coefficient / (d * d * d);
  const double kappa2 = kappa1 / 8.0;
  double c_c = m * target_frequencies[2] * target_frequencies[2];
  double c_e = m * target_frequencies[1] * target_frequencies[1] + kappa1 + 2.0 * kappa2;

  std::vector<double> r;
  if (!residual_at(c_e, c_c, r))
    throw InfeasibleError("no stable starting point for curvature fit", 0.0);
  double cost = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];

  double lm_damping = 1e-3;
  int iterations = 0;
  for (; iterations < 100; ++iterations) {
    // Forward-difference Jacobian of the 3 relative residuals in (c_e, c_c).
    const double h_e = std::max(std::abs(c_e), kappa1) * 1e-7;
    const double h_c = std::max(std::abs(c_c), kappa1) * 1e-7;
    std::vector<double> re, rc;
    if (!residual_at(c_e + h_e, c_c, re) || !residual_at(c_e, c_c + h_c, rc))
      throw InfeasibleError("curvature fit walked into an unstable region",
                            std::sqrt(cost));
    double j[3][2];
    for (std::size_t p = 0; p < 3; ++p) {
      j[p][0] = (re[p] - r[p]) / h_e;
      j[p][1] = (rc[p] - r[p]) / h_c;
    }
    // Normal equations (JᵀJ + λ diag) δ = −Jᵀr, 2×2 solved in closed form.
    double jtj[2][2] = {{0, 0}, {0, 0}};
    double jtr[2] = {0, 0};
    for (std::size_t p = 0; p < 3; ++p) {
      jtj[0][0] += j[p][0] * j[p][0];
      jtj[0][1] += j[p][0] * j[p][1];
      jtj[1][1] += j[p][1] * j[p][1];
      jtr[0] += j[p][0] * r[p];
      jtr[1] += j[p][1] * r[p];
    }
    jtj[1][0] = jtj[0][1];

    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double a00 = jtj[0][0] * (1.0 + lm_damping);
      const double a11 = jtj[1][1] * (1.0 + lm_damping);
      const double det = a00 * a11 - jtj[0][1] * jtj[1][0];
      if (det == 0.0) break;
      const double de = -(a11 * jtr[0] - jtj[0][1] * jtr[1]) / det;
      const double dc = -(a00 * jtr[1] - jtj[1][0] * jtr[0]) / det;
      std::vector<double> rt;
      if (residual_at(c_e + de, c_c + dc, rt)) {
        const double ct = rt[0] * rt[0] + rt[1] * rt[1] + rt[2] * rt[2];
        if (ct <= cost) {
          c_e += de;
          c_c += dc;
          r = std::move(rt);
          const double improvement = cost - ct;
          cost = ct;
          lm_damping = std::max(lm_damping * 0.3, 1e-12);
          stepped = improvement > 1e-30;  // below that: machine floor reached
          break;
        }
      }
      lm_damping *= 10.0;
    }
    if (!stepped) break;  // local optimum (or floor) at this damping — accept
  }

  CurvatureFit fit;
  fit.config = base;
  fit.config.transverse_curvature_per_ion = {c_e, c_c, c_e};
  fit.residuals = r;
  for (double x : r)
    fit.max_relative_error = std::max(fit.max_relative_error, std::abs(x));
  fit.iterations = iterations;
  if (!std::isfinite(cost) || fit.max_relative_error > 0.5)
    throw InfeasibleError("curvature fit did not approach the targets",
                          fit.max_relative_error);
  return fit;
}

}  // namespace modegate::modes

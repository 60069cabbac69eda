#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "modegate/chain.hpp"
#include "modegate/constants.hpp"
#include "modegate/errors.hpp"
#include "modegate/modes.hpp"

namespace mg = modegate;
using mg::modes::ChainConfig;
using mg::modes::EquilibriumChain;
using mg::modes::ModeSpectrum;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kMass = mg::constants::yb171_mass_u * mg::constants::atomic_mass_unit;

double curvature_for(double frequency_hz) {
  const double w = kTwoPi * frequency_hz;
  return kMass * w * w;
}

// |a·b| after normalizing: 1 for parallel rows regardless of sign.
double row_overlap(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::abs(dot) / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("two-ion chain: closed-form equilibrium and mode frequencies") {
  const double c_ax = curvature_for(0.2e6);
  const double c_t = curvature_for(2.5e6);
  ChainConfig cfg = ChainConfig::uniform(2, kMass, c_ax, c_t);

  const double ell = mg::modes::characteristic_length(cfg);
  const EquilibriumChain eq = mg::modes::solve_equilibrium(cfg);
  const double half = 0.5 * std::cbrt(2.0) * ell;
  CHECK(eq.positions[0] == doctest::Approx(-half).epsilon(1e-12));
  CHECK(eq.positions[1] == doctest::Approx(half).epsilon(1e-12));

  // kappa = Q/d^3 = c_ax/2 at d = 2^{1/3} ell, so the out-of-phase mode sits
  // at sqrt((c_t - c_ax)/m) and the in-phase mode at the bare sqrt(c_t/m).
  const ModeSpectrum s = mg::modes::solve_chain_modes(cfg);
  CHECK(s.frequencies[0] ==
        doctest::Approx(std::sqrt((c_t - c_ax) / kMass)).epsilon(1e-10));
  CHECK(s.frequencies[1] ==
        doctest::Approx(std::sqrt(c_t / kMass)).epsilon(1e-10));
}

TEST_CASE("three-ion equilibrium positions hit the closed form") {
  ChainConfig cfg = ChainConfig::uniform(3, kMass, curvature_for(0.15e6),
                                         curvature_for(2.8e6));
  const double ell = mg::modes::characteristic_length(cfg);
  const double d = std::cbrt(5.0 / 4.0) * ell;
  const EquilibriumChain eq = mg::modes::solve_equilibrium(cfg);
  CHECK(eq.positions[0] == doctest::Approx(-d).epsilon(1e-12));
  CHECK(std::abs(eq.positions[1]) < 1e-12 * d);
  CHECK(eq.positions[2] == doctest::Approx(d).epsilon(1e-12));
  CHECK(eq.gradient_norm < 1e-12);
}

TEST_CASE("K matrix: symmetric, rows sum to the local curvature") {
  ChainConfig cfg = ChainConfig::uniform(4, kMass, curvature_for(0.18e6),
                                         curvature_for(2.6e6));
  cfg.transverse_curvature_per_ion[1] *= 1.05;  // break the uniformity
  cfg.transverse_curvature_per_ion[2] *= 0.97;
  const EquilibriumChain eq = mg::modes::solve_equilibrium(cfg);
  const std::vector<double> k = mg::modes::build_k_matrix(cfg, eq);
  const std::size_t n = cfg.ion_count;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(k[i * n + j] == doctest::Approx(k[j * n + i]).epsilon(1e-14));
      row += k[i * n + j];
    }
    // off-diagonal +kappa cancels the -kappa softening on the diagonal
    CHECK(row == doctest::Approx(cfg.transverse_curvature_per_ion[i])
                     .epsilon(1e-12));
  }
}

TEST_CASE("solve_modes: eigenpairs satisfy K nu = m w^2 nu, orthonormal rows") {
  ChainConfig cfg = ChainConfig::uniform(5, kMass, curvature_for(0.12e6),
                                         curvature_for(2.4e6));
  for (std::size_t i = 0; i < 5; ++i)
    cfg.transverse_curvature_per_ion[i] *= 1.0 + 0.01 * static_cast<double>(i);
  const EquilibriumChain eq = mg::modes::solve_equilibrium(cfg);
  const std::vector<double> k = mg::modes::build_k_matrix(cfg, eq);
  const ModeSpectrum s = mg::modes::solve_modes(cfg, k);
  const std::size_t n = 5;

  double scale = 0.0;
  for (double x : k) scale = std::max(scale, std::abs(x));
  for (std::size_t p = 0; p < n; ++p) {
    if (p > 0) CHECK(s.frequencies[p - 1] <= s.frequencies[p]);
    const double lambda = kMass * s.frequencies[p] * s.frequencies[p];
    for (std::size_t i = 0; i < n; ++i) {
      double kv = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        kv += k[i * n + j] * s.participation[p][j];
      CHECK(std::abs(kv - lambda * s.participation[p][i]) < 1e-9 * scale);
    }
    for (std::size_t q = 0; q < n; ++q) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        dot += s.participation[p][i] * s.participation[q][i];
      CHECK(std::abs(dot - (p == q ? 1.0 : 0.0)) < 1e-10);
    }
    // Lamb-Dicke rows are the participation scaled by dk sqrt(hbar/2mw)
    const double eta_scale =
        cfg.coupling_wavenumber *
        std::sqrt(mg::constants::hbar / (2.0 * kMass * s.frequencies[p]));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(s.lamb_dicke[p][i] ==
            doctest::Approx(s.participation[p][i] * eta_scale).epsilon(1e-12));
  }
}

TEST_CASE("uniform three-ion chain reproduces the ideal participation rows") {
  ChainConfig cfg = ChainConfig::uniform(
      3, kMass, mg::modes::axial_curvature_for_spacing(3, 4.3e-6),
      curvature_for(2.793e6));
  const ModeSpectrum s = mg::modes::solve_chain_modes(cfg);
  const auto ideal = mg::modes::uniform_three_ion_participation();
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(row_overlap(s.participation[p], ideal[p]) ==
          doctest::Approx(1.0).epsilon(1e-10));
  // uniform transverse stiffness: COM mode frequency is exactly the bare one
  CHECK(s.frequencies[2] ==
        doctest::Approx(kTwoPi * 2.793e6).epsilon(1e-12));
}

TEST_CASE("axial_curvature_for_spacing round-trips the mean spacing") {
  const double spacing = 4.3e-6;
  const double c_ax = mg::modes::axial_curvature_for_spacing(3, spacing);
  ChainConfig cfg = ChainConfig::uniform(3, kMass, c_ax, curvature_for(2.8e6));
  const EquilibriumChain eq = mg::modes::solve_equilibrium(cfg);
  const double mean = (eq.positions.back() - eq.positions.front()) / 2.0;
  CHECK(mean == doctest::Approx(spacing).epsilon(1e-10));
}

TEST_CASE("curvature inversion recovers a perturbed three-ion spectrum") {
  const double c_ax = mg::modes::axial_curvature_for_spacing(3, 4.3e-6);
  ChainConfig truth = ChainConfig::uniform(3, kMass, c_ax, curvature_for(2.8e6));
  truth.transverse_curvature_per_ion[0] *= 1.012;
  truth.transverse_curvature_per_ion[2] *= 1.012;
  truth.transverse_curvature_per_ion[1] *= 0.994;
  const std::vector<double> targets =
      mg::modes::solve_chain_modes(truth).frequencies;

  ChainConfig base = ChainConfig::uniform(3, kMass, c_ax, curvature_for(2.8e6));
  const mg::modes::CurvatureFit fit =
      mg::modes::invert_curvatures_for_frequencies(targets, base);
  CHECK(fit.max_relative_error < 1e-6);
  const std::vector<double> achieved =
      mg::modes::solve_chain_modes(fit.config).frequencies;
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(achieved[p] == doctest::Approx(targets[p]).epsilon(1e-6));

  // two symmetric knobs can represent this spectrum: edge ions match
  CHECK(fit.config.transverse_curvature_per_ion[0] ==
        fit.config.transverse_curvature_per_ion[2]);

  const std::vector<double> unsorted{targets[1], targets[0], targets[2]};
  CHECK_THROWS_AS(mg::modes::invert_curvatures_for_frequencies(unsorted, base),
                  mg::InfeasibleError);
}

TEST_CASE("weak transverse confinement trips the zigzag instability") {
  ChainConfig cfg = ChainConfig::uniform(
      3, kMass, mg::modes::axial_curvature_for_spacing(3, 4.3e-6), 5e-12);
  try {
    mg::modes::solve_chain_modes(cfg);
    FAIL("expected InstabilityError");
  } catch (const mg::InstabilityError& e) {
    CHECK(e.mode_index() == 0);  // zigzag goes soft first
  }
}

TEST_CASE("chain config validation rejects broken inputs") {
  CHECK_THROWS_AS(ChainConfig{}.validate(), mg::ConfigError);
  ChainConfig cfg = ChainConfig::uniform(2, kMass, 1e-12, 1e-10);
  cfg.nbar_per_mode = {0.1};  // wrong length
  CHECK_THROWS_AS(cfg.validate(), mg::ConfigError);
  cfg = ChainConfig::uniform(2, kMass, 1e-12, 1e-10);
  cfg.nbar_per_mode[0] = -0.5;
  CHECK_THROWS_AS(cfg.validate(), mg::ConfigError);
  cfg = ChainConfig::uniform(2, -kMass, 1e-12, 1e-10);
  CHECK_THROWS_AS(cfg.validate(), mg::ConfigError);
}

TEST_CASE("with_participation_couplings: couplings alias the participation") {
  const auto rows = mg::modes::uniform_three_ion_participation();
  const std::vector<double> freqs{1.0e6, 1.1e6, 1.2e6};
  const ModeSpectrum s =
      ModeSpectrum::with_participation_couplings(freqs, rows);
  CHECK(s.lamb_dicke == s.participation);
  CHECK(s.nbar == std::vector<double>(3, 0.1));
  CHECK(s.phases == std::vector<double>(3, 0.0));

  CHECK_THROWS_AS(ModeSpectrum::with_participation_couplings(
                      {2.0e6, 1.0e6, 3.0e6}, rows),
                  mg::ConfigError);
  CHECK_THROWS_AS(ModeSpectrum::with_participation_couplings({1.0e6}, rows),
                  mg::ConfigError);
}

TEST_CASE("degenerate eigenvalues come out in a stable lexicographic order") {
  ChainConfig cfg = ChainConfig::uniform(2, kMass, 1e-12, 1.0);
  const std::vector<double> k{1.0, 0.0, 0.0, 1.0};  // doubly degenerate
  const ModeSpectrum s = mg::modes::solve_modes(cfg, k);
  CHECK(s.participation[0] == std::vector<double>{0.0, 1.0});
  CHECK(s.participation[1] == std::vector<double>{1.0, 0.0});
}

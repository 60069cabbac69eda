#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "modegate/errors.hpp"
#include "modegate/gatekernel.hpp"
#include "modegate/modes.hpp"
#include "modegate/pulse.hpp"

namespace mg = modegate;
namespace gk = modegate::gatekernel;
using mg::modes::ModeSpectrum;
using mg::pulse::PulseSpec;

namespace {

constexpr double kPi = std::numbers::pi;

// Spectrum with explicit per-mode couplings for the ion pair (0, 1): row p is
// (a_p, b_p, 0, ...) so eta_p^0 * eta_p^1 = a_p b_p and e2 = a_p^2 + b_p^2.
ModeSpectrum coupled_spectrum(const std::vector<double>& frequencies,
                              const std::vector<double>& a,
                              const std::vector<double>& b) {
  const std::size_t n = frequencies.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t p = 0; p < n; ++p) {
    rows[p][0] = a[p];
    rows[p][1] = b[p];
  }
  return ModeSpectrum::with_participation_couplings(frequencies, rows);
}

PulseSpec make_pulse(int l, double omega, double tau) {
  PulseSpec ps;
  ps.l = l;
  ps.omega = omega;
  ps.tau = tau;
  return ps;
}

}  // namespace

TEST_CASE("assign_k_indices recovers (k, delta_k) from the frequencies") {
  const double tau = 69.466e-6;
  const std::vector<int> k_true{92, 95, 97};
  const std::vector<double> dk_true{0.0, -0.131, 0.242};
  std::vector<double> freqs(3);
  for (std::size_t p = 0; p < 3; ++p)
    freqs[p] = 4.0 * (k_true[p] + dk_true[p]) * kPi / tau;
  const ModeSpectrum s = ModeSpectrum::with_participation_couplings(
      freqs, mg::modes::uniform_three_ion_participation());

  std::vector<int> k;
  std::vector<double> dk;
  gk::assign_k_indices(s, tau, k, dk);
  REQUIRE(k == k_true);
  for (std::size_t p = 0; p < 3; ++p)
    CHECK(std::abs(dk[p] - dk_true[p]) < 1e-9);

  CHECK_THROWS_AS(gk::assign_k_indices(s, 0.0, k, dk), mg::ConfigError);
  CHECK_THROWS_AS(gk::assign_k_indices(s, -1.0, k, dk), mg::ConfigError);
}

TEST_CASE("assign_k_indices: exact half-integer has no nearest harmonic") {
  // 3.5 * 4pi / (4pi) round-trips to exactly 3.5 in IEEE doubles
  const double tau = 1.0;
  const ModeSpectrum s = ModeSpectrum::with_participation_couplings(
      {3.5 * 4.0 * kPi}, {{1.0}});
  std::vector<int> k;
  std::vector<double> dk;
  CHECK_THROWS_AS(gk::assign_k_indices(s, tau, k, dk), mg::PoleError);
}

TEST_CASE("assign_k_indices: mode below the first harmonic is rejected") {
  const ModeSpectrum s = ModeSpectrum::with_participation_couplings(
      {0.2 * 4.0 * kPi}, {{1.0}});
  std::vector<int> k;
  std::vector<double> dk;
  CHECK_THROWS_AS(gk::assign_k_indices(s, 1.0, k, dk), mg::ConfigError);
}

TEST_CASE("chi_core anchors: k=1 l=1 and the resonant branch k=1 l=2") {
  const std::vector<double> c{1.0};
  const std::vector<int> k{1};
  CHECK(gk::chi_core(c, k, 1) ==
        doctest::Approx(0.05305164769729845).epsilon(1e-14));  // 1/(6 pi)
  CHECK(gk::chi_core(c, k, 2) ==
        doctest::Approx(0.029841551829730376).epsilon(1e-14));  // 3/(32 pi)

  CHECK_THROWS_AS(gk::chi_core(c, k, 0), mg::ConfigError);
  CHECK_THROWS_AS(gk::chi_core(c, std::vector<int>{1, 2}, 1), mg::ConfigError);
  CHECK_THROWS_AS(gk::chi_core(c, std::vector<int>{0}, 1), mg::ConfigError);
}

TEST_CASE("chi_core on the reference chain at the chosen harmonics") {
  const auto rows = mg::modes::uniform_three_ion_participation();
  std::vector<double> c(3);
  for (std::size_t p = 0; p < 3; ++p) c[p] = rows[p][0] * rows[p][1];
  const std::vector<int> k{92, 95, 97};
  CHECK(gk::chi_core(c, k, 193) ==
        doctest::Approx(0.014735659757318558).epsilon(1e-12));
  CHECK(gk::chi_core(c, k, 192) ==
        doctest::Approx(0.008288406126228108).epsilon(1e-12));
}

TEST_CASE("half_interval_core anchor at k=1, delta_k=0, l=1") {
  const std::complex<double> v = gk::half_interval_core(1, 0.0, 1);
  CHECK(v.real() == doctest::Approx(-0.1061032953945969).epsilon(1e-14));
  CHECK(v.imag() == 0.0);  // -1/(3 pi), purely real
}

TEST_CASE("half_interval_core pole branch: 2(k + delta_k) = l exactly") {
  // k=3, delta_k=0.5, l=7: D = 4*(3.5)^2 - 49 == 0 in floating point, and the
  // analytic value of the half integral is i/4.
  const std::complex<double> v = gk::half_interval_core(3, 0.5, 7);
  CHECK(std::abs(v.real()) < 1e-15);
  CHECK(v.imag() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(gk::mode_integral_sq_core(3, 0.5, 7) ==
        doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("mode_integral_sq_core vanishes identically at delta_k = 0") {
  for (int k : {1, 5, 92})
    for (int l : {1, 2, 7, 184}) CHECK(gk::mode_integral_sq_core(k, 0.0, l) == 0.0);
}

TEST_CASE("mode_integral_sq_core equals the assembled factorization") {
  for (double dk : {-0.37, -0.02, 0.11, 0.49}) {
    for (int l : {1, 2, 5, 8}) {
      const std::complex<double> half = gk::half_interval_core(4, dk, l);
      const std::complex<double> phase{std::cos(2.0 * kPi * dk),
                                       std::sin(2.0 * kPi * dk)};
      const double full_sq = std::norm((1.0 - phase) * half);
      CHECK(gk::mode_integral_sq_core(4, dk, l) ==
            doctest::Approx(full_sq).epsilon(1e-13));
    }
  }
}

TEST_CASE("alpha_factored and alpha_closed_form agree away from poles") {
  const double tau = 80e-6;
  const std::vector<int> k{11, 17, 23};
  const std::vector<double> dk{0.21, -0.34, 0.08};
  std::vector<double> freqs(3);
  for (std::size_t p = 0; p < 3; ++p)
    freqs[p] = 4.0 * (k[p] + dk[p]) * kPi / tau;
  const ModeSpectrum s =
      coupled_spectrum(freqs, {0.11, -0.05, 0.07}, {0.09, 0.12, -0.04});
  const std::vector<double> nbar{0.3, 0.0, 1.2};

  for (int l : {1, 2, 3, 6, 9}) {
    const PulseSpec ps = make_pulse(l, 2.5e5, tau);
    const double a = gk::alpha_factored(s, 0, 1, ps, dk, nbar);
    const double b = gk::alpha_closed_form(s, 0, 1, ps, dk, nbar);
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
    CHECK(a >= 0.0);
  }
}

TEST_CASE("alpha_closed_form refuses the exact pole, alpha_factored survives") {
  const double tau = 60e-6;
  // assignment is clean on both modes (k = 3 and 8, dk ~ 0.1), but the
  // caller's delta_k of 0.5 on mode 0 puts 4(k+dk)^2 exactly on l^2 = 49
  const ModeSpectrum s = coupled_spectrum(
      {4.0 * 3.1 * kPi / tau, 4.0 * 8.1 * kPi / tau}, {0.2, 0.1}, {0.3, -0.2});
  const PulseSpec ps = make_pulse(7, 1e5, tau);
  CHECK_THROWS_AS(gk::alpha_closed_form(s, 0, 1, ps, {0.5, 0.1}, {0.1, 0.1}),
                  mg::PoleError);
  const double a = gk::alpha_factored(s, 0, 1, ps, {0.5, 0.1}, {0.1, 0.1});
  CHECK(std::isfinite(a));
  CHECK(a > 0.0);
}

TEST_CASE("alpha_series frozen value: odd harmonic, single coupled mode") {
  const double tau = 100e-6;
  // mode 1 is decoupled from the pair (both etas zero), so only mode 0 counts
  const ModeSpectrum s = coupled_spectrum(
      {4.0 * 3.0 * kPi / tau, 4.0 * 8.0 * kPi / tau}, {0.2, 0.0}, {0.3, 0.0});
  const PulseSpec ps = make_pulse(1, 2e5, tau);  // Omega tau = 20
  const double a = gk::alpha_series(s, 0, 1, ps, {1e-3, 0.0}, {0.0, 0.0});
  CHECK(a == doctest::Approx(2.716734693877551e-07).epsilon(1e-12));
}

TEST_CASE("alpha_series frozen value: resonant even harmonic gives alpha0") {
  const double tau = 100e-6;
  const double dk_res = 1e-4;
  const ModeSpectrum s = coupled_spectrum(
      {4.0 * (2.0 + dk_res) * kPi / tau, 4.0 * 8.0 * kPi / tau}, {0.2, 0.0},
      {0.3, 0.0});
  const PulseSpec ps = make_pulse(4, 2e5, tau);  // 2k = l on mode 0
  const double a = gk::alpha_series(s, 0, 1, ps, {dk_res, 0.0}, {0.0, 0.0});
  CHECK(a == doctest::Approx(2.052877715426587e-06).epsilon(1e-10));
}

TEST_CASE("budget_to_tolerance: square-root law for an odd harmonic") {
  const double tau = 100e-6;
  const ModeSpectrum s = coupled_spectrum(
      {4.0 * 3.0 * kPi / tau, 4.0 * 8.0 * kPi / tau}, {0.2, 0.0}, {0.3, 0.0});
  const PulseSpec ps = make_pulse(1, 2e5, tau);
  const gk::GateDesign d = gk::make_gate_design(s, 0, 1, ps, 1e-4);
  const std::vector<double> lim = gk::budget_to_tolerance(s, d, 1e-4);
  REQUIRE(lim.size() == 2);
  CHECK(lim[0] == doctest::Approx(0.019185644172341264).epsilon(1e-10));
  CHECK(lim[1] == lim[0]);  // uniform law: every mode carries the same bound

  CHECK_THROWS_AS(gk::budget_to_tolerance(s, d, -1e-6), mg::ConfigError);
}

TEST_CASE("budget_to_tolerance: resonant even mode owns its alpha0 share") {
  const double tau = 100e-6;
  const double dk_res = 1e-4;
  const ModeSpectrum s = coupled_spectrum(
      {4.0 * (2.0 + dk_res) * kPi / tau, 4.0 * 8.0 * kPi / tau}, {0.2, 0.0},
      {0.3, 0.0});
  const PulseSpec ps = make_pulse(4, 2e5, tau);
  const gk::GateDesign d = gk::make_gate_design(s, 0, 1, ps, 1e-4);

  const std::vector<double> lim = gk::budget_to_tolerance(s, d, 1e-4);
  // resonant mode: |delta_k| at which alpha0 alone exhausts the budget
  CHECK(lim[0] == doctest::Approx(0.0006979405957555034).epsilon(1e-8));
  // the other mode is decoupled, so nothing constrains it
  CHECK(lim[1] == std::numeric_limits<double>::infinity());

  // a budget below the irreducible alpha0 is unservable
  try {
    gk::budget_to_tolerance(s, d, 1e-6);
    FAIL("expected BudgetInfeasibleError");
  } catch (const mg::BudgetInfeasibleError& e) {
    CHECK(e.irreducible() ==
          doctest::Approx(2.052877715426587e-06).epsilon(1e-6));
  }
}

TEST_CASE("make_gate_design fills the commensurate bookkeeping") {
  const double tau = 69.466e-6;
  const std::vector<int> k_true{92, 95, 97};
  std::vector<double> freqs(3);
  for (std::size_t p = 0; p < 3; ++p)
    freqs[p] = 4.0 * k_true[p] * kPi / tau;
  const ModeSpectrum s = ModeSpectrum::with_participation_couplings(
      freqs, mg::modes::uniform_three_ion_participation());
  const PulseSpec ps = make_pulse(193, 3e5, tau);
  const gk::GateDesign d = gk::make_gate_design(s, 0, 1, ps, 1e-4);
  CHECK(d.k_indices == k_true);
  for (double dk : d.delta_k) CHECK(std::abs(dk) < 1e-10);
  CHECK(d.chi == doctest::Approx(gk::chi_analytic(s, 0, 1, k_true, ps))
                     .epsilon(1e-15));
  CHECK(d.alpha < 1e-15 * d.pulse.omega * d.pulse.omega * tau * tau);
  CHECK(d.alpha_budget == 1e-4);

  CHECK_THROWS_AS(gk::make_gate_design(s, 0, 0, ps, 1e-4), mg::ConfigError);
  CHECK_THROWS_AS(gk::make_gate_design(s, 0, 9, ps, 1e-4), mg::ConfigError);
}

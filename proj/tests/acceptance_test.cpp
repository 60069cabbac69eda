// Acceptance gate for the toolkit: ten numbered end-to-end checks, one
// [PASS]/[FAIL] line each. Exit code is the number of failing checks, so the
// binary doubles as a CI gate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "modegate/chain.hpp"
#include "modegate/constants.hpp"
#include "modegate/engineer.hpp"
#include "modegate/gatekernel.hpp"
#include "modegate/modes.hpp"
#include "modegate/oracle.hpp"
#include "modegate/pulse.hpp"

namespace mg = modegate;
namespace gk = modegate::gatekernel;
using mg::modes::ModeSpectrum;
using mg::pulse::PulseSpec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kTau = 69.466e-6;
const std::vector<int> kIndices{92, 95, 97};
const std::vector<double> kTargetsHz{2.649e6, 2.735e6, 2.793e6};

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

ModeSpectrum ideal_spectrum() {
  std::vector<double> freqs(3);
  for (std::size_t p = 0; p < 3; ++p)
    freqs[p] = 4.0 * kIndices[p] * kPi / kTau;
  return ModeSpectrum::with_participation_couplings(
      freqs, mg::modes::uniform_three_ion_participation());
}

PulseSpec calibrated(const ModeSpectrum& s, int l) {
  return mg::pulse::calibrate_omega(s, 0, 1, kIndices, kTau, l, kPi / 2.0);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(eng);
  }
  int uniform_int(int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(eng);
  }
};

// ---- 1: commensurate drive frequencies of the reference design --------------

void criterion_1() {
  double worst = 0.0;
  for (std::size_t p = 0; p < 3; ++p) {
    const double f = 2.0 * kIndices[p] / kTau;
    worst = std::max(worst, std::abs(f - kTargetsHz[p]));
  }
  report(1, worst < 1e3,
         fmt("f_p = 2k_p/tau lands on the quoted MHz triple "
             "(worst offset %.1f Hz, tolerance 1000 Hz)",
             worst));
}

// ---- 2: closed-form chi vs the brute-force oracle ---------------------------

struct RandomInstance {
  ModeSpectrum spectrum;
  std::vector<int> k;
  PulseSpec pulse;
};

RandomInstance draw_chi_instance(Rng& rng, int index) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int n = rng.uniform_int(2, 5);
    const double tau = rng.uniform(20e-6, 150e-6);
    const bool high_band = index % 10 == 7;
    int k0 = high_band ? rng.uniform_int(200, 260) : rng.uniform_int(5, 40);
    std::vector<int> k(n);
    for (int p = 0; p < n; ++p) {
      k[p] = k0;
      k0 += high_band ? rng.uniform_int(1, 8) : rng.uniform_int(1, 25);
    }
    std::vector<double> freqs(n), a(n), b(n);
    for (int p = 0; p < n; ++p) {
      freqs[p] = 4.0 * k[p] * kPi / tau;
      a[p] = rng.uniform(0.02, 0.3) * (rng.uniform_int(0, 1) ? 1.0 : -1.0);
      b[p] = rng.uniform(0.02, 0.3) * (rng.uniform_int(0, 1) ? 1.0 : -1.0);
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    std::vector<double> nbar(n), phases(n), couplings(n);
    for (int p = 0; p < n; ++p) {
      rows[p][0] = a[p];
      rows[p][1] = b[p];
      couplings[p] = a[p] * b[p];
      nbar[p] = rng.uniform(0.0, 2.0);
      phases[p] = rng.uniform(0.0, kTwoPi);
    }

    int l;
    if (index % 5 == 0)
      l = 2 * k[static_cast<std::size_t>(rng.uniform_int(0, n - 1))];
    else if (index % 2 != 0)
      l = 2 * rng.uniform_int(0, 9) + 1;
    else
      l = 2 * rng.uniform_int(1, 10);

    // skip draws whose mode terms nearly cancel: the relative comparison is
    // meaningless when chi itself sits at the quadrature noise floor
    double term_scale = 0.0;
    for (int p = 0; p < n; ++p) {
      const double w = 2 * k[p] == l
                           ? 3.0 / (8.0 * l)
                           : std::abs(static_cast<double>(k[p]) /
                                      (4.0 * k[p] * k[p] - l * l));
      term_scale += std::abs(couplings[p]) * w / kTwoPi;
    }
    if (std::abs(gk::chi_core(couplings, k, l)) < 1e-3 * term_scale) continue;

    RandomInstance inst;
    inst.spectrum = ModeSpectrum::with_participation_couplings(
        freqs, rows, nbar, phases);
    inst.k = k;
    inst.pulse.l = l;
    inst.pulse.omega = rng.uniform(1e5, 8e5);
    inst.pulse.tau = tau;
    return inst;
  }
  throw std::runtime_error("instance rejection loop exhausted");
}

void criterion_2() {
  Rng rng(12345);
  const int instances = 200;
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < instances; ++i) {
    const RandomInstance inst = draw_chi_instance(rng, i);
    const double analytic =
        gk::chi_analytic(inst.spectrum, 0, 1, inst.k, inst.pulse);
    const double oracle = mg::oracle::chi_oracle(inst.spectrum, 0, 1,
                                                 inst.pulse);
    worst = std::max(worst, std::abs(analytic - oracle) / std::abs(oracle));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(2, worst < 1e-6 && seconds < 60.0,
         fmt("closed-form chi vs oracle on %d random chains "
             "(worst rel err %.2e < 1e-6, %.1f s < 60 s)",
             instances, worst, seconds));
}

// ---- 3: two-segment factorization of the detuned mode integral --------------

void criterion_3() {
  Rng rng(777);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double tau = rng.uniform(20e-6, 150e-6);
    int k, l;
    if (i % 2 == 0) {
      k = rng.uniform_int(1, 8);
      l = rng.uniform_int(1, 16);
    } else {  // near-resonant band keeps the integral large at any k
      k = rng.uniform_int(1, 40);
      l = std::max(1, 2 * k + rng.uniform_int(-1, 1));
    }
    const double dk = rng.uniform(0.05, 0.45) *
                      (rng.uniform_int(0, 1) ? 1.0 : -1.0);
    PulseSpec ps;
    ps.l = l;
    ps.omega = 1.0;
    ps.tau = tau;
    const double w = 4.0 * (k + dk) * kPi / tau;
    const mg::oracle::QuadratureSettings q;
    const std::complex<double> full =
        mg::oracle::oscillatory_integral(ps, w, q, {0.0, tau});
    const std::complex<double> half =
        mg::oracle::oscillatory_integral(ps, w, q, {0.0, tau / 2.0});
    const std::complex<double> phase{std::cos(kTwoPi * dk),
                                     std::sin(kTwoPi * dk)};
    worst = std::max(worst,
                     std::abs(full - (1.0 - phase) * half) / std::abs(full));
  }
  report(3, worst < 1e-10,
         fmt("full integral equals (1 - e^{2i delta_k pi}) x half on 100 "
             "random (l, k, delta_k) (worst rel err %.2e < 1e-10)",
             worst));
}

// ---- 4: alpha scaling exponents against a common frequency shift ------------

double alpha_at_shift(const ModeSpectrum& base, const PulseSpec& ps,
                      double shift) {
  ModeSpectrum shifted = base;
  for (double& w : shifted.frequencies) w += shift;
  std::vector<int> k;
  std::vector<double> dk;
  gk::assign_k_indices(shifted, ps.tau, k, dk);
  return gk::alpha_factored(shifted, 0, 1, ps, dk, shifted.nbar);
}

void criterion_4() {
  const ModeSpectrum s = ideal_spectrum();
  const PulseSpec odd = calibrated(s, 193);
  const PulseSpec even = calibrated(s, 192);

  std::vector<double> shifts;
  for (int i = 0; i <= 12; ++i)
    shifts.push_back(kTwoPi * 10.0 * std::pow(10.0, i / 6.0));

  bool ordered = true;
  std::vector<double> ln_w, ln_odd, ln_even;
  for (double dw : shifts) {
    const double ao = alpha_at_shift(s, odd, dw);
    const double ae = alpha_at_shift(s, even, dw);
    ordered = ordered && ae < ao;
    ln_w.push_back(std::log(dw));
    ln_odd.push_back(std::log(ao));
    ln_even.push_back(std::log(ae));
  }
  auto slope = [&](const std::vector<double>& y) {
    const double n = static_cast<double>(ln_w.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ln_w.size(); ++i) {
      sx += ln_w[i];
      sy += y[i];
      sxx += ln_w[i] * ln_w[i];
      sxy += ln_w[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double so = slope(ln_odd);
  const double se = slope(ln_even);
  const bool ok = std::abs(so - 2.0) < 0.05 && std::abs(se - 4.0) < 0.05 &&
                  ordered;
  report(4, ok,
         fmt("alpha scaling over 10..1000 Hz shifts: slope %.3f (odd, want "
             "2.00+-0.05), %.3f (even, want 4.00+-0.05), even below odd: %s",
             so, se, ordered ? "yes" : "no"));
}

// ---- 5: harmonic selection and the even/odd power penalty -------------------

void criterion_5() {
  const ModeSpectrum s = ideal_spectrum();
  const mg::SweepResult scan = mg::pulse::scan_l(s, 0, 1, kIndices, kTau, 300);
  const int l_odd = mg::pulse::select_l(scan, mg::pulse::Parity::odd);
  const int l_even = mg::pulse::select_l(scan, mg::pulse::Parity::even);
  const PulseSpec odd = calibrated(s, l_odd);
  const PulseSpec even = calibrated(s, l_even);
  const double ratio = even.omega / odd.omega;

  // absolute amplitudes are reported on the physical Lamb-Dicke scale at the
  // mean mode frequency, but not asserted
  const double mass =
      mg::constants::yb171_mass_u * mg::constants::atomic_mass_unit;
  const double mean =
      (s.frequencies[0] + s.frequencies[1] + s.frequencies[2]) / 3.0;
  const double eta = mg::constants::raman_355_delta_k *
                     std::sqrt(mg::constants::hbar / (2.0 * mass * mean));
  const bool ok = l_odd == 193 && l_even == 192 && std::abs(ratio - 1.32) < 0.15;
  report(5, ok,
         fmt("harmonic picks l=%d (odd) / l=%d (even), amplitude ratio %.4f "
             "(want 1.32+-0.15); Omega/2pi = %.1f / %.1f kHz at eta=%.4f",
             l_odd, l_even, ratio, odd.omega / eta / kTwoPi / 1e3,
             even.omega / eta / kTwoPi / 1e3, eta));
}

// ---- 6: calibration puts chi on the fully entangling point ------------------

void criterion_6() {
  const ModeSpectrum s = ideal_spectrum();
  const PulseSpec ps = calibrated(s, 193);
  const double analytic = gk::chi_analytic(s, 0, 1, kIndices, ps);
  const double oracle = mg::oracle::chi_oracle(s, 0, 1, ps);
  const double err_a = std::abs(std::abs(analytic) - kPi / 8.0);
  const double err_o = std::abs(oracle - analytic) / std::abs(analytic);
  report(6, err_a < 1e-12 && err_o < 1e-6,
         fmt("calibrated |chi| = pi/8 (closed form off by %.2e < 1e-12, "
             "oracle rel dev %.2e < 1e-6)",
             err_a, err_o));
}

// ---- 7: each half of the gate accumulates exactly chi/2 ---------------------

void criterion_7() {
  const ModeSpectrum s = ideal_spectrum();
  double worst = 0.0;
  for (int l : {193, 192}) {
    const PulseSpec ps = calibrated(s, l);
    const double chi = gk::chi_analytic(s, 0, 1, kIndices, ps);
    const auto halves = gk::half_gate_chi(s, 0, 1, ps);
    worst = std::max(worst, std::abs(halves.first - chi / 2.0));
    worst = std::max(worst, std::abs(halves.second - chi / 2.0));
  }
  report(7, worst < 1e-9,
         fmt("half gates carry pi/16 each for l=193 and l=192 "
             "(worst abs dev %.2e < 1e-9)",
             worst));
}

// ---- 8: physical chain reproduces the analytic mode structure ---------------

void criterion_8() {
  const double mass =
      mg::constants::yb171_mass_u * mg::constants::atomic_mass_unit;

  // three ions, uniform transverse confinement: participation must match the
  // ideal rows up to an overall row sign
  mg::modes::ChainConfig three = mg::modes::ChainConfig::uniform(
      3, mass, mg::modes::axial_curvature_for_spacing(3, 4.3e-6),
      mass * (kTwoPi * 2.793e6) * (kTwoPi * 2.793e6));
  const ModeSpectrum s3 = mg::modes::solve_chain_modes(three);
  const auto ideal = mg::modes::uniform_three_ion_participation();
  double worst_row = 0.0;
  for (std::size_t p = 0; p < 3; ++p) {
    double dot = 0.0;
    for (std::size_t i = 0; i < 3; ++i) dot += s3.participation[p][i] * ideal[p][i];
    const double sign = dot >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < 3; ++i)
      worst_row = std::max(worst_row, std::abs(s3.participation[p][i] -
                                               sign * ideal[p][i]));
  }

  // two ions: both transverse frequencies in closed form
  const double c_ax = mass * (kTwoPi * 0.2e6) * (kTwoPi * 0.2e6);
  const double c_t = mass * (kTwoPi * 2.5e6) * (kTwoPi * 2.5e6);
  const ModeSpectrum s2 = mg::modes::solve_chain_modes(
      mg::modes::ChainConfig::uniform(2, mass, c_ax, c_t));
  const double worst_two = std::max(
      std::abs(s2.frequencies[0] / std::sqrt((c_t - c_ax) / mass) - 1.0),
      std::abs(s2.frequencies[1] / std::sqrt(c_t / mass) - 1.0));

  report(8, worst_row < 1e-8 && worst_two < 1e-10,
         fmt("mode structure: 3-ion rows off ideal by %.2e < 1e-8, 2-ion "
             "frequencies off closed form by %.2e < 1e-10",
             worst_row, worst_two));
}

// ---- 9: pulse smoothness at the midpoint matches the parity -----------------

double one_sided_derivative(const PulseSpec& ps, double at, double h) {
  // 6th-order one-sided stencil; h < 0 probes the left limit
  static const double w[7] = {-49.0 / 20.0, 6.0,       -15.0 / 2.0, 20.0 / 3.0,
                              -15.0 / 4.0,  6.0 / 5.0, -1.0 / 6.0};
  double acc = 0.0;
  for (int i = 0; i < 7; ++i)
    acc += w[i] * mg::pulse::eval_pulse(ps, at + i * h);
  return acc / h;
}

void criterion_9() {
  const ModeSpectrum s = ideal_spectrum();
  const double h = 1e-5 * kTau;

  const PulseSpec odd = calibrated(s, 193);
  const double odd_left = one_sided_derivative(odd, kTau / 2.0, -h);
  const double odd_right = one_sided_derivative(odd, kTau / 2.0, h);
  const double odd_gap = std::abs(odd_left - odd_right);
  const double odd_tol = 1e-6 * odd.omega / kTau;

  const PulseSpec even = calibrated(s, 192);
  const double even_left = one_sided_derivative(even, kTau / 2.0, -h);
  const double even_right = one_sided_derivative(even, kTau / 2.0, h);
  const double jump = 4.0 * even.l * kPi * even.omega / kTau;
  const double even_gap = std::abs(even_left - even_right);

  const bool ok = odd_gap < odd_tol && std::abs(even_gap - jump) < 0.01 * jump;
  report(9, ok,
         fmt("midpoint derivatives: odd gap %.2e < %.2e, even jump %.4e vs "
             "4 l pi Omega / tau = %.4e (within 1%%)",
             odd_gap, odd_tol, even_gap, jump));
}

// ---- 10: no residual coupling at exactly commensurate frequencies -----------

void criterion_10() {
  const ModeSpectrum s = ideal_spectrum();
  double eta_sq = 0.0;
  for (std::size_t p = 0; p < 3; ++p)
    eta_sq += s.lamb_dicke[p][0] * s.lamb_dicke[p][0] +
              s.lamb_dicke[p][1] * s.lamb_dicke[p][1];
  bool ok = true;
  double worst_ratio = 0.0;
  for (int l : {193, 192}) {
    const PulseSpec ps = calibrated(s, l);
    const double alpha = mg::oracle::alpha_oracle(s, 0, 1, ps);
    const double ot = ps.omega * ps.tau;
    const double bound = 1e-10 * ot * ot * eta_sq;
    ok = ok && alpha < bound;
    worst_ratio = std::max(worst_ratio, alpha / bound);
  }
  report(10, ok,
         fmt("alpha at ideal frequencies for l=193 and l=192: worst "
             "alpha/bound = %.2e < 1 (bound = 1e-10 x (Omega tau)^2 x "
             "sum eta^2)",
             worst_ratio));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0)
    std::printf("all 10 acceptance criteria passed\n");
  else
    std::printf("%d of 10 acceptance criteria failed\n", g_failures);
  return g_failures;
}

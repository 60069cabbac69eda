// modegate: design toolkit for mode-engineered MS two-qubit gates.
// Subcommands read one config file, compute, and emit deterministic CSV/JSON.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modegate/config.hpp"
#include "modegate/engineer.hpp"
#include "modegate/errors.hpp"
#include "modegate/gatekernel.hpp"
#include "modegate/modes.hpp"
#include "modegate/pulse.hpp"
#include "modegate/report.hpp"
#include "modegate/sweep.hpp"
#include "modegate/verify.hpp"

namespace {

namespace mg = modegate;
using mg::cli::OutputFormat;
using mg::cli::RunConfig;
using mg::SweepResult;

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;  // "", "csv", "json"
  std::string parity;  // "", "odd", "even", "both"
  std::uint64_t seed = 1;
  double chi_scale = 1.0;  // verify self-test: scale closed-form chi
};

RunConfig load_config(const Options& opt, const std::string& cmd) {
  if (opt.config_path.empty())
    throw mg::ConfigError("the " + cmd + " command needs --config <file>");
  RunConfig rc = mg::cli::parse_config_file(opt.config_path);
  if (opt.format == "csv") rc.output.format = OutputFormat::csv;
  if (opt.format == "json") rc.output.format = OutputFormat::json;
  if (!opt.out_path.empty()) rc.output.path = opt.out_path;
  return rc;
}

std::optional<mg::pulse::Parity> effective_parity(const RunConfig& rc,
                                                  const Options& opt) {
  if (opt.parity == "odd") return mg::pulse::Parity::odd;
  if (opt.parity == "even") return mg::pulse::Parity::even;
  if (opt.parity == "both") return std::nullopt;
  return rc.gate.parity_preference;
}

void emit_table(const SweepResult& table, const RunConfig& rc) {
  if (rc.output.format == OutputFormat::csv) {
    mg::report::write_output(
        mg::report::csv_from_table(table, rc.output.precision), rc.output.path);
  } else {
    mg::report::write_output(
        mg::report::json_from_table(table, rc.output.precision).dump(2) + "\n",
        rc.output.path);
  }
}

// Commensurability bookkeeping shared by most commands: the resolved spectrum
// with its nearest-integer k_p and detunings at the configured gate time.
struct SpectrumContext {
  mg::modes::ModeSpectrum spectrum;
  double tau = 0.0;
  std::vector<int> k;
  std::vector<double> delta_k;
};

SpectrumContext make_context(const RunConfig& rc) {
  SpectrumContext ctx;
  ctx.spectrum = mg::cli::resolve_spectrum(rc);
  ctx.tau = rc.require_tau();
  mg::gatekernel::assign_k_indices(ctx.spectrum, ctx.tau, ctx.k, ctx.delta_k);
  return ctx;
}

struct CalibratedPick {
  int l = 0;
  mg::pulse::PulseSpec ps;
  mg::gatekernel::GateDesign design;
};

CalibratedPick pick_and_calibrate(const RunConfig& rc,
                                  const SpectrumContext& ctx,
                                  const SweepResult& scan,
                                  mg::pulse::Parity parity) {
  CalibratedPick pick;
  pick.l = mg::pulse::select_l(scan, parity);
  pick.ps = mg::pulse::calibrate_omega(
      ctx.spectrum, rc.gate.ion_i, rc.gate.ion_j, ctx.k, ctx.tau, pick.l,
      rc.gate.theta_target);
  pick.design = mg::gatekernel::make_gate_design(
      ctx.spectrum, rc.gate.ion_i, rc.gate.ion_j, pick.ps,
      rc.gate.alpha_budget);
  return pick;
}

// ---- subcommands ------------------------------------------------------------

int cmd_modes(const Options& opt) {
  RunConfig rc = load_config(opt, "modes");
  SpectrumContext ctx = make_context(rc);
  const std::size_t n = ctx.spectrum.size();

  SweepResult table;
  table.columns = {"mode", "frequency_hz", "omega_rad_s", "k", "delta_k"};
  for (std::size_t i = 0; i < n; ++i)
    table.columns.push_back("nu_" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    table.columns.push_back("eta_" + std::to_string(i));
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<double> row{static_cast<double>(p),
                            ctx.spectrum.frequencies[p] / kTwoPi,
                            ctx.spectrum.frequencies[p],
                            static_cast<double>(ctx.k[p]), ctx.delta_k[p]};
    for (double v : ctx.spectrum.participation[p]) row.push_back(v);
    for (double v : ctx.spectrum.lamb_dicke[p]) row.push_back(v);
    table.rows.push_back(std::move(row));
  }
  emit_table(table, rc);
  return 0;
}

int cmd_design(const Options& opt) {
  RunConfig rc = load_config(opt, "design");
  SpectrumContext ctx = make_context(rc);
  SweepResult scan = mg::pulse::scan_l(ctx.spectrum, rc.gate.ion_i,
                                       rc.gate.ion_j, ctx.k, ctx.tau,
                                       rc.gate.l_max);
  auto parity = effective_parity(rc, opt);

  std::vector<CalibratedPick> picks;
  if (!parity || *parity == mg::pulse::Parity::odd)
    picks.push_back(pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::odd));
  if (!parity || *parity == mg::pulse::Parity::even)
    picks.push_back(pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::even));

  double power_ratio = std::numeric_limits<double>::quiet_NaN();
  if (picks.size() == 2 && picks[0].ps.omega > 0.0)
    power_ratio = picks[1].ps.omega / picks[0].ps.omega;

  SweepResult table;
  table.columns = {"parity",      "l",     "omega_rad_s",
                   "omega_2pi_hz", "chi",   "theta",
                   "alpha",       "power_ratio_even_over_odd"};
  for (std::size_t p = 0; p < ctx.spectrum.size(); ++p)
    table.columns.push_back("budget_dk_" + std::to_string(p));
  for (const CalibratedPick& pick : picks) {
    std::vector<double> row{pick.ps.is_odd() ? 1.0 : 0.0,
                            static_cast<double>(pick.l),
                            pick.ps.omega,
                            pick.ps.omega / kTwoPi,
                            pick.design.chi,
                            4.0 * pick.design.chi,
                            pick.design.alpha,
                            power_ratio};
    std::vector<double> budget = mg::gatekernel::budget_to_tolerance(
        ctx.spectrum, pick.design, rc.gate.alpha_budget);
    for (double v : budget) row.push_back(v);
    table.rows.push_back(std::move(row));
  }
  emit_table(table, rc);
  return 0;
}

int cmd_fig3(const Options& opt) {
  RunConfig rc = load_config(opt, "fig3");
  SpectrumContext ctx = make_context(rc);
  SweepResult scan = mg::pulse::scan_l(ctx.spectrum, rc.gate.ion_i,
                                       rc.gate.ion_j, ctx.k, ctx.tau,
                                       rc.gate.l_max);
  auto parity = effective_parity(rc, opt);

  SweepResult table;
  table.columns = {"l", "parity", "abs_chi_over_omega2_tau2",
                   "resonance_marker"};
  std::size_t l_col = scan.column_index("l");
  std::size_t parity_col = scan.column_index("parity");
  std::size_t value_col = scan.column_index("abs_chi_over_omega2_tau2");
  for (const auto& row : scan.rows) {
    bool odd = row[parity_col] != 0.0;
    if (parity && *parity != (odd ? mg::pulse::Parity::odd
                                  : mg::pulse::Parity::even))
      continue;
    int l = static_cast<int>(row[l_col]);
    double marker = 0.0;  // dashed lines in the plot sit at l = 2k_p
    for (int k : ctx.k)
      if (l == 2 * k) marker = 1.0;
    table.rows.push_back({static_cast<double>(l), row[parity_col],
                          row[value_col], marker});
  }
  emit_table(table, rc);
  return 0;
}

int cmd_fig4(const Options& opt) {
  RunConfig rc = load_config(opt, "fig4");
  SpectrumContext ctx = make_context(rc);
  SweepResult scan = mg::pulse::scan_l(ctx.spectrum, rc.gate.ion_i,
                                       rc.gate.ion_j, ctx.k, ctx.tau,
                                       rc.gate.l_max);
  CalibratedPick odd =
      pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::odd);
  CalibratedPick even =
      pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::even);

  const int samples = 10000;  // τ·i/samples puts i = 5000 exactly at τ/2
  SweepResult table;
  table.columns = {"t", "g_odd", "g_even"};
  for (int i = 0; i <= samples; ++i) {
    double t = ctx.tau * i / samples;
    table.rows.push_back({t, mg::pulse::eval_pulse(odd.ps, t),
                          mg::pulse::eval_pulse(even.ps, t)});
  }
  emit_table(table, rc);
  return 0;
}

SweepResult shift_sweep_both(const RunConfig& rc, const SpectrumContext& ctx) {
  SweepResult scan = mg::pulse::scan_l(ctx.spectrum, rc.gate.ion_i,
                                       rc.gate.ion_j, ctx.k, ctx.tau,
                                       rc.gate.l_max);
  CalibratedPick odd =
      pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::odd);
  CalibratedPick even =
      pick_and_calibrate(rc, ctx, scan, mg::pulse::Parity::even);
  SweepResult sweep_odd = mg::engineer::sweep_common_shift(
      ctx.spectrum, odd.design, rc.sweep.delta_omega_min,
      rc.sweep.delta_omega_max, rc.sweep.steps);
  SweepResult sweep_even = mg::engineer::sweep_common_shift(
      ctx.spectrum, even.design, rc.sweep.delta_omega_min,
      rc.sweep.delta_omega_max, rc.sweep.steps);

  SweepResult table;
  table.columns = {"delta_omega", "alpha_odd", "alpha_even"};
  std::size_t shift_col = sweep_odd.column_index("delta_omega");
  std::size_t alpha_col = sweep_odd.column_index("alpha");
  for (std::size_t r = 0; r < sweep_odd.rows.size(); ++r)
    table.rows.push_back({sweep_odd.rows[r][shift_col],
                          sweep_odd.rows[r][alpha_col],
                          sweep_even.rows[r][alpha_col]});
  return table;
}

int cmd_fig5(const Options& opt) {
  RunConfig rc = load_config(opt, "fig5");
  SpectrumContext ctx = make_context(rc);
  emit_table(shift_sweep_both(rc, ctx), rc);
  return 0;
}

int cmd_sweep(const Options& opt) {
  RunConfig rc = load_config(opt, "sweep");
  SpectrumContext ctx = make_context(rc);
  auto parity = effective_parity(rc, opt);
  if (!parity) {
    emit_table(shift_sweep_both(rc, ctx), rc);
    return 0;
  }
  SweepResult scan = mg::pulse::scan_l(ctx.spectrum, rc.gate.ion_i,
                                       rc.gate.ion_j, ctx.k, ctx.tau,
                                       rc.gate.l_max);
  CalibratedPick pick = pick_and_calibrate(rc, ctx, scan, *parity);
  emit_table(mg::engineer::sweep_common_shift(
                 ctx.spectrum, pick.design, rc.sweep.delta_omega_min,
                 rc.sweep.delta_omega_max, rc.sweep.steps),
             rc);
  return 0;
}

int cmd_engineer(const Options& opt) {
  RunConfig rc = load_config(opt, "engineer");
  if (rc.windows.mode_windows.empty())
    throw mg::ConfigError(
        "the engineer command needs an [engineering] section with frequency "
        "windows and a tau range");
  auto solutions = mg::engineer::search_condition1(rc.windows, rc.top_m);

  SweepResult table;
  table.columns = {"rank", "tau", "residual"};
  for (std::size_t p = 0; p < rc.windows.mode_windows.size(); ++p)
    table.columns.push_back("k_" + std::to_string(p));
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    std::vector<double> row{static_cast<double>(s), solutions[s].tau,
                            solutions[s].residual};
    for (int k : solutions[s].k) row.push_back(static_cast<double>(k));
    table.rows.push_back(std::move(row));
  }
  emit_table(table, rc);
  return 0;
}

int cmd_verify(const Options& opt) {
  // verify runs with built-in defaults when no config is given, so a bare
  // `modegate verify` can gate a build
  OutputFormat format = OutputFormat::json;
  std::string path;
  int precision = 10;
  if (!opt.config_path.empty()) {
    RunConfig rc = load_config(opt, "verify");
    path = rc.output.path;
    precision = rc.output.precision;
  } else if (!opt.out_path.empty()) {
    path = opt.out_path;
  }
  (void)format;  // verify output is machine-readable JSON regardless of format

  mg::verify::VerifyReport report =
      mg::verify::run_suite(opt.seed, opt.chi_scale);
  nlohmann::ordered_json doc;
  doc["seed"] = report.seed;
  doc["all_passed"] = report.all_passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& check : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = check.name;
    entry["passed"] = check.passed;
    entry["instances"] = check.instances;
    entry["worst_error"] = mg::report::rounded(check.worst_error, precision);
    entry["tolerance"] = check.tolerance;
    checks.push_back(entry);
  }
  doc["checks"] = checks;
  mg::report::write_output(doc.dump(2) + "\n", path);
  return report.all_passed() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mode-engineered Molmer-Sorensen gate design toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "run configuration file");
  app.add_option("--out", opt.out_path, "output path (overrides [output] path)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--parity", opt.parity, "harmonic parity filter")
      ->check(CLI::IsMember({"odd", "even", "both"}));
  app.add_option("--seed", opt.seed, "random seed for the verify suite");
  app.add_option("--chi-scale", opt.chi_scale,
                 "verify self-test: multiply closed-form chi by this factor "
                 "(anything but 1 must fail the suite)");

  app.add_subcommand("modes", "mode table: frequencies, k_p, delta_k, "
                              "participation, Lamb-Dicke couplings");
  app.add_subcommand("design", "pick l per parity, calibrate Omega, report "
                               "chi, alpha, and the delta-k budget");
  app.add_subcommand("fig3", "harmonic scan |chi/Omega^2 tau^2| vs l");
  app.add_subcommand("fig4", "pulse waveforms g(t) for the odd and even picks");
  app.add_subcommand("fig5", "alpha vs common mode-frequency shift");
  app.add_subcommand("engineer", "search commensurate gate times in the "
                                 "configured frequency windows");
  app.add_subcommand("sweep", "alpha vs common shift over the [sweep] range");
  app.add_subcommand("verify", "oracle cross-check suite (JSON report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "modes") return cmd_modes(opt);
    if (cmd == "design") return cmd_design(opt);
    if (cmd == "fig3") return cmd_fig3(opt);
    if (cmd == "fig4") return cmd_fig4(opt);
    if (cmd == "fig5") return cmd_fig5(opt);
    if (cmd == "engineer") return cmd_engineer(opt);
    if (cmd == "sweep") return cmd_sweep(opt);
    if (cmd == "verify") return cmd_verify(opt);
  } catch (const mg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "unknown command: " << cmd << "\n";
  return 2;
}

// pybind11 surface for the compute core. Config parsing and report emission
// stay CLI-side; python gets the physics: chains, modes, pulses, the gate
// kernel closed forms, the quadrature oracles, and the engineering searches.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "modegate/chain.hpp"
#include "modegate/constants.hpp"
#include "modegate/engineer.hpp"
#include "modegate/errors.hpp"
#include "modegate/gatekernel.hpp"
#include "modegate/modes.hpp"
#include "modegate/oracle.hpp"
#include "modegate/pulse.hpp"
#include "modegate/sweep.hpp"
#include "modegate/verify.hpp"

namespace py = pybind11;
namespace mg = modegate;

PYBIND11_MODULE(_core, m) {
  m.doc() = "mode-engineered Molmer-Sorensen gate design core";

  // base first: translators run newest-first, so the subclass must be
  // registered after its base to win the dispatch
  auto base_exc = py::register_exception<mg::Error>(m, "ModegateError");
  py::register_exception<mg::ConfigError>(m, "ConfigError", base_exc.ptr());

  // physical constants the chain builders work in
  m.attr("hbar") = mg::constants::hbar;
  m.attr("boltzmann") = mg::constants::boltzmann;
  m.attr("atomic_mass_unit") = mg::constants::atomic_mass_unit;
  m.attr("coulomb_coefficient") = mg::constants::coulomb_coefficient;
  m.attr("yb171_mass_u") = mg::constants::yb171_mass_u;
  m.attr("raman_355_delta_k") = mg::constants::raman_355_delta_k;

  // ---- chains and modes -----------------------------------------------------

  py::class_<mg::modes::ChainConfig>(m, "ChainConfig")
      .def(py::init<>())
      .def_readwrite("ion_count", &mg::modes::ChainConfig::ion_count)
      .def_readwrite("ion_mass", &mg::modes::ChainConfig::ion_mass)
      .def_readwrite("axial_curvature", &mg::modes::ChainConfig::axial_curvature)
      .def_readwrite("transverse_curvature_per_ion",
                     &mg::modes::ChainConfig::transverse_curvature_per_ion)
      .def_readwrite("coupling_wavenumber",
                     &mg::modes::ChainConfig::coupling_wavenumber)
      .def_readwrite("nbar_per_mode", &mg::modes::ChainConfig::nbar_per_mode)
      .def_readwrite("initial_phases", &mg::modes::ChainConfig::initial_phases)
      .def_static("uniform", &mg::modes::ChainConfig::uniform, py::arg("n"),
                  py::arg("mass_kg"), py::arg("axial_curvature"),
                  py::arg("transverse_curvature"), py::arg("nbar") = 0.1)
      .def("validate", &mg::modes::ChainConfig::validate);

  py::class_<mg::modes::EquilibriumChain>(m, "EquilibriumChain")
      .def_readonly("positions", &mg::modes::EquilibriumChain::positions)
      .def_readonly("gradient_norm",
                    &mg::modes::EquilibriumChain::gradient_norm);

  py::class_<mg::modes::ModeSpectrum>(m, "ModeSpectrum")
      .def(py::init<>())
      .def_readwrite("frequencies", &mg::modes::ModeSpectrum::frequencies)
      .def_readwrite("participation", &mg::modes::ModeSpectrum::participation)
      .def_readwrite("lamb_dicke", &mg::modes::ModeSpectrum::lamb_dicke)
      .def_readwrite("nbar", &mg::modes::ModeSpectrum::nbar)
      .def_readwrite("phases", &mg::modes::ModeSpectrum::phases)
      .def("__len__", &mg::modes::ModeSpectrum::size)
      .def_static("with_participation_couplings",
                  &mg::modes::ModeSpectrum::with_participation_couplings,
                  py::arg("frequencies"), py::arg("participation"),
                  py::arg("nbar") = std::vector<double>{},
                  py::arg("phases") = std::vector<double>{});

  m.def("characteristic_length", &mg::modes::characteristic_length);
  m.def("solve_equilibrium", &mg::modes::solve_equilibrium);
  m.def("build_k_matrix", &mg::modes::build_k_matrix);
  m.def("solve_modes", &mg::modes::solve_modes);
  m.def("solve_chain_modes", &mg::modes::solve_chain_modes);
  m.def("axial_curvature_for_spacing", &mg::modes::axial_curvature_for_spacing,
        py::arg("ion_count"), py::arg("spacing"));
  m.def("uniform_three_ion_participation",
        &mg::modes::uniform_three_ion_participation);

  py::class_<mg::modes::CurvatureFit>(m, "CurvatureFit")
      .def_readonly("config", &mg::modes::CurvatureFit::config)
      .def_readonly("residuals", &mg::modes::CurvatureFit::residuals)
      .def_readonly("max_relative_error",
                    &mg::modes::CurvatureFit::max_relative_error)
      .def_readonly("iterations", &mg::modes::CurvatureFit::iterations);
  m.def("invert_curvatures_for_frequencies",
        &mg::modes::invert_curvatures_for_frequencies,
        py::arg("target_frequencies"), py::arg("base"));

  // ---- pulses ---------------------------------------------------------------

  py::enum_<mg::pulse::Parity>(m, "Parity")
      .value("even", mg::pulse::Parity::even)
      .value("odd", mg::pulse::Parity::odd);

  py::class_<mg::pulse::PulseSpec>(m, "PulseSpec")
      .def(py::init<>())
      .def(py::init([](int l, double omega, double tau, int chi_sign) {
             return mg::pulse::PulseSpec{l, omega, tau, chi_sign};
           }),
           py::arg("l"), py::arg("omega"), py::arg("tau"),
           py::arg("chi_sign") = 1)
      .def_readwrite("l", &mg::pulse::PulseSpec::l)
      .def_readwrite("omega", &mg::pulse::PulseSpec::omega)
      .def_readwrite("tau", &mg::pulse::PulseSpec::tau)
      .def_readwrite("chi_sign", &mg::pulse::PulseSpec::chi_sign)
      .def("is_odd", &mg::pulse::PulseSpec::is_odd)
      .def("parity", &mg::pulse::PulseSpec::parity);

  m.def("pulse_shape", &mg::pulse::pulse_shape, py::arg("l"), py::arg("u"));
  m.def("eval_pulse", &mg::pulse::eval_pulse, py::arg("spec"), py::arg("t"));

  py::class_<mg::SweepResult>(m, "SweepResult")
      .def_readonly("columns", &mg::SweepResult::columns)
      .def_readonly("rows", &mg::SweepResult::rows)
      .def("column_index", &mg::SweepResult::column_index)
      .def("at", &mg::SweepResult::at, py::arg("row"), py::arg("name"));

  m.def("scan_l", &mg::pulse::scan_l, py::arg("spectrum"), py::arg("i"),
        py::arg("j"), py::arg("k"), py::arg("tau"), py::arg("l_max"));
  m.def("select_l", &mg::pulse::select_l, py::arg("scan"),
        py::arg("parity_filter") = py::none());
  m.def("calibrate_omega", &mg::pulse::calibrate_omega, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("k"), py::arg("tau"), py::arg("l"),
        py::arg("theta_target"));

  // ---- quadrature oracle ----------------------------------------------------

  py::class_<mg::oracle::QuadratureSettings>(m, "QuadratureSettings")
      .def(py::init<>())
      .def_readwrite("points_per_oscillation",
                     &mg::oracle::QuadratureSettings::points_per_oscillation)
      .def_readwrite("rel_tolerance",
                     &mg::oracle::QuadratureSettings::rel_tolerance)
      .def_readwrite("max_panels", &mg::oracle::QuadratureSettings::max_panels);

  py::class_<mg::oracle::Window>(m, "Window")
      .def(py::init([](double t_a, double t_b) {
             return mg::oracle::Window{t_a, t_b};
           }),
           py::arg("t_a"), py::arg("t_b"))
      .def_readwrite("t_a", &mg::oracle::Window::t_a)
      .def_readwrite("t_b", &mg::oracle::Window::t_b);

  m.def("chi_oracle",
        py::overload_cast<const mg::modes::ModeSpectrum&, std::size_t,
                          std::size_t, const mg::pulse::PulseSpec&,
                          const mg::oracle::QuadratureSettings&,
                          const mg::oracle::Window&>(&mg::oracle::chi_oracle),
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("settings"), py::arg("window"));
  m.def("chi_oracle",
        py::overload_cast<const mg::modes::ModeSpectrum&, std::size_t,
                          std::size_t, const mg::pulse::PulseSpec&,
                          const mg::oracle::QuadratureSettings&>(
            &mg::oracle::chi_oracle),
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("settings") = mg::oracle::QuadratureSettings{});
  m.def("chi_cross_window", &mg::oracle::chi_cross_window, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("pulse"), py::arg("settings"),
        py::arg("w1"), py::arg("w2"));
  m.def("alpha_oracle",
        py::overload_cast<const mg::modes::ModeSpectrum&, std::size_t,
                          std::size_t, const mg::pulse::PulseSpec&,
                          const std::vector<double>&,
                          const std::vector<double>&,
                          const mg::oracle::QuadratureSettings&>(
            &mg::oracle::alpha_oracle),
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("frequencies"), py::arg("nbar"),
        py::arg("settings") = mg::oracle::QuadratureSettings{});
  m.def("alpha_oracle",
        py::overload_cast<const mg::modes::ModeSpectrum&, std::size_t,
                          std::size_t, const mg::pulse::PulseSpec&,
                          const mg::oracle::QuadratureSettings&>(
            &mg::oracle::alpha_oracle),
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("settings") = mg::oracle::QuadratureSettings{});
  m.def("oscillatory_integral", &mg::oracle::oscillatory_integral,
        py::arg("pulse"), py::arg("omega_mode"), py::arg("settings"),
        py::arg("window"));

  // ---- gate kernel ----------------------------------------------------------

  py::class_<mg::gatekernel::GateDesign>(m, "GateDesign")
      .def(py::init<>())
      .def_readwrite("ion_i", &mg::gatekernel::GateDesign::ion_i)
      .def_readwrite("ion_j", &mg::gatekernel::GateDesign::ion_j)
      .def_readwrite("pulse", &mg::gatekernel::GateDesign::pulse)
      .def_readwrite("k_indices", &mg::gatekernel::GateDesign::k_indices)
      .def_readwrite("delta_k", &mg::gatekernel::GateDesign::delta_k)
      .def_readwrite("chi", &mg::gatekernel::GateDesign::chi)
      .def_readwrite("alpha", &mg::gatekernel::GateDesign::alpha)
      .def_readwrite("alpha_budget", &mg::gatekernel::GateDesign::alpha_budget);

  m.def(
      "assign_k_indices",
      [](const mg::modes::ModeSpectrum& spectrum, double tau) {
        std::vector<int> k;
        std::vector<double> delta_k;
        mg::gatekernel::assign_k_indices(spectrum, tau, k, delta_k);
        return py::make_tuple(k, delta_k);
      },
      py::arg("spectrum"), py::arg("tau"));
  m.def("make_gate_design", &mg::gatekernel::make_gate_design,
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("alpha_budget"));
  m.def(
      "chi_core",
      [](const std::vector<double>& couplings, const std::vector<int>& k,
         int l) { return mg::gatekernel::chi_core(couplings, k, l); },
      py::arg("couplings"), py::arg("k"), py::arg("l"));
  m.def("chi_analytic", &mg::gatekernel::chi_analytic, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("k"), py::arg("pulse"));
  m.def("half_gate_chi", &mg::gatekernel::half_gate_chi, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("settings") = mg::oracle::QuadratureSettings{});
  m.def("half_interval_core", &mg::gatekernel::half_interval_core,
        py::arg("k"), py::arg("delta_k"), py::arg("l"));
  m.def("mode_integral_sq_core", &mg::gatekernel::mode_integral_sq_core,
        py::arg("k"), py::arg("delta_k"), py::arg("l"));
  m.def("alpha_factored", &mg::gatekernel::alpha_factored, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("pulse"), py::arg("delta_k"),
        py::arg("nbar"));
  m.def("alpha_closed_form", &mg::gatekernel::alpha_closed_form,
        py::arg("spectrum"), py::arg("i"), py::arg("j"), py::arg("pulse"),
        py::arg("delta_k"), py::arg("nbar"));
  m.def("alpha_series", &mg::gatekernel::alpha_series, py::arg("spectrum"),
        py::arg("i"), py::arg("j"), py::arg("pulse"), py::arg("delta_k"),
        py::arg("nbar"));
  m.def("budget_to_tolerance", &mg::gatekernel::budget_to_tolerance,
        py::arg("spectrum"), py::arg("design"), py::arg("epsilon"));

  // ---- engineering ----------------------------------------------------------

  py::class_<mg::engineer::FrequencyWindow>(m, "FrequencyWindow")
      .def(py::init<>())
      .def_readwrite("mode_windows",
                     &mg::engineer::FrequencyWindow::mode_windows)
      .def_readwrite("tau_window", &mg::engineer::FrequencyWindow::tau_window)
      .def("validate", &mg::engineer::FrequencyWindow::validate);

  py::class_<mg::engineer::CommensurateSolution>(m, "CommensurateSolution")
      .def_readonly("tau", &mg::engineer::CommensurateSolution::tau)
      .def_readonly("k", &mg::engineer::CommensurateSolution::k)
      .def_readonly("residual", &mg::engineer::CommensurateSolution::residual);

  m.def("search_condition1", &mg::engineer::search_condition1,
        py::arg("windows"), py::arg("top_m") = 5);
  m.def("sweep_common_shift", &mg::engineer::sweep_common_shift,
        py::arg("spectrum"), py::arg("design"), py::arg("shift_min"),
        py::arg("shift_max"), py::arg("steps"));
  m.def("delta_k_budget", &mg::engineer::delta_k_budget, py::arg("spectrum"),
        py::arg("odd_design"), py::arg("even_design"), py::arg("epsilon"));

  // ---- verification ---------------------------------------------------------

  py::class_<mg::verify::CheckResult>(m, "CheckResult")
      .def_readonly("name", &mg::verify::CheckResult::name)
      .def_readonly("worst_error", &mg::verify::CheckResult::worst_error)
      .def_readonly("tolerance", &mg::verify::CheckResult::tolerance)
      .def_readonly("instances", &mg::verify::CheckResult::instances)
      .def_readonly("passed", &mg::verify::CheckResult::passed);

  py::class_<mg::verify::VerifyReport>(m, "VerifyReport")
      .def_readonly("seed", &mg::verify::VerifyReport::seed)
      .def_readonly("checks", &mg::verify::VerifyReport::checks)
      .def("all_passed", &mg::verify::VerifyReport::all_passed);

  m.def("run_suite", &mg::verify::run_suite, py::arg("seed"),
        py::arg("chi_scale") = 1.0);
}

#include "modegate/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "modegate/constants.hpp"
#include "modegate/errors.hpp"
#include "modegate/gatekernel.hpp"

namespace modegate::cli {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// One key = value occurrence, with the line it came from for error messages.
struct Item {
  std::string value;
  int line = 0;
};

using FieldMap = std::map<std::string, Item>;  // keyed by "section/key"

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

// The recognized schema. Anything outside it is a hard error: silent typo
// tolerance in a physics config is how wrong gates get shipped.
const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"chain",
       {"ion_count", "ion_mass_u", "spacing_um", "axial_curvature",
        "transverse_frequency_mhz", "transverse_curvatures",
        "target_frequencies_mhz", "coupling_wavenumber", "nbar", "phases"}},
      {"gate",
       {"ion_i", "ion_j", "theta_target", "parity", "tau_us", "k_indices",
        "l_max", "coupling_model", "use_ideal_frequencies", "alpha_budget"}},
      {"engineering",
       {"window_centers_mhz", "window_half_width_khz", "tau_min_us",
        "tau_max_us", "top_m"}},
      {"sweep", {"delta_min_hz", "delta_max_hz", "steps"}},
      {"output", {"format", "path", "precision"}},
  };
  return table;
}

FieldMap scan(const std::string& text, const std::string& origin) {
  FieldMap fields;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto cut = raw.find_first_of("#;");  // comment runs to end of line
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        fail_at(origin, line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (known_keys().find(section) == known_keys().end())
        fail_at(origin, line_no, "unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail_at(origin, line_no, "expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_at(origin, line_no, "empty key");
    if (section.empty())
      fail_at(origin, line_no, "key '" + key + "' appears before any [section]");
    if (known_keys().at(section).count(key) == 0)
      fail_at(origin, line_no, "unknown key '" + key + "' in [" + section + "]");
    std::string path = section + "/" + key;
    if (fields.count(path))
      fail_at(origin, line_no,
              "duplicate key '" + key + "' in [" + section + "]");
    fields[path] = Item{value, line_no};
  }
  return fields;
}

// ---- typed accessors --------------------------------------------------------

const Item* find(const FieldMap& f, const std::string& path) {
  auto it = f.find(path);
  return it == f.end() ? nullptr : &it->second;
}

double as_double(const Item& item, const std::string& origin,
                 const std::string& path) {
  const char* s = item.value.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(v))
    fail_at(origin, item.line, path + ": '" + item.value + "' is not a number");
  return v;
}

long as_long(const Item& item, const std::string& origin,
             const std::string& path) {
  const char* s = item.value.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0')
    fail_at(origin, item.line, path + ": '" + item.value + "' is not an integer");
  return v;
}

bool as_bool(const Item& item, const std::string& origin,
             const std::string& path) {
  if (item.value == "true") return true;
  if (item.value == "false") return false;
  fail_at(origin, item.line, path + ": expected true or false, got '" +
                                 item.value + "'");
}

std::vector<std::string> split_list(const Item& item, const std::string& origin,
                                    const std::string& path) {
  std::vector<std::string> parts;
  std::string rest = item.value;
  while (true) {
    auto comma = rest.find(',');
    std::string part = trim(comma == std::string::npos ? rest
                                                       : rest.substr(0, comma));
    if (part.empty())
      fail_at(origin, item.line, path + ": empty element in list");
    parts.push_back(part);
    if (comma == std::string::npos) break;
    rest = rest.substr(comma + 1);
  }
  return parts;
}

std::vector<double> as_double_list(const Item& item, const std::string& origin,
                                   const std::string& path) {
  std::vector<double> out;
  for (const auto& part : split_list(item, origin, path))
    out.push_back(as_double(Item{part, item.line}, origin, path));
  return out;
}

std::vector<int> as_int_list(const Item& item, const std::string& origin,
                             const std::string& path) {
  std::vector<int> out;
  for (const auto& part : split_list(item, origin, path))
    out.push_back(static_cast<int>(as_long(Item{part, item.line}, origin, path)));
  return out;
}

// get-or-default helpers so the assembly code below stays readable
double get_double(const FieldMap& f, const std::string& origin,
                  const std::string& path, double fallback) {
  const Item* item = find(f, path);
  return item ? as_double(*item, origin, path) : fallback;
}

long get_long(const FieldMap& f, const std::string& origin,
              const std::string& path, long fallback) {
  const Item* item = find(f, path);
  return item ? as_long(*item, origin, path) : fallback;
}

bool get_bool(const FieldMap& f, const std::string& origin,
              const std::string& path, bool fallback) {
  const Item* item = find(f, path);
  return item ? as_bool(*item, origin, path) : fallback;
}

// ---- section assembly -------------------------------------------------------

modes::ChainConfig build_chain(const FieldMap& f, const std::string& origin) {
  const Item* count_item = find(f, "chain/ion_count");
  if (!count_item) fail(origin, "[chain] needs ion_count");
  long n_raw = as_long(*count_item, origin, "ion_count");
  if (n_raw < 2)
    fail_at(origin, count_item->line, "ion_count must be at least 2");
  auto n = static_cast<std::size_t>(n_raw);

  double mass =
      get_double(f, origin, "chain/ion_mass_u", constants::yb171_mass_u) *
      constants::atomic_mass_unit;
  if (mass <= 0.0) fail(origin, "ion_mass_u must be positive");

  // Axial confinement: either the stiffness directly or the spacing it should
  // produce (mass-independent relation, so this inversion needs no species).
  const Item* spacing_item = find(f, "chain/spacing_um");
  const Item* axial_item = find(f, "chain/axial_curvature");
  if (!!spacing_item == !!axial_item)
    fail(origin, "[chain] needs exactly one of spacing_um or axial_curvature");
  double axial;
  if (spacing_item) {
    double spacing = as_double(*spacing_item, origin, "spacing_um") * 1e-6;
    if (spacing <= 0.0)
      fail_at(origin, spacing_item->line, "spacing_um must be positive");
    axial = modes::axial_curvature_for_spacing(n, spacing);
  } else {
    axial = as_double(*axial_item, origin, "axial_curvature");
    if (axial <= 0.0)
      fail_at(origin, axial_item->line, "axial_curvature must be positive");
  }

  // Transverse confinement: a uniform frequency, explicit per-ion stiffness,
  // or three target mode frequencies to fit the two curvature knobs against.
  const Item* freq_item = find(f, "chain/transverse_frequency_mhz");
  const Item* curv_item = find(f, "chain/transverse_curvatures");
  const Item* target_item = find(f, "chain/target_frequencies_mhz");
  int given = (freq_item != nullptr) + (curv_item != nullptr) +
              (target_item != nullptr);
  if (given != 1)
    fail(origin,
         "[chain] needs exactly one of transverse_frequency_mhz, "
         "transverse_curvatures, or target_frequencies_mhz");

  modes::ChainConfig chain;
  if (freq_item) {
    double omega =
        2.0 * kPi * 1e6 * as_double(*freq_item, origin, "transverse_frequency_mhz");
    if (omega <= 0.0)
      fail_at(origin, freq_item->line, "transverse_frequency_mhz must be positive");
    chain = modes::ChainConfig::uniform(n, mass, axial, mass * omega * omega);
  } else if (curv_item) {
    auto curvatures = as_double_list(*curv_item, origin, "transverse_curvatures");
    if (curvatures.size() != n)
      fail_at(origin, curv_item->line,
              "transverse_curvatures needs one value per ion");
    chain = modes::ChainConfig::uniform(n, mass, axial, curvatures.front());
    chain.transverse_curvature_per_ion = curvatures;
  } else {
    auto targets_mhz = as_double_list(*target_item, origin,
                                      "target_frequencies_mhz");
    if (n != 3 || targets_mhz.size() != 3)
      fail_at(origin, target_item->line,
              "target_frequencies_mhz fits the two curvature knobs of a "
              "3-ion chain; it needs ion_count = 3 and three values");
    std::vector<double> targets;
    for (double f_mhz : targets_mhz) targets.push_back(2.0 * kPi * 1e6 * f_mhz);
    double mid = targets[1];
    modes::ChainConfig base =
        modes::ChainConfig::uniform(n, mass, axial, mass * mid * mid);
    chain = modes::invert_curvatures_for_frequencies(targets, base).config;
  }

  chain.coupling_wavenumber = get_double(f, origin, "chain/coupling_wavenumber",
                                         constants::raman_355_delta_k);
  if (chain.coupling_wavenumber <= 0.0)
    fail(origin, "coupling_wavenumber must be positive");

  if (const Item* nbar_item = find(f, "chain/nbar")) {
    auto nbar = as_double_list(*nbar_item, origin, "nbar");
    if (nbar.size() == 1) nbar.assign(n, nbar.front());
    if (nbar.size() != n)
      fail_at(origin, nbar_item->line,
              "nbar needs a single value or one per mode");
    for (double v : nbar)
      if (v < 0.0) fail_at(origin, nbar_item->line, "nbar must be >= 0");
    chain.nbar_per_mode = nbar;
  }
  if (const Item* phase_item = find(f, "chain/phases")) {
    auto phases = as_double_list(*phase_item, origin, "phases");
    if (phases.size() != n)
      fail_at(origin, phase_item->line, "phases needs one value per mode");
    chain.initial_phases = phases;
  }
  return chain;
}

GateSettings build_gate(const FieldMap& f, const std::string& origin) {
  GateSettings gate;
  gate.ion_i = static_cast<int>(get_long(f, origin, "gate/ion_i", gate.ion_i));
  gate.ion_j = static_cast<int>(get_long(f, origin, "gate/ion_j", gate.ion_j));
  gate.theta_target =
      get_double(f, origin, "gate/theta_target", gate.theta_target);
  if (const Item* parity_item = find(f, "gate/parity")) {
    if (parity_item->value == "odd")
      gate.parity_preference = pulse::Parity::odd;
    else if (parity_item->value == "even")
      gate.parity_preference = pulse::Parity::even;
    else if (parity_item->value == "both")
      gate.parity_preference.reset();
    else
      fail_at(origin, parity_item->line,
              "parity must be odd, even, or both (got '" + parity_item->value +
                  "')");
  }
  gate.tau = get_double(f, origin, "gate/tau_us", 0.0) * 1e-6;
  if (const Item* k_item = find(f, "gate/k_indices"))
    gate.k_indices = as_int_list(*k_item, origin, "k_indices");
  gate.l_max = static_cast<int>(get_long(f, origin, "gate/l_max", gate.l_max));
  if (const Item* model_item = find(f, "gate/coupling_model")) {
    if (model_item->value == "lamb_dicke")
      gate.coupling_model = CouplingModel::lamb_dicke;
    else if (model_item->value == "participation")
      gate.coupling_model = CouplingModel::participation;
    else
      fail_at(origin, model_item->line,
              "coupling_model must be lamb_dicke or participation (got '" +
                  model_item->value + "')");
  }
  gate.use_ideal_frequencies =
      get_bool(f, origin, "gate/use_ideal_frequencies", false);
  gate.alpha_budget =
      get_double(f, origin, "gate/alpha_budget", gate.alpha_budget);
  return gate;
}

void build_engineering(const FieldMap& f, const std::string& origin,
                       RunConfig& rc) {
  const Item* centers_item = find(f, "engineering/window_centers_mhz");
  const Item* lo_item = find(f, "engineering/tau_min_us");
  const Item* hi_item = find(f, "engineering/tau_max_us");
  bool any = centers_item || lo_item || hi_item ||
             find(f, "engineering/window_half_width_khz") ||
             find(f, "engineering/top_m");
  if (!any) return;
  if (!centers_item || !lo_item || !hi_item)
    fail(origin,
         "[engineering] needs window_centers_mhz, tau_min_us, and tau_max_us");

  double half_width = 2.0 * kPi * 1e3 *
                      get_double(f, origin, "engineering/window_half_width_khz",
                                 0.5);
  if (half_width < 0.0) fail(origin, "window_half_width_khz must be >= 0");
  for (double f_mhz : as_double_list(*centers_item, origin,
                                     "window_centers_mhz")) {
    double center = 2.0 * kPi * 1e6 * f_mhz;
    rc.windows.mode_windows.push_back({center - half_width,
                                       center + half_width});
  }
  rc.windows.tau_window = {as_double(*lo_item, origin, "tau_min_us") * 1e-6,
                           as_double(*hi_item, origin, "tau_max_us") * 1e-6};
  rc.top_m = static_cast<int>(get_long(f, origin, "engineering/top_m", rc.top_m));
}

SweepSettings build_sweep(const FieldMap& f, const std::string& origin) {
  SweepSettings sweep;
  sweep.delta_omega_min = 2.0 * kPi * get_double(f, origin, "sweep/delta_min_hz",
                                                 sweep.delta_omega_min / (2.0 * kPi));
  sweep.delta_omega_max = 2.0 * kPi * get_double(f, origin, "sweep/delta_max_hz",
                                                 sweep.delta_omega_max / (2.0 * kPi));
  sweep.steps = static_cast<int>(get_long(f, origin, "sweep/steps", sweep.steps));
  return sweep;
}

OutputSettings build_output(const FieldMap& f, const std::string& origin) {
  OutputSettings out;
  if (const Item* fmt_item = find(f, "output/format")) {
    if (fmt_item->value == "csv")
      out.format = OutputFormat::csv;
    else if (fmt_item->value == "json")
      out.format = OutputFormat::json;
    else
      fail_at(origin, fmt_item->line,
              "format must be csv or json (got '" + fmt_item->value + "')");
  }
  if (const Item* path_item = find(f, "output/path")) out.path = path_item->value;
  out.precision =
      static_cast<int>(get_long(f, origin, "output/precision", out.precision));
  return out;
}

}  // namespace

void RunConfig::validate() const {
  chain.validate();
  auto n = static_cast<long>(chain.ion_count);
  if (gate.ion_i < 0 || gate.ion_i >= n || gate.ion_j < 0 || gate.ion_j >= n)
    throw ConfigError("gate ion indices must lie in [0, ion_count)");
  if (gate.ion_i == gate.ion_j)
    throw ConfigError("gate needs two distinct ions");
  if (!(gate.theta_target >= 0.0) || !std::isfinite(gate.theta_target))
    throw ConfigError("theta_target must be a finite angle >= 0");
  if (!(gate.tau >= 0.0) || !std::isfinite(gate.tau))
    throw ConfigError("tau_us must be finite and >= 0");
  if (gate.l_max < 1) throw ConfigError("l_max must be at least 1");
  if (!gate.k_indices.empty()) {
    if (gate.k_indices.size() != chain.ion_count)
      throw ConfigError("k_indices needs one integer per mode");
    int prev = 0;
    for (int k : gate.k_indices) {
      if (k <= prev)
        throw ConfigError(
            "k_indices must be strictly ascending positive integers");
      prev = k;
    }
  }
  if (!(gate.alpha_budget > 0.0))
    throw ConfigError("alpha_budget must be positive");
  if (!windows.mode_windows.empty()) {
    windows.validate();
    if (windows.mode_windows.size() != chain.ion_count)
      throw ConfigError("[engineering] needs one frequency window per mode");
  }
  if (top_m < 1) throw ConfigError("top_m must be at least 1");
  if (sweep.steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!(sweep.delta_omega_min <= sweep.delta_omega_max))
    throw ConfigError("sweep range must have delta_min_hz <= delta_max_hz");
  if (output.precision < 6 || output.precision > 17)
    throw ConfigError("output precision must lie in [6, 17]");
}

double RunConfig::require_tau() const {
  if (gate.tau <= 0.0)
    throw ConfigError("this command needs a gate time: set tau_us in [gate]");
  return gate.tau;
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  FieldMap fields = scan(text, origin);
  RunConfig rc;
  rc.chain = build_chain(fields, origin);
  rc.gate = build_gate(fields, origin);
  build_engineering(fields, origin, rc);
  rc.sweep = build_sweep(fields, origin);
  rc.output = build_output(fields, origin);
  rc.validate();
  return rc;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

modes::ModeSpectrum resolve_spectrum(const RunConfig& config) {
  modes::ModeSpectrum spectrum = modes::solve_chain_modes(config.chain);
  if (config.gate.use_ideal_frequencies) {
    double tau = config.require_tau();
    std::vector<int> k = config.gate.k_indices;
    if (k.empty()) {
      std::vector<double> delta_k;
      gatekernel::assign_k_indices(spectrum, tau, k, delta_k);
    }
    for (std::size_t p = 0; p < spectrum.size(); ++p)
      spectrum.frequencies[p] = 4.0 * k[p] * kPi / tau;
  }
  if (config.gate.coupling_model == CouplingModel::participation) {
    // One common Lamb–Dicke scale at the mean mode frequency, so harmonic
    // selection sees the bare participation geometry without per-mode 1/√ω
    // weighting.
    double mean = 0.0;
    for (double w : spectrum.frequencies) mean += w;
    mean /= static_cast<double>(spectrum.size());
    double scale = config.chain.coupling_wavenumber *
                   std::sqrt(constants::hbar /
                             (2.0 * config.chain.ion_mass * mean));
    spectrum.lamb_dicke = spectrum.participation;
    for (auto& row : spectrum.lamb_dicke)
      for (double& v : row) v *= scale;
  }
  return spectrum;
}

}  // namespace modegate::cli

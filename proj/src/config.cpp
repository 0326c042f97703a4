#include "qdcel/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace qdcel {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int x = 0;
  try {
    x = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

Variant parse_variant(const std::string& v) {
  if (v == "full") return Variant::Full;
  if (v == "sme") return Variant::Sme;
  if (v == "no_phonon") return Variant::NoPhonon;
  throw ConfigError("variant must be full, sme or no_phonon, got '" + v + "'");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::Sme: return "sme";
    case Variant::NoPhonon: return "no_phonon";
  }
  return "sme";
}

CavityTracking parse_tracking(const std::string& v) {
  if (v == "explicit") return CavityTracking::Explicit;
  if (v == "resonant") return CavityTracking::Resonant;
  if (v == "two_photon") return CavityTracking::TwoPhoton;
  throw ConfigError(
      "cavity_tracking must be explicit, resonant or two_photon, got '" + v +
      "'");
}

std::string tracking_name(CavityTracking t) {
  switch (t) {
    case CavityTracking::Explicit: return "explicit";
    case CavityTracking::Resonant: return "resonant";
    case CavityTracking::TwoPhoton: return "two_photon";
  }
  return "resonant";
}

// Accessors for every numeric system key; shared between the key setter,
// the axis registry and the serializer.
using FieldMap = std::map<std::string, double SystemParams::*>;
const FieldMap& double_fields() {
  static const FieldMap m = {
      {"g1", &SystemParams::g1},
      {"g2", &SystemParams::g2},
      {"eta1", &SystemParams::eta1},
      {"eta2", &SystemParams::eta2},
      {"delta_xp", &SystemParams::delta_xp},
      {"delta_yp", &SystemParams::delta_yp},
      {"delta_c1p", &SystemParams::delta_c1p},
      {"delta_c2p", &SystemParams::delta_c2p},
      {"delta_fss", &SystemParams::delta_fss},
      {"kappa1", &SystemParams::kappa1},
      {"kappa2", &SystemParams::kappa2},
      {"gamma1", &SystemParams::gamma1},
      {"gamma2", &SystemParams::gamma2},
      {"gamma1p", &SystemParams::gamma1p},
      {"gamma2p", &SystemParams::gamma2p},
      {"phi1", &SystemParams::phi1},
      {"phi2", &SystemParams::phi2},
  };
  return m;
}

using BathMap = std::map<std::string, double PhononBathParams::*>;
const BathMap& bath_fields() {
  static const BathMap m = {
      {"temperature", &PhononBathParams::temperature},
      {"alpha_p", &PhononBathParams::alpha_p},
      {"omega_b", &PhononBathParams::omega_b},
  };
  return m;
}

void apply_tracking(SystemParams& p, CavityTracking t) {
  if (t == CavityTracking::Explicit) return;
  const double om = p.rabi_omega();
  p.delta_c1p = -om;
  p.delta_c2p = (t == CavityTracking::TwoPhoton) ? om : -om;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

const std::vector<std::string>& known_axes() {
  static const std::vector<std::string> axes = [] {
    std::vector<std::string> a = {"delta_cp_over_g1", "eta_over_g1"};
    for (const auto& [k, f] : double_fields()) a.push_back(k);
    for (const auto& [k, f] : bath_fields()) a.push_back(k);
    std::sort(a.begin(), a.end());
    return a;
  }();
  return axes;
}

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks = {
      "photons", "g2", "populations", "variances",
      "fokker_planck", "rates", "entanglement"};
  return tasks;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    c.system.*(it->second) = parse_double(key, value);
    if (key == "delta_c1p" || key == "delta_c2p")
      c.tracking = CavityTracking::Explicit;
    return;
  }
  if (auto it = bath_fields().find(key); it != bath_fields().end()) {
    c.system.bath.*(it->second) = parse_double(key, value);
    return;
  }
  if (key == "cutoff1") { c.system.cutoff1 = parse_int(key, value); return; }
  if (key == "cutoff2") { c.system.cutoff2 = parse_int(key, value); return; }
  if (key == "pump_detuning_uses_cavity") {
    c.system.pump_detuning_uses_cavity = parse_bool(key, value);
    return;
  }
  if (key == "dephasing_in_no_phonon") {
    c.system.dephasing_in_no_phonon = parse_bool(key, value);
    return;
  }
  if (key == "fp_renormalized_g") {
    c.system.fp_renormalized_g = parse_bool(key, value);
    return;
  }
  if (key == "variant") { c.variant = parse_variant(value); return; }
  if (key == "cavity_tracking") { c.tracking = parse_tracking(value); return; }
  if (key == "sweep_variable") { c.sweep.variable = value; return; }
  if (key == "sweep_start") {
    c.sweep.start = parse_double(key, value);
    return;
  }
  if (key == "sweep_stop") { c.sweep.stop = parse_double(key, value); return; }
  if (key == "sweep_points") {
    c.sweep.points = parse_int(key, value);
    return;
  }
  if (key == "tasks") {
    std::vector<std::string> tasks;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) tasks.push_back(item);
    }
    c.tasks = std::move(tasks);
    return;
  }
  if (key == "output") { c.output = value; return; }
  throw ConfigError("unknown key '" + key + "'");
}

void apply_axis(SystemParams& p, const std::string& variable, double value,
                CavityTracking tracking) {
  if (variable == "delta_cp_over_g1") {
    p.delta_c1p = value * p.g1;
    p.delta_c2p = value * p.g1;
    return;  // an explicit cavity axis overrides tracking
  }
  if (variable == "eta_over_g1") {
    p.eta1 = value * p.g1;
    p.eta2 = value * p.g1;
  } else if (auto it = double_fields().find(variable);
             it != double_fields().end()) {
    p.*(it->second) = value;
    if (variable == "delta_c1p" || variable == "delta_c2p") return;
  } else if (auto it = bath_fields().find(variable);
             it != bath_fields().end()) {
    p.bath.*(it->second) = value;
  } else {
    throw ConfigError("unknown sweep variable '" + variable + "'");
  }
  apply_tracking(p, tracking);
}

void RunConfig::validate() const {
  system.validate();
  if (sweep.points < 1) throw ConfigError("sweep_points must be >= 1");
  const auto& axes = known_axes();
  if (std::find(axes.begin(), axes.end(), sweep.variable) == axes.end())
    throw ConfigError("unknown sweep variable '" + sweep.variable + "'");
  if (tasks.empty()) throw ConfigError("tasks must not be empty");
  const auto& kt = known_tasks();
  for (const auto& t : tasks)
    if (std::find(kt.begin(), kt.end(), t) == kt.end())
      throw ConfigError("unknown task '" + t + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (auto h = s.find('#'); h != std::string::npos) s = trim(s.substr(0, h));
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']') continue;  // cosmetic section
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value, got '" + s + "'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    try {
      apply_key(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " +
                        std::string(e.what()));
    }
  }
  apply_tracking(c.system, c.tracking);
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[system]\n";
  // Stable, human-oriented order rather than map order.
  const char* order[] = {"g1", "g2", "eta1", "eta2", "delta_xp", "delta_yp",
                         "delta_c1p", "delta_c2p", "delta_fss", "kappa1",
                         "kappa2", "gamma1", "gamma2", "gamma1p", "gamma2p",
                         "phi1", "phi2"};
  for (const char* k : order)
    os << k << " = " << fmt(c.system.*(double_fields().at(k))) << "\n";
  os << "cutoff1 = " << c.system.cutoff1 << "\n";
  os << "cutoff2 = " << c.system.cutoff2 << "\n";
  os << "pump_detuning_uses_cavity = "
     << (c.system.pump_detuning_uses_cavity ? "true" : "false") << "\n";
  os << "dephasing_in_no_phonon = "
     << (c.system.dephasing_in_no_phonon ? "true" : "false") << "\n";
  os << "fp_renormalized_g = "
     << (c.system.fp_renormalized_g ? "true" : "false") << "\n";
  os << "\n[bath]\n";
  os << "temperature = " << fmt(c.system.bath.temperature) << "\n";
  os << "alpha_p = " << fmt(c.system.bath.alpha_p) << "\n";
  os << "omega_b = " << fmt(c.system.bath.omega_b) << "\n";
  os << "\n[run]\n";
  os << "variant = " << variant_name(c.variant) << "\n";
  os << "cavity_tracking = " << tracking_name(c.tracking) << "\n";
  os << "sweep_variable = " << c.sweep.variable << "\n";
  os << "sweep_start = " << fmt(c.sweep.start) << "\n";
  os << "sweep_stop = " << fmt(c.sweep.stop) << "\n";
  os << "sweep_points = " << c.sweep.points << "\n";
  std::string tasks;
  for (const auto& t : c.tasks) {
    if (!tasks.empty()) tasks += ",";
    tasks += t;
  }
  os << "tasks = " << tasks << "\n";
  if (!c.output.empty()) os << "output = " << c.output << "\n";
  return os.str();
}

}  // namespace qdcel

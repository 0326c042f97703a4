#pragma once

#include <string>
#include <vector>

#include "qdcel/params.hpp"

namespace qdcel {

// How the cavity detunings follow the swept parameters when they are not
// given explicitly: both at the dressed resonance -Omega, or at the
// two-photon configuration (-Omega, +Omega).
enum class CavityTracking { Explicit, Resonant, TwoPhoton };

struct SweepSpec {
  std::string variable = "delta_cp_over_g1";
  double start = -14.0;
  double stop = -4.0;
  int points = 41;
};

struct RunConfig {
  SystemParams system;
  Variant variant = Variant::Sme;
  CavityTracking tracking = CavityTracking::Resonant;
  SweepSpec sweep;
  std::vector<std::string> tasks = {"photons"};
  std::string output;  // empty -> stdout

  void validate() const;
};

// Flat key = value text; '#' comments and bracketed section headers are
// allowed and ignored.  Unknown keys and out-of-range values are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

// Single key override (the CLI --set flag and figure presets reuse it).
void apply_key(RunConfig& c, const std::string& key, const std::string& value);

// Set the swept variable on a parameter set; value in the axis unit
// (meV for energies, rad for phases, K for temperature, g1 units for the
// *_over_g1 axes).  Cavity tracking is applied afterwards.
void apply_axis(SystemParams& p, const std::string& variable, double value,
                CavityTracking tracking);

const std::vector<std::string>& known_axes();
const std::vector<std::string>& known_tasks();

}  // namespace qdcel

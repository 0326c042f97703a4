#pragma once

#include <cmath>

#include "qdcel/phonon.hpp"
#include "qdcel/types.hpp"

namespace qdcel {

enum class Variant { Full, Sme, NoPhonon };

// All energies in meV.  Defaults are the Fig.-2-style working point:
// g = 0.1 meV, eta = 2 g1, Delta_xp = Delta_yp = -10 g1, kappa = 0.5 g1,
// gamma = gamma' = 0.01 g1, cavities at the dressed-state resonance -Omega.
struct SystemParams {
  double g1 = 0.1, g2 = 0.1;
  double eta1 = 0.2, eta2 = 0.2;
  double delta_xp = -1.0, delta_yp = -1.0;
  double delta_c1p = 0.0, delta_c2p = 0.0;  // set to -Omega by the ctor
  double delta_fss = 0.0;  // informational; detunings are given directly
  double kappa1 = 0.05, kappa2 = 0.05;
  double gamma1 = 0.001, gamma2 = 0.001;
  double gamma1p = 0.001, gamma2p = 0.001;
  double phi1 = 0.0, phi2 = 0.0;
  PhononBathParams bath{};
  int cutoff1 = 4, cutoff2 = 4;

  // Appendix-A delta_ip/Gamma_ip frequency argument: exciton-pump detuning
  // (default) or the literal cavity-pump detuning.
  bool pump_detuning_uses_cavity = false;
  // Re-add pure dephasing to the phonon-free generator for comparisons.
  bool dephasing_in_no_phonon = false;
  // Use <B>-renormalized g in the phonon-dressed Fokker-Planck A-vectors.
  bool fp_renormalized_g = true;

  SystemParams() {
    const double om = rabi_omega();
    delta_c1p = -om;
    delta_c2p = -om;
  }

  // Generalized Rabi frequency of the symmetric pump-dressed block.
  double rabi_omega() const {
    const double d = delta_xp;
    return std::sqrt(d * d + 8.0 * eta1 * eta1);
  }

  double delta1() const { return delta_xp - delta_c1p; }
  double delta2() const { return delta_yp - delta_c2p; }

  void validate() const {
    bath.validate();
    if (kappa1 < 0 || kappa2 < 0 || gamma1 < 0 || gamma2 < 0 ||
        gamma1p < 0 || gamma2p < 0)
      throw ConfigError("decay and dephasing rates must be >= 0");
    if (cutoff1 < 1 || cutoff2 < 1)
      throw ConfigError("photon cutoffs must be >= 1");
  }

  RateInputs rate_inputs() const {
    RateInputs in{};
    in.g1 = g1;
    in.g2 = g2;
    in.eta1 = eta1;
    in.eta2 = eta2;
    in.Delta1 = delta1();
    in.Delta2 = delta2();
    in.Delta1p = delta_xp;
    in.Delta2p = delta_yp;
    in.Delta1p_pump = pump_detuning_uses_cavity ? delta_c1p : delta_xp;
    in.Delta2p_pump = pump_detuning_uses_cavity ? delta_c2p : delta_yp;
    return in;
  }
};

}  // namespace qdcel

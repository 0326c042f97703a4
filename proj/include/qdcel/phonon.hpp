#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qdcel/types.hpp"

namespace qdcel {

struct PhononBathParams {
  double alpha_p = 2.36;     // ps^2, quoted for ordinary-frequency integration
  double omega_b = 1.0;      // meV
  double temperature = 5.0;  // K

  void validate() const {
    if (alpha_p < 0) throw ConfigError("alpha_p must be >= 0");
    if (omega_b <= 0) throw ConfigError("omega_b must be > 0");
    if (temperature < 0) throw ConfigError("temperature must be >= 0");
  }

  bool operator==(const PhononBathParams&) const = default;
};

// J(omega) = alpha_p omega^3 exp(-omega^2 / 2 omega_b^2), omega in rad/ps.
double spectral_density(double omega, const PhononBathParams& p);

// Bath correlation function by adaptive quadrature.  At T=0 coth -> 1.
cplx phi_of_tau(double tau, const PhononBathParams& p, double rel_tol = 1e-9);

double mean_displacement(const PhononBathParams& p);

enum class Kernel { Gg, Gu, Gplus, Gminus };

// Sampled phi, the polaron Green's functions on the tau grid, and a cache of
// half-Fourier transforms K(Delta) = int_0^inf G(tau) exp(i Delta tau) dtau.
class PhononTables {
 public:
  explicit PhononTables(const PhononBathParams& p);

  const PhononBathParams& params() const { return params_; }
  double mean_B() const { return mean_B_; }
  cplx phi0() const { return phi_[0]; }

  const std::vector<double>& tau_grid() const { return tau_; }
  const std::vector<cplx>& phi_samples() const { return phi_; }
  const std::vector<cplx>& kernel_samples(Kernel k) const;

  // Delta in meV; result in ps.
  cplx half_fourier(Kernel k, double delta_meV) const;

  // Composite Simpson of g(tau) exp(i omega tau) on a uniform grid.
  static cplx half_fourier_samples(const std::vector<double>& tau,
                                   const std::vector<cplx>& g,
                                   double omega_radps);

  // Relative Simpson-vs-coarse discrepancy of the last uncached transform.
  double last_refinement_error() const { return refine_err_; }

 private:
  cplx integrate(const std::vector<cplx>& g, double omega_radps) const;

  PhononBathParams params_;
  double mean_B_ = 1.0;
  std::vector<double> tau_;
  std::vector<cplx> phi_, g_g_, g_u_, g_plus_, g_minus_;
  mutable std::map<std::pair<int, long long>, cplx> cache_;
  mutable std::mutex mutex_;
  mutable double refine_err_ = 0;
};

struct PhononRates {
  // Index 0 -> exciton x / mode 1, index 1 -> exciton y / mode 2.
  std::array<double, 2> delta_plus{}, delta_minus{};      // delta_i^+-
  std::array<double, 2> delta_p_plus{}, delta_p_minus{};  // delta_ip^+-
  cplx Omega12{}, Omega21{}, Omega12_p{}, Omega21_p{};
  std::array<double, 2> Gamma_plus{}, Gamma_minus{};      // Gamma_i^+-
  std::array<double, 2> Gamma_p_plus{}, Gamma_p_minus{};  // Gamma_ip^+-
  cplx Gamma12{}, Gamma21{}, Gamma12_p{}, Gamma21_p{};
  std::array<cplx, 2> Lambda_plus{}, Lambda_minus{};      // Lambda_i^+-
  std::array<cplx, 2> Lambda_p_plus{}, Lambda_p_minus{};  // Lambda_ip^+-
  cplx Lambda12_pp{}, Lambda21_pp{}, Lambda12_pm{}, Lambda21_pm{};
  cplx Lambda12p_pp{}, Lambda21p_pp{}, Lambda12p_pm{}, Lambda21p_pm{};
};

struct RateInputs {
  double g1, g2, eta1, eta2;  // meV
  double Delta1, Delta2;      // exciton-cavity detunings, meV
  double Delta1p, Delta2p;    // exciton-pump detunings, meV
  // Frequency used in the pump-assisted delta_ip / Gamma_ip integrals.
  double Delta1p_pump, Delta2p_pump;  // meV
};

// All outputs in rad/ps.
PhononRates compute_rates(const RateInputs& in, const PhononTables& tables);

}  // namespace qdcel

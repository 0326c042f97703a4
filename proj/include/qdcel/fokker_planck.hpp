#pragma once

#include <array>
#include <utility>

#include "qdcel/params.hpp"
#include "qdcel/phonon.hpp"
#include "qdcel/types.hpp"

namespace qdcel {

using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;

// Ordering of the reduced QD vector R and its rate matrix:
// R = (rho_xg, rho_yg, rho_gx, rho_gy, rho_xx, rho_yy, rho_xy, rho_yx),
// with rho_gg eliminated through the trace.
inline constexpr int kXG = 0, kYG = 1, kGX = 2, kGY = 3, kXX = 4, kYY = 5,
                     kXY = 6, kYX = 7;

struct AdiabaticState {
  Mat8 M;       // rad/ps; dR/dt = M R - X
  Vec8 X;       // rad/ps
  Vec8 R0;      // zeroth-order steady solution M R0 = X
  cplx rho_gg;  // closure 1 - rho_xx - rho_yy

  void validate(double tol = 1e-10) const;
};

// alpha[k] = alpha_{1,k+1}, nu[k] = nu_{2,k+1}; all rad/ps. The index
// order follows the eight field-operator orderings of the reduced field
// equation: (rf a1, rf a2, rf a1d, rf a2d, a1 rf, a2 rf, a1d rf, a2d rf).
struct FPCoefficients {
  std::array<cplx, 8> alpha{};
  std::array<cplx, 8> nu{};
};

struct DriftDiffusion {
  double D_phi = 0, D_Phi = 0, D_phiphi = 0, D_PhiPhi = 0;  // rad/ps
  double r1 = 0, r2 = 0, phi = 0, Phi = 0;                  // evaluation point
};

// Phonon-free QD rate matrix and drive vector; R0 is filled by solving
// M R0 = X (throws NumericalError when M is singular).
AdiabaticState build_M_X(const SystemParams& p);

// First-order solve: applies the four resolvents (i w_c - M)^-1 to the
// source vectors built from R0 and reads off the alpha/nu coefficients.
FPCoefficients solve_coefficients(const SystemParams& p,
                                  const AdiabaticState& s, double g1_radps,
                                  double g2_radps);
std::pair<AdiabaticState, FPCoefficients> solve_orders(const SystemParams& p);

DriftDiffusion drift_diffusion(const FPCoefficients& c, double r1, double r2,
                               double phi, double Phi, const SystemParams& p);

// Phonon-dressed pipeline: the QD-restricted generator of the scattering
// master equation (pump-order terms) replaces the bare M and X, and the
// field coupling is renormalized to g<B> when p.fp_renormalized_g is set.
std::pair<AdiabaticState, FPCoefficients> with_phonon_variant(
    const SystemParams& p, const PhononRates& r, double mean_B);

}  // namespace qdcel

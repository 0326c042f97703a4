#include "qdcel/fokker_planck.hpp"

#include <Eigen/LU>
#include <cmath>

#include "qdcel/liouvillian.hpp"
#include "qdcel/operators.hpp"

namespace qdcel {

namespace {

const cplx kI(0.0, 1.0);

Vec8 solve_checked(const Mat8& a, const Vec8& b, const char* what) {
  Eigen::FullPivLU<Mat8> lu(a);
  if (!lu.isInvertible()) throw NumericalError(std::string(what) + " singular");
  Vec8 y = lu.solve(b);
  double scale = std::max(b.norm(), 1e-300);
  if (!((a * y - b).norm() <= 1e-10 * scale))
    throw NumericalError(std::string(what) + " solve failed residual check");
  return y;
}

AdiabaticState finish_state(Mat8 m, Vec8 x) {
  AdiabaticState s;
  s.M = std::move(m);
  s.X = std::move(x);
  s.R0 = solve_checked(s.M, s.X, "QD rate matrix");
  s.rho_gg = 1.0 - s.R0(kXX) - s.R0(kYY);
  return s;
}

}  // namespace

void AdiabaticState::validate(double tol) const {
  if (std::abs(R0(kGX) - std::conj(R0(kXG))) > tol ||
      std::abs(R0(kGY) - std::conj(R0(kYG))) > tol ||
      std::abs(R0(kYX) - std::conj(R0(kXY))) > tol)
    throw NumericalError("adiabatic state breaks Hermiticity");
  for (cplx pop : {R0(kXX), R0(kYY), rho_gg}) {
    if (std::abs(pop.imag()) > tol || pop.real() < -tol ||
        pop.real() > 1.0 + tol)
      throw NumericalError("adiabatic populations out of range");
  }
}

AdiabaticState build_M_X(const SystemParams& p) {
  p.validate();
  const double dx = ang(p.delta_xp), dy = ang(p.delta_yp);
  const double g1 = ang(p.gamma1), g2 = ang(p.gamma2);
  const cplx e1 = kI * ang(p.eta1), e2 = kI * ang(p.eta2);

  Mat8 m = Mat8::Zero();
  m(kXG, kXG) = cplx(-0.5 * g1, -dx);
  m(kXG, kXX) = 2.0 * e1;
  m(kXG, kYY) = e1;
  m(kXG, kXY) = e2;
  m(kYG, kYG) = cplx(-0.5 * g2, -dy);
  m(kYG, kXX) = e2;
  m(kYG, kYY) = 2.0 * e2;
  m(kYG, kYX) = e1;
  m(kGX, kGX) = cplx(-0.5 * g1, dx);
  m(kGX, kXX) = -2.0 * e1;
  m(kGX, kYY) = -e1;
  m(kGX, kYX) = -e2;
  m(kGY, kGY) = cplx(-0.5 * g2, dy);
  m(kGY, kXX) = -e2;
  m(kGY, kYY) = -2.0 * e2;
  m(kGY, kXY) = -e1;
  m(kXX, kXG) = e1;
  m(kXX, kGX) = -e1;
  m(kXX, kXX) = -g1;
  m(kYY, kYG) = e2;
  m(kYY, kGY) = -e2;
  m(kYY, kYY) = -g2;
  m(kXY, kXG) = e2;
  m(kXY, kGY) = -e1;
  m(kXY, kXY) = cplx(-0.5 * (g1 + g2), -(dx - dy));
  m(kYX, kYG) = e1;
  m(kYX, kGX) = -e2;
  m(kYX, kYX) = cplx(-0.5 * (g1 + g2), dx - dy);

  Vec8 x = Vec8::Zero();
  x(kXG) = e1;
  x(kYG) = e2;
  x(kGX) = -e1;
  x(kGY) = -e2;
  return finish_state(std::move(m), std::move(x));
}

FPCoefficients solve_coefficients(const SystemParams& p,
                                  const AdiabaticState& s, double g1_radps,
                                  double g2_radps) {
  const cplx mi1 = -kI * g1_radps, mi2 = -kI * g2_radps;
  const cplx pi1 = kI * g1_radps, pi2 = kI * g2_radps;
  const Vec8& r0 = s.R0;
  const cplx gg = s.rho_gg;

  // Source vectors per field-operator ordering, grouped by the rotating
  // phase they carry: {-dc1p, -dc2p, +dc1p, +dc2p}.
  std::array<Vec8, 8> src;
  for (Vec8& v : src) v.setZero();
  // rf a1
  src[0](kXG) = pi1 * r0(kXX);
  src[0](kYG) = pi1 * r0(kYX);
  // rf a2
  src[1](kXG) = pi2 * r0(kXY);
  src[1](kYG) = pi2 * r0(kYY);
  // rf a1d
  src[2](kGX) = pi1 * gg;
  src[2](kXX) = pi1 * r0(kXG);
  src[2](kYX) = pi1 * r0(kYG);
  // rf a2d
  src[3](kGY) = pi2 * gg;
  src[3](kYY) = pi2 * r0(kYG);
  src[3](kXY) = pi2 * r0(kXG);
  // a1 rf
  src[4](kXG) = mi1 * gg;
  src[4](kXX) = mi1 * r0(kGX);
  src[4](kXY) = mi1 * r0(kGY);
  // a2 rf
  src[5](kYG) = mi2 * gg;
  src[5](kYY) = mi2 * r0(kGY);
  src[5](kYX) = mi2 * r0(kGX);
  // a1d rf
  src[6](kGX) = mi1 * r0(kXX);
  src[6](kGY) = mi1 * r0(kXY);
  // a2d rf
  src[7](kGX) = mi2 * r0(kYX);
  src[7](kGY) = mi2 * r0(kYY);

  const double omega[4] = {-ang(p.delta_c1p), -ang(p.delta_c2p),
                           ang(p.delta_c1p), ang(p.delta_c2p)};
  const int group[8] = {0, 1, 2, 3, 0, 1, 2, 3};

  FPCoefficients c;
  for (int k = 0; k < 8; ++k) {
    Mat8 a = kI * omega[group[k]] * Mat8::Identity() - s.M;
    Vec8 y = solve_checked(a, src[k], "resolvent (cavity detuning resonance)");
    c.alpha[k] = kI * g1_radps * y(kXG);
    c.nu[k] = kI * g2_radps * y(kYG);
  }
  return c;
}

std::pair<AdiabaticState, FPCoefficients> solve_orders(const SystemParams& p) {
  AdiabaticState s = build_M_X(p);
  FPCoefficients c = solve_coefficients(p, s, ang(p.g1), ang(p.g2));
  return {std::move(s), std::move(c)};
}

DriftDiffusion drift_diffusion(const FPCoefficients& c, double r1, double r2,
                               double phi, double Phi, const SystemParams& p) {
  if (!(r1 > 0) || !(r2 > 0))
    throw ConfigError("field amplitudes must be positive");
  const auto& a = c.alpha;
  const auto& n = c.nu;
  const cplx em = std::exp(-kI * phi), ep = std::exp(kI * phi);
  const cplx e2P = std::exp(-2.0 * kI * Phi);
  const cplx ea = e2P * em;  // e^{-i(2Phi+phi)}
  const cplx eb = e2P * ep;  // e^{-i(2Phi-phi)}
  const double q1 = r2 / r1, q2 = r1 / r2;
  const double s11 = 1.0 / (r1 * r1), s22 = 1.0 / (r2 * r2),
               s12 = 1.0 / (r1 * r2);

  cplx sphi = (a[0] - n[1]) + (a[1] * q1 * em - n[0] * q2 * ep) -
              (a[1] * s12 * em - n[0] * s12 * ep) + (a[2] * ea - n[3] * eb) +
              (a[3] * q1 - n[2] * q2) * e2P + (a[4] - n[5]) +
              (a[5] * q1 * em - n[4] * q2 * ep) + (a[6] * ea - n[7] * eb) -
              1.5 * (a[6] * s11 * ea - n[7] * s22 * eb) +
              (a[7] * q1 - n[6] * q2) * e2P;

  cplx sPhi = (a[0] + n[1]) + (a[1] * q1 * em + n[0] * q2 * ep) +
              (a[2] * ea + n[3] * eb) + (a[3] * q1 + n[2] * q2) * e2P +
              (a[4] + n[5]) + (a[5] * q1 * em + n[4] * q2 * ep) +
              (a[6] * ea + n[7] * eb) -
              1.5 * (a[6] * s11 * ea + n[7] * s22 * eb) +
              (a[7] * q1 + n[6] * q2) * e2P - (a[7] + n[6]) * s12 * e2P;

  cplx spp = -(a[0] * s11 + n[1] * s22) + (a[1] * em + n[0] * ep) * s12 +
             (a[6] * s11 * ea + n[7] * s22 * eb) - (a[7] + n[6]) * s12 * e2P;

  cplx sPP = -(a[0] * s11 + n[1] * s22) - (a[1] * em + n[0] * ep) * s12 +
             (a[6] * s11 * ea + n[7] * s22 * eb) + (a[7] + n[6]) * s12 * e2P;

  DriftDiffusion d;
  d.r1 = r1;
  d.r2 = r2;
  d.phi = phi;
  d.Phi = Phi;
  // X - i/2 S + H.C. (H.C. on the coefficient sum only) = X + Im S, etc.
  d.D_phi = ang(p.delta_c1p) - ang(p.delta_c2p) + sphi.imag();
  d.D_Phi = 0.5 * (ang(p.delta_c1p) + ang(p.delta_c2p)) + 0.5 * sPhi.imag();
  d.D_phiphi = 0.5 * spp.real();
  d.D_PhiPhi = 0.125 * sPP.real();
  return d;
}

std::pair<AdiabaticState, FPCoefficients> with_phonon_variant(
    const SystemParams& p, const PhononRates& r, double mean_B) {
  // QD-restricted generator: the scattering master equation with the field
  // coupling switched off and the field-scattering rates zeroed.  The pump
  // terms and the Stark shifts (through <a a^dag> = 1, <a^dag a> = 0 on the
  // photon vacuum) survive; the vacuum sub-block is then closed under the
  // remaining dynamics.
  SystemParams q = p;
  q.cutoff1 = q.cutoff2 = 1;
  q.g1 = q.g2 = 0.0;
  PhononRates rr = r;
  rr.Gamma_plus = rr.Gamma_minus = {0.0, 0.0};
  rr.Gamma12 = rr.Gamma21 = 0.0;
  rr.Omega12 = 0.0;
  rr.Lambda_plus = {cplx(0.0), cplx(0.0)};
  rr.Lambda12_pp = rr.Lambda21_pp = 0.0;
  rr.Lambda12_pm = rr.Lambda21_pm = 0.0;
  GeneratorBundle gen = build_sme(q, rr, mean_B);

  DnMat ld = DnMat(gen.L.mat);
  const SpaceLayout l = gen.layout;
  const int d = l.dim();
  // column-stacked vec index of the vacuum QD element (q, q')
  auto v = [&](int i, int j) { return l.index(i, 0, 0) + d * l.index(j, 0, 0); };
  const int g = SpaceLayout::kG, x = SpaceLayout::kX, y = SpaceLayout::kY;
  const int ridx[8] = {v(x, g), v(y, g), v(g, x), v(g, y),
                       v(x, x), v(y, y), v(x, y), v(y, x)};
  const int vgg = v(g, g);

  Mat8 m;
  Vec8 xv;
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      m(row, col) = ld(ridx[row], ridx[col]);
      if (col == kXX || col == kYY) m(row, col) -= ld(ridx[row], vgg);
    }
    xv(row) = -ld(ridx[row], vgg);
  }

  AdiabaticState s = finish_state(std::move(m), std::move(xv));
  const double b = p.fp_renormalized_g ? mean_B : 1.0;
  FPCoefficients c = solve_coefficients(p, s, b * ang(p.g1), b * ang(p.g2));
  return {std::move(s), std::move(c)};
}

}  // namespace qdcel

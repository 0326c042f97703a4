#include "qdcel/observables.hpp"

#include <cmath>

namespace qdcel {

cplx expect(const Operator& o, const DensityMatrix& rho) {
  if (o.layout != rho.layout)
    throw LayoutMismatch("expect: operator/state layouts differ");
  return (o.mat * rho.rho).eval().trace();
}

double mean_photons(const DensityMatrix& rho, int mode_index) {
  Operator a = make_annihilation(rho.layout, mode_index);
  return expect(a.adjoint() * a, rho).real();
}

cplx mode_coherence(const DensityMatrix& rho) {
  Operator a1 = make_annihilation(rho.layout, 1);
  Operator a2 = make_annihilation(rho.layout, 2);
  return expect(a1.adjoint() * a2, rho);
}

cplx exciton_coherence(const DensityMatrix& rho) {
  Operator s1p = make_qd_sigma(rho.layout, Exciton::X, LadderSign::Plus);
  Operator s2m = make_qd_sigma(rho.layout, Exciton::Y, LadderSign::Minus);
  return expect(s1p * s2m, rho);
}

double g2_zero(const DensityMatrix& rho, int i, int j) {
  Operator ai = make_annihilation(rho.layout, i);
  Operator aj = make_annihilation(rho.layout, j);
  double ni = expect(ai.adjoint() * ai, rho).real();
  double nj = expect(aj.adjoint() * aj, rho).real();
  if (ni <= 0 || nj <= 0)
    throw UndefinedValue("g2 undefined: empty mode");
  cplx num = expect(ai.adjoint() * (aj.adjoint() * (ai * aj)), rho);
  return num.real() / (ni * nj);
}

Operator quadrature_operator(SpaceLayout layout, Quadrature which, double phi1,
                             double phi2) {
  Operator a1 = make_annihilation(layout, 1);
  Operator a2 = make_annihilation(layout, 2);
  cplx e1(std::cos(phi1), std::sin(phi1)), e2(std::cos(phi2), std::sin(phi2));
  switch (which) {
    case Quadrature::Phi:
      return (cplx(0, 0.5) * e1) * a1.adjoint() +
             (cplx(0, -0.5) * std::conj(e1)) * a1 +
             (cplx(0, -0.5) * e2) * a2.adjoint() +
             (cplx(0, 0.5) * std::conj(e2)) * a2;
    case Quadrature::PhiAvg:
      return (cplx(0, 0.25) * e1) * a1.adjoint() +
             (cplx(0, -0.25) * std::conj(e1)) * a1 +
             (cplx(0, 0.25) * e2) * a2.adjoint() +
             (cplx(0, -0.25) * std::conj(e2)) * a2;
    case Quadrature::R:
      return (0.5 * e1) * a1.adjoint() + (0.5 * std::conj(e1)) * a1 +
             (-0.5 * e2) * a2.adjoint() + (-0.5 * std::conj(e2)) * a2;
    default:  // RAvg
      return (0.25 * e1) * a1.adjoint() + (0.25 * std::conj(e1)) * a1 +
             (0.25 * e2) * a2.adjoint() + (0.25 * std::conj(e2)) * a2;
  }
}

double quadrature_variance(const DensityMatrix& rho, Quadrature which,
                           double phi1, double phi2) {
  Operator b = quadrature_operator(rho.layout, which, phi1, phi2);
  DnMat herm = 0.5 * (rho.rho + rho.rho.adjoint());
  DensityMatrix hr{rho.layout, herm};
  double mean = expect(b, hr).real();
  double second = expect(b * b, hr).real();
  return second - mean * mean;
}

double dressed_mixing_angle(const SystemParams& p) {
  if (std::abs(p.eta1 - p.eta2) > 1e-12 * std::max(1.0, std::abs(p.eta1)))
    throw ConfigError("dressed states require eta1 == eta2");
  return 0.5 * std::atan2(2.0 * std::sqrt(2.0) * p.eta1, p.delta_xp);
}

DressedPopulations dressed_populations(const DensityMatrix& rho,
                                       const SystemParams& p) {
  const double alpha = dressed_mixing_angle(p);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const SpaceLayout& l = rho.layout;

  // QD reduced density matrix.
  DnMat qd = DnMat::Zero(3, 3);
  for (int q = 0; q < 3; ++q)
    for (int r = 0; r < 3; ++r)
      for (int n = 0; n < l.dim1(); ++n)
        for (int m = 0; m < l.dim2(); ++m)
          qd(q, r) += rho.rho(l.index(q, n, m), l.index(r, n, m));

  const double inv = 1.0 / std::sqrt(2.0);
  DnVec plus(3), minus_(3), psi_p(3), psi_0(3), psi_m(3);
  plus << 0, inv, inv;    // (|x> + |y>)/sqrt(2) in (g, x, y) ordering
  minus_ << 0, inv, -inv;
  psi_p = ca * plus;
  psi_p(0) += sa;
  psi_0 = minus_;
  psi_m = -sa * plus;
  psi_m(0) += ca;

  auto pop = [&](const DnVec& v) {
    return (v.cast<cplx>().adjoint() * qd * v.cast<cplx>())(0, 0).real();
  };
  return {pop(psi_p), pop(psi_0), pop(psi_m)};
}

double dgcz_witness(const DensityMatrix& rho, double phi1, double phi2) {
  const SpaceLayout& l = rho.layout;
  Operator a1 = make_annihilation(l, 1);
  Operator a2 = make_annihilation(l, 2);
  cplx e1(std::cos(phi1), -std::sin(phi1)), e2(std::cos(phi2), -std::sin(phi2));
  const double inv = 1.0 / std::sqrt(2.0);
  Operator x1 = (inv * e1) * a1.adjoint() + (inv * std::conj(e1)) * a1;
  Operator x2 = (inv * e2) * a2.adjoint() + (inv * std::conj(e2)) * a2;
  Operator p1 = (cplx(0, inv) * e1) * a1.adjoint() +
                (cplx(0, -inv) * std::conj(e1)) * a1;
  Operator p2 = (cplx(0, inv) * e2) * a2.adjoint() +
                (cplx(0, -inv) * std::conj(e2)) * a2;
  Operator u = x1 + x2, v = p1 - p2;

  DnMat herm = 0.5 * (rho.rho + rho.rho.adjoint());
  DensityMatrix hr{rho.layout, herm};
  auto var = [&](const Operator& o) {
    double mean = expect(o, hr).real();
    return expect(o * o, hr).real() - mean * mean;
  };
  return var(u) + var(v);
}

}  // namespace qdcel

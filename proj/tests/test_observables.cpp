#include <cmath>
#include <random>

#include "doctest.h"
#include "qdcel/observables.hpp"

using namespace qdcel;

namespace {

// |g> (x) |alpha1> (x) |alpha2>, truncated.
DensityMatrix coherent_product(SpaceLayout l, cplx alpha1, cplx alpha2) {
  DnVec psi = DnVec::Zero(l.dim());
  auto amp = [](cplx a, int n) {
    cplx c = std::exp(-0.5 * std::norm(a));
    for (int k = 1; k <= n; ++k) c *= a / std::sqrt(double(k));
    return c;
  };
  for (int n = 0; n < l.dim1(); ++n)
    for (int m = 0; m < l.dim2(); ++m)
      psi(l.index(SpaceLayout::kG, n, m)) = amp(alpha1, n) * amp(alpha2, m);
  psi /= psi.norm();
  return {l, DnMat(psi * psi.adjoint())};
}

DensityMatrix random_product_state(SpaceLayout l, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  DnVec f1 = DnVec::Zero(l.dim1()), f2 = DnVec::Zero(l.dim2());
  // keep weight away from the truncation edge
  for (int n = 0; n + 1 < l.dim1(); ++n)
    f1(n) = cplx(nd(gen), nd(gen)) / (1.0 + 3.0 * n * n);
  for (int m = 0; m + 1 < l.dim2(); ++m)
    f2(m) = cplx(nd(gen), nd(gen)) / (1.0 + 3.0 * m * m);
  f1.normalize();
  f2.normalize();
  DnVec psi = DnVec::Zero(l.dim());
  for (int n = 0; n < l.dim1(); ++n)
    for (int m = 0; m < l.dim2(); ++m)
      psi(l.index(SpaceLayout::kG, n, m)) = f1(n) * f2(m);
  return {l, DnMat(psi * psi.adjoint())};
}

}  // namespace

TEST_CASE("basic expectations on Fock states") {
  SpaceLayout l(2, 2);
  DensityMatrix rho(l);
  rho.rho(l.index(SpaceLayout::kX, 1, 0), l.index(SpaceLayout::kX, 1, 0)) = 1.0;
  CHECK(mean_photons(rho, 1) == doctest::Approx(1.0));
  CHECK(mean_photons(rho, 2) == doctest::Approx(0.0));
  CHECK(std::abs(mode_coherence(rho)) < 1e-14);
  Operator s1p = make_qd_sigma(l, Exciton::X, LadderSign::Plus);
  Operator s1m = make_qd_sigma(l, Exciton::X, LadderSign::Minus);
  CHECK(expect(s1p * s1m, rho).real() == doctest::Approx(1.0));
}

TEST_CASE("g2 values") {
  SpaceLayout l(2, 2);
  DensityMatrix fock(l);
  fock.rho(l.index(0, 1, 1), l.index(0, 1, 1)) = 1.0;  // |g,1,1>
  CHECK(g2_zero(fock, 1, 1) == doctest::Approx(0.0));
  CHECK(g2_zero(fock, 1, 2) == doctest::Approx(1.0));
  DensityMatrix vac = ground_state(l);
  CHECK_THROWS_AS(g2_zero(vac, 1, 1), UndefinedValue);

  SpaceLayout big(10, 1);
  DensityMatrix coh = coherent_product(big, 0.7, 0.0);
  CHECK(g2_zero(coh, 1, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("vacuum quadrature variances are exact") {
  for (int c : {1, 3}) {
    SpaceLayout l(c, c);
    DensityMatrix vac = ground_state(l);
    for (double phi1 : {0.0, 1.1}) {
      CHECK(std::abs(quadrature_variance(vac, Quadrature::Phi, phi1, 0) - 0.5) <
            1e-12);
      CHECK(std::abs(quadrature_variance(vac, Quadrature::R, phi1, 0) - 0.5) <
            1e-12);
      CHECK(std::abs(quadrature_variance(vac, Quadrature::PhiAvg, phi1, 0) -
                     0.125) < 1e-12);
      CHECK(std::abs(quadrature_variance(vac, Quadrature::RAvg, phi1, 0) -
                     0.125) < 1e-12);
    }
  }
}

TEST_CASE("coherent states keep vacuum variances and witness") {
  SpaceLayout l(12, 12);
  DensityMatrix coh = coherent_product(l, 0.8, cplx(0.3, -0.5));
  CHECK(quadrature_variance(coh, Quadrature::Phi, 0.4, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(quadrature_variance(coh, Quadrature::PhiAvg, 0.4, 0.0) ==
        doctest::Approx(0.125).epsilon(1e-6));
  CHECK(dgcz_witness(coh, 0.7, -0.2) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("phase covariance of the relative-phase variance") {
  SpaceLayout l(6, 6);
  DensityMatrix coh = coherent_product(l, 0.5, 0.4);
  double a = quadrature_variance(coh, Quadrature::Phi, 0.3, 0.9);
  double b = quadrature_variance(coh, Quadrature::Phi, 0.3 + M_PI, 0.9 + M_PI);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("DGCZ bound for product states") {
  SpaceLayout l(6, 6);
  CHECK(dgcz_witness(ground_state(l), 0.0, 0.0) == doctest::Approx(2.0));
  for (unsigned s = 0; s < 100; ++s) {
    double w = dgcz_witness(random_product_state(l, s), 0.2 * s, -0.1 * s);
    CHECK(w >= 2.0 - 1e-8);
  }
}

TEST_CASE("dressed populations") {
  SystemParams p;
  SpaceLayout l(1, 1);
  DensityMatrix g = ground_state(l);
  DressedPopulations dp = dressed_populations(g, p);
  double alpha = dressed_mixing_angle(p);
  CHECK(dp.p_plus == doctest::Approx(std::sin(alpha) * std::sin(alpha)));
  CHECK(dp.p_zero == doctest::Approx(0.0));
  CHECK(dp.p_minus == doctest::Approx(std::cos(alpha) * std::cos(alpha)));
  CHECK(dp.p_plus + dp.p_zero + dp.p_minus == doctest::Approx(1.0));

  SystemParams bad = p;
  bad.eta2 = 0.5;
  CHECK_THROWS_AS(dressed_populations(g, bad), ConfigError);
}

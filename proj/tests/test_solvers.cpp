#include <cmath>

#include "doctest.h"
#include "qdcel/liouvillian.hpp"
#include "qdcel/observables.hpp"
#include "qdcel/solvers.hpp"

using namespace qdcel;

namespace {

// kappa-decay-only generator on the given layout.
Superoperator decay_only(SpaceLayout l, double kappa_radps) {
  Operator a1 = make_annihilation(l, 1);
  SpMat m = SpMat(-0.5 * kappa_radps * lindblad_term(a1).mat);
  return {l, std::move(m)};
}

}  // namespace

TEST_CASE("decay-only steady state is vacuum") {
  SystemParams p;
  p.g1 = p.g2 = p.eta1 = p.eta2 = 0.0;
  p.cutoff1 = 3;
  p.cutoff2 = 2;
  GeneratorBundle gen = build_no_phonon(p);
  SteadyStateReport rep = steady_state(gen.L);
  CHECK(rep.residual < 1e-12);
  CHECK((rep.rho.rho - ground_state(gen.layout).rho).norm() < 1e-10);

  // a generator with a conserved subspace is rejected, not silently solved
  CHECK_THROWS_AS(steady_state(decay_only(SpaceLayout(3, 2), 1.0)),
                  NumericalError);
}

TEST_CASE("evolve reproduces exponential photon decay") {
  SpaceLayout l(4, 1);
  const double kappa = 0.8;
  Superoperator L = decay_only(l, kappa);
  DensityMatrix rho0(l);
  rho0.rho(l.index(0, 3, 0), l.index(0, 3, 0)) = 1.0;  // |g,3,0>
  const double t = 1.7;
  DensityMatrix rho = evolve(L, rho0, t, 1e-10, 1e-14);
  double n = mean_photons(rho, 1);
  CHECK(n == doctest::Approx(3.0 * std::exp(-kappa * t)).epsilon(1e-6));
  CHECK(std::abs(rho.rho.trace() - 1.0) < 1e-8);
}

TEST_CASE("evolve with L = 0 is the identity") {
  SpaceLayout l(1, 1);
  Superoperator L(l);
  DensityMatrix rho0 = ground_state(l);
  DensityMatrix rho = evolve(L, rho0, 5.0);
  CHECK((rho.rho - rho0.rho).norm() < 1e-12);
}

TEST_CASE("Hamiltonian-only generator keeps commuting populations fixed") {
  SpaceLayout l(2, 1);
  Operator n1 = make_annihilation(l, 1).adjoint() * make_annihilation(l, 1);
  Superoperator L = hamiltonian_commutator(cplx(1.3) * n1);
  DensityMatrix rho0(l);
  rho0.rho(l.index(0, 1, 0), l.index(0, 1, 0)) = 0.4;
  rho0.rho(l.index(0, 0, 0), l.index(0, 0, 0)) = 0.6;
  DensityMatrix rho = evolve(L, rho0, 3.0);
  CHECK((rho.rho - rho0.rho).norm() < 1e-8);
}

TEST_CASE("steady state matches long-time propagation for the SME") {
  SystemParams p;
  p.cutoff1 = p.cutoff2 = 2;
  PhononTables tab(p.bath);
  PhononRates r = compute_rates(p.rate_inputs(), tab);
  GeneratorBundle gen = build_sme(p, r, tab.mean_B());
  SteadyStateReport rep = steady_state(gen.L);
  const double t_final = 200.0 / ang(p.kappa1);
  DensityMatrix prop = evolve(gen.L, ground_state(gen.layout), t_final, 1e-9);
  // trace distance via eigenvalues of the difference
  DnMat diff = 0.5 * (rep.rho.rho - prop.rho +
                      (rep.rho.rho - prop.rho).adjoint());
  Eigen::SelfAdjointEigenSolver<DnMat> es(diff, Eigen::EigenvaluesOnly);
  CHECK(0.5 * es.eigenvalues().cwiseAbs().sum() < 1e-6);
}

TEST_CASE("mode symmetry of the steady state") {
  SystemParams p;
  p.cutoff1 = p.cutoff2 = 3;
  PhononTables tab(p.bath);
  PhononRates r = compute_rates(p.rate_inputs(), tab);
  SteadyStateReport rep = steady_state(build_sme(p, r, tab.mean_B()).L);
  double n1 = mean_photons(rep.rho, 1), n2 = mean_photons(rep.rho, 2);
  CHECK(std::abs(n1 - n2) / n1 < 1e-8);
}

TEST_CASE("auto_cutoff on a decay-only system converges immediately") {
  auto builder = [](int c) {
    SystemParams p;
    p.g1 = p.g2 = p.eta1 = p.eta2 = 0.0;
    p.cutoff1 = p.cutoff2 = c;
    return build_no_phonon(p).L;
  };
  auto obs = [](const DensityMatrix& rho) { return mean_photons(rho, 1); };
  AutoCutoffResult res = auto_cutoff(builder, obs, 1e-2, 1, 12);
  CHECK(res.cutoff <= 2);
  CHECK(res.report.residual < 1e-10);
  CHECK_THROWS_AS(auto_cutoff(builder, obs, -1.0), ConfigError);
}

TEST_CASE("auto_cutoff converges for the desk SME and logs shrinkage") {
  SystemParams p;
  PhononTables tab(p.bath);
  PhononRates r = compute_rates(p.rate_inputs(), tab);
  auto builder = [&](int c) {
    SystemParams q = p;
    q.cutoff1 = q.cutoff2 = c;
    return build_sme(q, r, tab.mean_B()).L;
  };
  auto obs = [](const DensityMatrix& rho) { return mean_photons(rho, 1); };
  AutoCutoffResult res = auto_cutoff(builder, obs, 1e-2, 2, 8);
  CHECK(res.cutoff <= 8);
  CHECK(res.last_change < 1e-2);
}

#include "qdcel/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <vector>

namespace qdcel {

void DensityMatrix::validate(double herm_tol, double trace_tol,
                             double eig_floor) const {
  if ((rho - rho.adjoint()).norm() > herm_tol)
    throw NumericalError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > trace_tol)
    throw NumericalError("density matrix trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<DnMat> es(0.5 * (rho + rho.adjoint()),
                                          Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < eig_floor)
    throw NumericalError("density matrix has a negative eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix ground_state(SpaceLayout layout) {
  DensityMatrix r(layout);
  r.rho(layout.index(SpaceLayout::kG, 0, 0),
        layout.index(SpaceLayout::kG, 0, 0)) = 1.0;
  return r;
}

SteadyStateReport steady_state(const Superoperator& L, double residual_tol,
                               double eig_floor) {
  const int d = L.layout.dim();
  const int n = d * d;

  // Bordered system: replace row 0 with the trace constraint Tr rho = 1.
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(L.mat.nonZeros() + d);
  for (int k = 0; k < L.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(L.mat, k); it; ++it)
      if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < d; ++i) t.emplace_back(0, i + i * d, 1.0);
  SpMat a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

  DnVec b = DnVec::Zero(n);
  b(0) = 1.0;
  DnVec x;
  bool solved = false;

  // Dense-ish generators (the full polaron ME) make direct sparse LU fill
  // in badly; an incomplete-LU preconditioned Krylov solve is much faster
  // there.  Fall back to direct LU when it does not converge.
  if (n > 2000 && a.nonZeros() > 50ll * n) {
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<cplx>> it;
    it.preconditioner().setDroptol(1e-4);
    it.preconditioner().setFillfactor(20);
    it.setTolerance(1e-14);
    it.compute(a);
    if (it.info() == Eigen::Success) {
      x = it.solve(b);
      solved = (a * x - b).norm() < 1e-10;
    }
  }
  if (!solved) {
    Eigen::SparseLU<SpMat> lu(a);
    if (lu.info() != Eigen::Success)
      throw NumericalError(
          "steady-state factorization failed (singular generator; possibly "
          "degenerate steady states)");
    x = lu.solve(b);
    if (lu.info() != Eigen::Success)
      throw NumericalError("steady-state solve failed");
  }

  DnMat rho = Eigen::Map<DnMat>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();

  SteadyStateReport rep{DensityMatrix{L.layout, rho}};
  Eigen::Map<const DnVec> v(rho.data(), n);
  rep.residual = (L.mat * v).norm();
  if (!(rep.residual < residual_tol))
    throw NumericalError("steady-state residual " +
                         std::to_string(rep.residual) +
                         " above tolerance (degenerate or ill-conditioned)");
  rep.rho.validate(1e-10, 1e-10, eig_floor);
  return rep;
}

DensityMatrix evolve(const Superoperator& L, const DensityMatrix& rho0,
                     double t_final, double rel_tol, double abs_tol) {
  if (rho0.layout != L.layout) throw LayoutMismatch("evolve: layout mismatch");
  const int n = L.layout.vec_dim();
  DnVec y = Eigen::Map<const DnVec>(rho0.rho.data(), n);
  auto f = [&](const DnVec& v) -> DnVec { return L.mat * v; };

  // Dormand-Prince 5(4) coefficients.
  static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
  static const double a51 = 19372. / 6561, a52 = -25360. / 2187,
                      a53 = 64448. / 6561, a54 = -212. / 729;
  static const double a61 = 9017. / 3168, a62 = -355. / 33,
                      a63 = 46732. / 5247, a64 = 49. / 176,
                      a65 = -5103. / 18656;
  static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192,
                      b5 = -2187. / 6784, b6 = 11. / 84;
  static const double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920,
                      e5 = -17253. / 339200, e6 = 22. / 525, e7 = -1. / 40;

  double t = 0;
  double norm_L = 1e-12;
  for (int k = 0; k < L.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(L.mat, k); it; ++it)
      norm_L = std::max(norm_L, std::abs(it.value()));
  double h = std::min(t_final, 0.1 / norm_L);
  DnVec k1 = f(y);
  while (t < t_final) {
    h = std::min(h, t_final - t);
    DnVec k2 = f(y + h * (a21 * k1));
    DnVec k3 = f(y + h * (a31 * k1 + a32 * k2));
    DnVec k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    DnVec k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    DnVec k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    DnVec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    DnVec k7 = f(ynew);
    DnVec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double scale = abs_tol + rel_tol * std::max(y.norm(), ynew.norm());
    double enorm = err.norm() / scale;
    if (enorm <= 1.0) {
      t += h;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
    }
    double factor = 0.9 * std::pow(std::max(enorm, 1e-10), -0.2);
    h *= std::clamp(factor, 0.2, 5.0);
    if (h < 1e-14 * t_final)
      throw NumericalError("evolve: step size underflow at t=" +
                           std::to_string(t));
  }
  const int d = L.layout.dim();
  return {L.layout, DnMat(Eigen::Map<DnMat>(y.data(), d, d))};
}

AutoCutoffResult auto_cutoff(
    const std::function<Superoperator(int cutoff)>& builder,
    const std::function<double(const DensityMatrix&)>& observable,
    double rel_tol, int start, int cap) {
  if (rel_tol <= 0) throw ConfigError("auto_cutoff: rel_tol must be > 0");
  double prev = 0;
  bool have_prev = false;
  for (int c = start; c <= cap; ++c) {
    SteadyStateReport rep = steady_state(builder(c));
    double obs = observable(rep.rho);
    if (have_prev) {
      double change = std::abs(obs - prev) /
                      std::max(std::abs(obs), 1e-300);
      if (change < rel_tol)
        return {c, std::move(rep), change};
    }
    prev = obs;
    have_prev = true;
  }
  throw NumericalError("auto_cutoff: no convergence up to cutoff " +
                       std::to_string(cap));
}

}  // namespace qdcel

#include "qdcel/rate_equations.hpp"

#include <Eigen/SparseLU>
#include <cmath>

namespace qdcel {

namespace {

// Decode a vectorized index into bra/ket QD and photon labels.
struct VecLabel {
  int q, n, m, qp, np, mp;
};

VecLabel decode(const SpaceLayout& l, int k) {
  const int d = l.dim();
  int i = k % d, j = k / d;
  auto split = [&](int idx, int& q, int& n, int& m) {
    m = idx % l.dim2();
    idx /= l.dim2();
    n = idx % l.dim1();
    q = idx / l.dim1();
  };
  VecLabel v;
  split(i, v.q, v.n, v.m);
  split(j, v.qp, v.np, v.mp);
  return v;
}

}  // namespace

SectorFlows sector_flows(const Superoperator& L, const DensityMatrix& rho_ss,
                         double kappa1_radps, double kappa2_radps) {
  if (!(L.layout == rho_ss.layout))
    throw LayoutMismatch("generator and state layouts differ");
  const SpaceLayout l = L.layout;
  const int d = l.dim(), D = d * d;
  const int n1 = l.dim1(), n2 = l.dim2();

  // P space: both sides share the photon sector; Q space: the rest.
  std::vector<int> qpos(D, -1);
  std::vector<int> qidx;
  qidx.reserve(D);
  for (int k = 0; k < D; ++k) {
    VecLabel v = decode(l, k);
    if (v.n != v.np || v.m != v.mp) {
      qpos[k] = int(qidx.size());
      qidx.push_back(k);
    }
  }
  const int nq = int(qidx.size());

  SpMat qlq(nq, nq);
  {
    std::vector<Eigen::Triplet<cplx>> t;
    for (int col = 0; col < L.mat.outerSize(); ++col) {
      if (qpos[col] < 0) continue;
      for (SpMat::InnerIterator it(L.mat, col); it; ++it)
        if (qpos[it.row()] >= 0)
          t.emplace_back(qpos[it.row()], qpos[col], it.value());
    }
    qlq.setFromTriplets(t.begin(), t.end());
  }
  Eigen::SparseLU<SpMat> lu;
  lu.compute(qlq);
  if (lu.info() != Eigen::Success)
    throw NumericalError("coherence-block factorization failed");

  SectorFlows out;
  out.layout = l;
  out.P = Eigen::MatrixXd::Zero(n1, n2);
  for (int q = 0; q < SpaceLayout::qd_dim; ++q)
    for (int n = 0; n < n1; ++n)
      for (int m = 0; m < n2; ++m)
        out.P(n, m) += rho_ss.rho(l.index(q, n, m), l.index(q, n, m)).real();

  const std::pair<int, int> channels[] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},  {-1, -1}, {2, 0}, {-2, 0},
                                          {0, 2},  {0, -2}};
  for (auto ch : channels)
    out.flow[ch] = Eigen::MatrixXd::Zero(n1, n2);
  out.kappa1 = Eigen::MatrixXd::Zero(n1, n2);
  out.kappa2 = Eigen::MatrixXd::Zero(n1, n2);
  out.remainder1 = Eigen::MatrixXd::Zero(n1, n2);
  out.remainder2 = Eigen::MatrixXd::Zero(n1, n2);

  Eigen::VectorXcd v(D), y(D), z(D);
  Eigen::VectorXcd wq(nq), zq(nq);
  for (int sn = 0; sn < n1; ++sn) {
    for (int sm = 0; sm < n2; ++sm) {
      if (out.P(sn, sm) < 1e-14) {
        out.skipped.emplace_back(sn, sm);
        continue;
      }
      // sector-restricted state (QD coherences kept)
      v.setZero();
      for (int q = 0; q < SpaceLayout::qd_dim; ++q)
        for (int qp = 0; qp < SpaceLayout::qd_dim; ++qp)
          v(l.index(q, sn, sm) + d * l.index(qp, sn, sm)) =
              rho_ss.rho(l.index(q, sn, sm), l.index(qp, sn, sm));
      y = L.mat * v;
      for (int k = 0; k < nq; ++k) wq(k) = y(qidx[k]);
      zq = lu.solve(wq);
      if (lu.info() != Eigen::Success)
        throw NumericalError("coherence-block solve failed");
      z.setZero();
      for (int k = 0; k < nq; ++k) z(qidx[k]) = zq(k);
      y -= L.mat * z;  // effective sector-diagonal production

      out.kappa1(sn, sm) = kappa1_radps * sn * out.P(sn, sm);
      out.kappa2(sn, sm) = kappa2_radps * sm * out.P(sn, sm);
      for (int tn = 0; tn < n1; ++tn) {
        for (int tm = 0; tm < n2; ++tm) {
          if (tn == sn && tm == sm) continue;
          double prod = 0.0;
          for (int q = 0; q < SpaceLayout::qd_dim; ++q)
            prod += y(l.index(q, tn, tm) * (d + 1)).real();
          auto it = out.flow.find({tn - sn, tm - sm});
          if (it != out.flow.end()) {
            it->second(sn, sm) += prod;
          } else {
            out.remainder1(sn, sm) += (tn - sn) * prod;
            out.remainder2(sn, sm) += (tm - sm) * prod;
          }
        }
      }
    }
  }
  // peel the analytic damping off the single-photon down channels
  out.flow[{-1, 0}] -= out.kappa1;
  out.flow[{0, -1}] -= out.kappa2;
  return out;
}

EERReport excess_emission(const SectorFlows& f) {
  EERReport r;
  r.N1 = f.total(1, 0) - f.total(-1, 0);
  r.M1 = f.total(0, 1) - f.total(0, -1);
  r.N2 = f.total(2, 0) - f.total(-2, 0);
  r.M2 = f.total(0, 2) - f.total(0, -2);
  r.N1M1 = f.total(1, 1) - f.total(-1, -1);
  r.remainder1 = f.remainder1.sum();
  r.remainder2 = f.remainder2.sum();
  r.kappa1_flux = f.kappa1.sum();
  r.kappa2_flux = f.kappa2.sum();
  return r;
}

}  // namespace qdcel

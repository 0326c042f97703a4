#include "qdcel/operators.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace qdcel {

using Triplet = Eigen::Triplet<cplx>;

Operator identity_op(SpaceLayout layout) {
  SpMat m(layout.dim(), layout.dim());
  m.setIdentity();
  return {layout, std::move(m)};
}

Operator make_annihilation(SpaceLayout layout, int mode_index) {
  if (mode_index != 1 && mode_index != 2)
    throw ConfigError("mode_index must be 1 or 2");
  const int cutoff = mode_index == 1 ? layout.cutoff1 : layout.cutoff2;
  std::vector<Triplet> t;
  for (int q = 0; q < SpaceLayout::qd_dim; ++q)
    for (int n1 = 0; n1 < layout.dim1(); ++n1)
      for (int n2 = 0; n2 < layout.dim2(); ++n2) {
        int n = mode_index == 1 ? n1 : n2;
        if (n < 1 || n > cutoff) continue;
        int row = mode_index == 1 ? layout.index(q, n1 - 1, n2)
                                  : layout.index(q, n1, n2 - 1);
        t.emplace_back(row, layout.index(q, n1, n2), std::sqrt(double(n)));
      }
  SpMat m(layout.dim(), layout.dim());
  m.setFromTriplets(t.begin(), t.end());
  return {layout, std::move(m)};
}

Operator qd_transition(SpaceLayout layout, int ket, int bra) {
  std::vector<Triplet> t;
  for (int n1 = 0; n1 < layout.dim1(); ++n1)
    for (int n2 = 0; n2 < layout.dim2(); ++n2)
      t.emplace_back(layout.index(ket, n1, n2), layout.index(bra, n1, n2), 1.0);
  SpMat m(layout.dim(), layout.dim());
  m.setFromTriplets(t.begin(), t.end());
  return {layout, std::move(m)};
}

Operator make_qd_sigma(SpaceLayout layout, Exciton which, LadderSign sign) {
  const int upper = which == Exciton::X ? SpaceLayout::kX : SpaceLayout::kY;
  if (sign == LadderSign::Plus)
    return qd_transition(layout, upper, SpaceLayout::kG);
  return qd_transition(layout, SpaceLayout::kG, upper);
}

SpMat spre(const Operator& a) {
  SpMat id(a.layout.dim(), a.layout.dim());
  id.setIdentity();
  return Eigen::kroneckerProduct(id, a.mat);
}

SpMat spost(const Operator& a) {
  SpMat id(a.layout.dim(), a.layout.dim());
  id.setIdentity();
  SpMat at = a.mat.transpose();
  return Eigen::kroneckerProduct(at, id);
}

SpMat sandwich(const Operator& a, const Operator& b) {
  check_same_layout(a, b);
  SpMat bt = b.mat.transpose();
  return Eigen::kroneckerProduct(bt, a.mat);
}

Superoperator hamiltonian_commutator(const Operator& h) {
  return {h.layout, SpMat(cplx(0, -1) * (spre(h) - spost(h)))};
}

Superoperator lindblad_term(const Operator& o) {
  return lindblad_cross(o, o.adjoint());
}

Superoperator lindblad_cross(const Operator& o1, const Operator& o2) {
  check_same_layout(o1, o2);
  Operator prod = o2 * o1;
  SpMat m = spre(prod) - 2.0 * sandwich(o1, o2) + spost(prod);
  return {o1.layout, std::move(m)};
}

SpMat prune(const SpMat& m, double rel_tol) {
  double mx = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      mx = std::max(mx, std::abs(it.value()));
  if (mx == 0) return m;
  const double cut = rel_tol * mx;
  std::vector<Triplet> t;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      if (std::abs(it.value()) > cut)
        t.emplace_back(it.row(), it.col(), it.value());
  SpMat out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SpMat to_sparse(const DnMat& m, double rel_tol) {
  const double cut = rel_tol * m.cwiseAbs().maxCoeff();
  std::vector<Triplet> t;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > cut) t.emplace_back(i, j, m(i, j));
  SpMat out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace qdcel

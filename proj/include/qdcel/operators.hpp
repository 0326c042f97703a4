#pragma once

#include <array>

#include "qdcel/types.hpp"

namespace qdcel {

// Composite space QD (x) mode1 (x) mode2, in that tensor order.
// QD levels are ordered g, x, y.  cutoffN means Fock states 0..cutoffN.
struct SpaceLayout {
  static constexpr int qd_dim = 3;
  static constexpr int kG = 0, kX = 1, kY = 2;

  int cutoff1 = 1;
  int cutoff2 = 1;

  SpaceLayout(int c1, int c2) : cutoff1(c1), cutoff2(c2) {
    if (c1 < 1 || c2 < 1) throw ConfigError("photon cutoffs must be >= 1");
  }

  int dim1() const { return cutoff1 + 1; }
  int dim2() const { return cutoff2 + 1; }
  int dim() const { return qd_dim * dim1() * dim2(); }
  int vec_dim() const { return dim() * dim(); }

  int index(int q, int n, int m) const { return (q * dim1() + n) * dim2() + m; }

  bool operator==(const SpaceLayout& o) const {
    return cutoff1 == o.cutoff1 && cutoff2 == o.cutoff2;
  }
  bool operator!=(const SpaceLayout& o) const { return !(*this == o); }
};

struct Operator {
  SpaceLayout layout;
  SpMat mat;

  Operator(SpaceLayout l) : layout(l), mat(l.dim(), l.dim()) {}
  Operator(SpaceLayout l, SpMat m) : layout(l), mat(std::move(m)) {}

  Operator adjoint() const { return {layout, SpMat(mat.adjoint())}; }
};

inline void check_same_layout(const Operator& a, const Operator& b) {
  if (a.layout != b.layout) throw LayoutMismatch("operator layouts differ");
}

inline Operator operator*(const Operator& a, const Operator& b) {
  check_same_layout(a, b);
  return {a.layout, SpMat(a.mat * b.mat)};
}
inline Operator operator+(const Operator& a, const Operator& b) {
  check_same_layout(a, b);
  return {a.layout, SpMat(a.mat + b.mat)};
}
inline Operator operator-(const Operator& a, const Operator& b) {
  check_same_layout(a, b);
  return {a.layout, SpMat(a.mat - b.mat)};
}
inline Operator operator*(cplx s, const Operator& a) {
  return {a.layout, SpMat(s * a.mat)};
}

// Superoperators act on column-stacked density matrices: vec(A rho B) =
// (B^T (x) A) vec(rho).
struct Superoperator {
  SpaceLayout layout;
  SpMat mat;

  Superoperator(SpaceLayout l) : layout(l), mat(l.vec_dim(), l.vec_dim()) {}
  Superoperator(SpaceLayout l, SpMat m) : layout(l), mat(std::move(m)) {}

  DnMat apply(const DnMat& rho) const {
    const int d = layout.dim();
    Eigen::Map<const DnVec> v(rho.data(), d * d);
    DnVec out = mat * v;
    return Eigen::Map<DnMat>(out.data(), d, d);
  }
};

Operator identity_op(SpaceLayout layout);
Operator make_annihilation(SpaceLayout layout, int mode_index);

// |ket><bra| on the QD factor, tensored with photon identities.
Operator qd_transition(SpaceLayout layout, int ket, int bra);

enum class Exciton { X = 1, Y = 2 };
enum class LadderSign { Plus, Minus };
Operator make_qd_sigma(SpaceLayout layout, Exciton which, LadderSign sign);

SpMat spre(const Operator& a);   // rho -> A rho
SpMat spost(const Operator& a);  // rho -> rho A
SpMat sandwich(const Operator& a, const Operator& b);  // rho -> A rho B

// -i [H, rho]
Superoperator hamiltonian_commutator(const Operator& h);

// Paper-convention dissipator: L[O] rho = O^dag O rho - 2 O rho O^dag
// + rho O^dag O.  Generators subtract (rate/2) * this.
Superoperator lindblad_term(const Operator& o);

// Cross dissipator L[O1,O2] rho = O2 O1 rho - 2 O1 rho O2 + rho O2 O1.
// Reduces to lindblad_term for O2 = O1^dag and is trace-free for any pair.
Superoperator lindblad_cross(const Operator& o1, const Operator& o2);

SpMat prune(const SpMat& m, double rel_tol = 1e-14);
SpMat to_sparse(const DnMat& m, double rel_tol = 1e-14);

}  // namespace qdcel

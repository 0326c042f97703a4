#include "qdcel/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <memory>
#include <vector>

namespace qdcel {

namespace {

struct Ops {
  Operator a1, a2, s1p, s1m, s2p, s2m;
  Ops(SpaceLayout l)
      : a1(make_annihilation(l, 1)),
        a2(make_annihilation(l, 2)),
        s1p(make_qd_sigma(l, Exciton::X, LadderSign::Plus)),
        s1m(make_qd_sigma(l, Exciton::X, LadderSign::Minus)),
        s2p(make_qd_sigma(l, Exciton::Y, LadderSign::Plus)),
        s2m(make_qd_sigma(l, Exciton::Y, LadderSign::Minus)) {}
};

// Shared Lindblad part: cavity decay + spontaneous decay (+ optional
// pure dephasing), rates already in rad/ps.
SpMat common_dissipators(const SystemParams& p, const Ops& o,
                         bool with_dephasing, double gamma1_extra = 0,
                         double gamma2_extra = 0) {
  SpMat m = 0.5 * ang(p.kappa1) * lindblad_term(o.a1).mat;
  m += 0.5 * ang(p.kappa2) * lindblad_term(o.a2).mat;
  m += 0.5 * (ang(p.gamma1) + gamma1_extra) * lindblad_term(o.s1m).mat;
  m += 0.5 * (ang(p.gamma2) + gamma2_extra) * lindblad_term(o.s2m).mat;
  if (with_dephasing) {
    m += 0.5 * ang(p.gamma1p) * lindblad_term(o.s1p * o.s1m).mat;
    m += 0.5 * ang(p.gamma2p) * lindblad_term(o.s2p * o.s2m).mat;
  }
  return m;
}

// X_g (j = g) or X_u (j = u) divided by hbar, rad/ps.
Operator interaction_operator(const SystemParams& p, const Ops& o, bool u) {
  Operator half = ang(p.g1) * (o.s1p * o.a1) + ang(p.g2) * (o.s2p * o.a2) +
                  cplx(ang(p.eta1)) * o.s1p + cplx(ang(p.eta2)) * o.s2p;
  if (u) half = cplx(0, 1) * half;
  return half + half.adjoint();
}

}  // namespace

Operator build_H_s(const SystemParams& p, SpaceLayout layout, double mean_B) {
  Ops o(layout);
  Operator h = ang(p.delta_xp) * (o.s1p * o.s1m) +
               ang(p.delta_yp) * (o.s2p * o.s2m) +
               ang(p.delta_c1p) * (o.a1.adjoint() * o.a1) +
               ang(p.delta_c2p) * (o.a2.adjoint() * o.a2);
  Operator half = ang(p.g1) * (o.s1p * o.a1) + ang(p.g2) * (o.s2p * o.a2) +
                  cplx(ang(p.eta1)) * o.s1p + cplx(ang(p.eta2)) * o.s2p;
  return h + cplx(mean_B) * (half + half.adjoint());
}

GeneratorBundle build_no_phonon(const SystemParams& p) {
  p.validate();
  SpaceLayout l(p.cutoff1, p.cutoff2);
  Ops o(l);
  Operator h = build_H_s(p, l, 1.0);
  SpMat m = hamiltonian_commutator(h).mat;
  m -= common_dissipators(p, o, p.dephasing_in_no_phonon);
  return {l, std::move(h), Superoperator{l, std::move(m)}, Variant::NoPhonon};
}

GeneratorBundle build_full_polaron(const SystemParams& p,
                                   const PhononTables& tables) {
  p.validate();
  SpaceLayout l(p.cutoff1, p.cutoff2);
  Ops o(l);
  Operator h = build_H_s(p, l, tables.mean_B());
  SpMat m = hamiltonian_commutator(h).mat;
  m -= common_dissipators(p, o, true);

  DnMat hd = DnMat(h.mat);
  Eigen::SelfAdjointEigenSolver<DnMat> es(hd);
  if (es.info() != Eigen::Success)
    throw NumericalError("H_s eigendecomposition failed");
  const DnMat& v = es.eigenvectors();
  const Eigen::VectorXd& w = es.eigenvalues();  // rad/ps

  for (bool u : {false, true}) {
    Operator x = interaction_operator(p, o, u);
    DnMat xe = v.adjoint() * DnMat(x.mat) * v;
    for (int b = 0; b < xe.cols(); ++b)
      for (int a = 0; a < xe.rows(); ++a)
        xe(a, b) *= tables.half_fourier(u ? Kernel::Gu : Kernel::Gg,
                                        hbar_meV_ps * (w(b) - w(a)));
    Operator xt{l, to_sparse(DnMat(v * xe * v.adjoint()), 1e-12)};
    // -L_ph = -([X, Xt rho] + h.c.)
    Operator xxt = x * xt;
    Operator xtdx = xt.adjoint() * x;
    m -= spre(xxt) - sandwich(xt, x) + spost(xtdx) - sandwich(x, xt.adjoint());
  }
  m = prune(m, 1e-15);
  return {l, std::move(h), Superoperator{l, std::move(m)}, Variant::Full};
}

GeneratorBundle build_sme(const SystemParams& p, const PhononRates& r,
                          double mean_B) {
  p.validate();
  SpaceLayout l(p.cutoff1, p.cutoff2);
  Ops o(l);
  Operator h = build_H_s(p, l, mean_B);

  Operator n1 = o.a1.adjoint() * o.a1, n2 = o.a2.adjoint() * o.a2;
  Operator aad1 = o.a1 * o.a1.adjoint(), aad2 = o.a2 * o.a2.adjoint();
  Operator pe1 = o.s1p * o.s1m, pg1 = o.s1m * o.s1p;
  Operator pe2 = o.s2p * o.s2m, pg2 = o.s2m * o.s2p;

  Operator heff = h + cplx(r.delta_plus[0]) * (pe1 * aad1) +
                  cplx(r.delta_plus[1]) * (pe2 * aad2) +
                  cplx(r.delta_minus[0]) * (pg1 * n1) +
                  cplx(r.delta_minus[1]) * (pg2 * n2) +
                  cplx(r.delta_p_plus[0]) * pe1 + cplx(r.delta_p_plus[1]) * pe2 +
                  cplx(r.delta_p_minus[0]) * pg1 + cplx(r.delta_p_minus[1]) * pg2;
  Operator exch = (cplx(0, -1) * r.Omega12) * (o.s1p * o.s2m * o.a1 *
                                               o.a2.adjoint()) +
                  (cplx(0, -1) * r.Omega12_p) * (o.s1p * o.s2m);
  heff = heff + exch + exch.adjoint();

  SpMat m = hamiltonian_commutator(heff).mat;
  m -= common_dissipators(p, o, true, r.Gamma_p_plus[0], r.Gamma_p_plus[1]);

  Operator sa1 = o.s1p * o.a1, sa2 = o.s2p * o.a2;        // sigma+ a
  Operator sad1 = o.s1m * o.a1.adjoint(), sad2 = o.s2m * o.a2.adjoint();
  m -= 0.5 * r.Gamma_minus[0] * lindblad_term(sa1).mat;
  m -= 0.5 * r.Gamma_minus[1] * lindblad_term(sa2).mat;
  m -= 0.5 * r.Gamma_plus[0] * lindblad_term(sad1).mat;
  m -= 0.5 * r.Gamma_plus[1] * lindblad_term(sad2).mat;
  m -= 0.5 * r.Gamma_p_minus[0] * lindblad_term(o.s1p).mat;
  m -= 0.5 * r.Gamma_p_minus[1] * lindblad_term(o.s2p).mat;

  m -= 0.5 * r.Gamma12 * lindblad_cross(sad2, sa1).mat;
  m -= 0.5 * r.Gamma21 * lindblad_cross(sad1, sa2).mat;
  m -= 0.5 * r.Gamma12_p * lindblad_cross(o.s1p, o.s2m).mat;
  m -= 0.5 * r.Gamma21_p * lindblad_cross(o.s2p, o.s1m).mat;

  // Residue sandwich terms, subtracted with their Hermiticity partners.
  auto sub = [&](cplx lam, const Operator& a, const Operator& b,
                 bool with_hc) {
    m -= lam * sandwich(a, b);
    if (with_hc) m -= std::conj(lam) * sandwich(b.adjoint(), a.adjoint());
  };
  sub(r.Lambda_plus[0], sa1, sa1, true);
  sub(r.Lambda_plus[1], sa2, sa2, true);
  sub(r.Lambda12_pp, sa1, sa2, true);
  sub(r.Lambda21_pp, sa2, sa1, true);
  sub(r.Lambda12_pm, sa1, sad2, false);
  sub(r.Lambda21_pm, sa2, sad1, false);
  sub(r.Lambda_p_plus[0], o.s1p, o.s1p, true);
  sub(r.Lambda_p_plus[1], o.s2p, o.s2p, true);
  sub(r.Lambda12p_pp, o.s1p, o.s2p, true);
  sub(r.Lambda21p_pp, o.s2p, o.s1p, true);
  sub(r.Lambda12p_pm, o.s1p, o.s2m, false);
  sub(r.Lambda21p_pm, o.s2p, o.s1m, false);

  m = prune(m, 1e-15);
  return {l, std::move(h), Superoperator{l, std::move(m)}, Variant::Sme};
}

GeneratorBundle build_variant(const SystemParams& p, Variant v,
                              const PhononTables* tables) {
  if (v == Variant::NoPhonon) return build_no_phonon(p);
  std::unique_ptr<PhononTables> owned;
  if (!tables) {
    owned = std::make_unique<PhononTables>(p.bath);
    tables = owned.get();
  }
  if (v == Variant::Full) return build_full_polaron(p, *tables);
  PhononRates r = compute_rates(p.rate_inputs(), *tables);
  return build_sme(p, r, tables->mean_B());
}

Operator exchange_operator(SpaceLayout layout) {
  if (layout.cutoff1 != layout.cutoff2)
    throw ConfigError("exchange operator needs equal cutoffs");
  std::vector<Eigen::Triplet<cplx>> t;
  auto swap_qd = [](int q) {
    if (q == SpaceLayout::kX) return SpaceLayout::kY;
    if (q == SpaceLayout::kY) return SpaceLayout::kX;
    return SpaceLayout::kG;
  };
  for (int q = 0; q < SpaceLayout::qd_dim; ++q)
    for (int n = 0; n < layout.dim1(); ++n)
      for (int m2 = 0; m2 < layout.dim2(); ++m2)
        t.emplace_back(layout.index(swap_qd(q), m2, n), layout.index(q, n, m2),
                       1.0);
  SpMat m(layout.dim(), layout.dim());
  m.setFromTriplets(t.begin(), t.end());
  return {layout, std::move(m)};
}

}  // namespace qdcel

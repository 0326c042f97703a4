#pragma once

#include "qdcel/params.hpp"
#include "qdcel/solvers.hpp"

namespace qdcel {

cplx expect(const Operator& o, const DensityMatrix& rho);

double mean_photons(const DensityMatrix& rho, int mode_index);
cplx mode_coherence(const DensityMatrix& rho);     // <a1^dag a2>
cplx exciton_coherence(const DensityMatrix& rho);  // <sigma1^+ sigma2^->

// Zero-delay g2: <ai^dag aj^dag ai aj> / (<ni><nj>).
double g2_zero(const DensityMatrix& rho, int i, int j);

enum class Quadrature { Phi, PhiAvg, R, RAvg };

Operator quadrature_operator(SpaceLayout layout, Quadrature which, double phi1,
                             double phi2);
double quadrature_variance(const DensityMatrix& rho, Quadrature which,
                           double phi1, double phi2);

struct DressedPopulations {
  double p_plus = 0, p_zero = 0, p_minus = 0;
};
// Mixing angle of the symmetric pump-dressed block; eta1 == eta2 required.
double dressed_mixing_angle(const SystemParams& p);
DressedPopulations dressed_populations(const DensityMatrix& rho,
                                       const SystemParams& p);

// Duan-Giedke-Cirac-Zoller total variance Du^2 + Dv^2 for u = x1 + x2,
// v = p1 - p2; value < 2 certifies CV entanglement.
double dgcz_witness(const DensityMatrix& rho, double phi1, double phi2);

}  // namespace qdcel

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qdcel/operators.hpp"
#include "qdcel/solvers.hpp"

namespace qdcel {

// Photon-number-sector probability flows extracted from a generator and its
// steady state.  Sector (n, m) keeps the QD index and intra-sector QD
// coherences; inter-sector coherences are adiabatically eliminated so the
// classified flows reproduce the exact steady-state balance.
struct SectorFlows {
  SpaceLayout layout{1, 1};
  Eigen::MatrixXd P;  // sector probabilities, dim1() x dim2()
  // (dn, dm) -> per-source-sector rate, rad/ps; the (-1,0)/(0,-1) channels
  // exclude the cavity-damping part listed below.
  std::map<std::pair<int, int>, Eigen::MatrixXd> flow;
  Eigen::MatrixXd kappa1, kappa2;  // analytic kappa*n*P down-flows
  // photon-number-weighted flux through unclassified channels, per source
  Eigen::MatrixXd remainder1, remainder2;
  std::vector<std::pair<int, int>> skipped;  // negligible sectors

  double total(int dn, int dm) const { return flow.at({dn, dm}).sum(); }
};

struct EERReport {
  double N1 = 0, M1 = 0, N2 = 0, M2 = 0, N1M1 = 0;  // rad/ps
  double remainder1 = 0, remainder2 = 0;            // unclassified flux
  double kappa1_flux = 0, kappa2_flux = 0;          // kappa_i <n_i>
};

SectorFlows sector_flows(const Superoperator& L, const DensityMatrix& rho_ss,
                         double kappa1_radps, double kappa2_radps);

EERReport excess_emission(const SectorFlows& f);

}  // namespace qdcel

#pragma once

#include "qdcel/operators.hpp"
#include "qdcel/params.hpp"
#include "qdcel/phonon.hpp"

namespace qdcel {

struct GeneratorBundle {
  SpaceLayout layout;
  Operator H_s;       // rad/ps
  Superoperator L;    // rad/ps, applied as rho_dot = L(rho)
  Variant variant;
};

// System Hamiltonian in rad/ps.  mean_B renormalizes the g and eta terms.
Operator build_H_s(const SystemParams& p, SpaceLayout layout, double mean_B);

GeneratorBundle build_no_phonon(const SystemParams& p);
GeneratorBundle build_full_polaron(const SystemParams& p,
                                   const PhononTables& tables);
GeneratorBundle build_sme(const SystemParams& p, const PhononRates& rates,
                          double mean_B);

// Convenience dispatch; builds tables/rates internally when needed.
GeneratorBundle build_variant(const SystemParams& p, Variant v,
                              const PhononTables* tables = nullptr);

// Unitary permutation swapping mode factors and |x> <-> |y>; used by the
// exchange-symmetry checks.  Requires cutoff1 == cutoff2.
Operator exchange_operator(SpaceLayout layout);

}  // namespace qdcel

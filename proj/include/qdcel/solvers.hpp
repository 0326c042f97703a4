#pragma once

#include <functional>

#include "qdcel/operators.hpp"

namespace qdcel {

struct DensityMatrix {
  SpaceLayout layout;
  DnMat rho;

  DensityMatrix(SpaceLayout l) : layout(l), rho(DnMat::Zero(l.dim(), l.dim())) {}
  DensityMatrix(SpaceLayout l, DnMat r) : layout(l), rho(std::move(r)) {}

  // Hermiticity/trace/positivity checks; throws NumericalError on violation.
  void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                double eig_floor = -1e-8) const;
};

// |g, 0, 0><g, 0, 0|
DensityMatrix ground_state(SpaceLayout layout);

struct SteadyStateReport {
  DensityMatrix rho;
  double residual = 0;       // ||L(rho)||_F
  bool cutoff_converged = true;
  int iterations = 1;        // linear solves performed
};

// eig_floor admits the mild negativity a non-completely-positive
// (Redfield-like) generator can produce at strong drive.
SteadyStateReport steady_state(const Superoperator& L,
                               double residual_tol = 1e-8,
                               double eig_floor = -0.05);

// Adaptive Dormand-Prince RK45 on vec(rho).
DensityMatrix evolve(const Superoperator& L, const DensityMatrix& rho0,
                     double t_final, double rel_tol = 1e-8,
                     double abs_tol = 1e-12);

// Increases both cutoffs until |observable change| < rel_tol relative.
// builder maps cutoff-adjusted params to a generator; observable maps the
// steady state to a scalar.
struct AutoCutoffResult {
  int cutoff = 0;
  SteadyStateReport report;
  double last_change = 0;
};
AutoCutoffResult auto_cutoff(
    const std::function<Superoperator(int cutoff)>& builder,
    const std::function<double(const DensityMatrix&)>& observable,
    double rel_tol, int start = 2, int cap = 12);

}  // namespace qdcel

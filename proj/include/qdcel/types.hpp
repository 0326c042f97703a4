#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qdcel {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using DnMat = Eigen::MatrixXcd;
using DnVec = Eigen::VectorXcd;

// Energies are meV, times ps. Internal generator frequencies are rad/ps.
inline constexpr double hbar_meV_ps = 0.6582;
inline constexpr double kB_meV_K = 0.08617;

// meV -> rad/ps
inline double ang(double energy_meV) { return energy_meV / hbar_meV_ps; }

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LayoutMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Tagged error for quantities that are undefined rather than failed,
// e.g. g2 with an empty mode.
struct UndefinedValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qdcel

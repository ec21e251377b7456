#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ptwell/quadrature.hpp"
#include "ptwell/secular.hpp"
#include "ptwell/well_spec.hpp"

namespace ptwell {

/// Real ansatz coefficients in the assembly ordering (mu, nu, gamma_1, delta_1,
/// alpha_1, beta_1, ..., alpha_L, beta_L), gauge-fixed to mu = 1 when |mu| > 1e-8
/// and nu = 1 otherwise.
struct CoefficientVector {
  Eigen::VectorXd values;
  bool degenerate = false;  // two small pivots: nullspace was (near) two-dimensional

  double mu() const { return values(0); }
  double nu() const { return values(1); }
};

/// Nullspace of the matching system at a verified root, by Gaussian elimination
/// with full pivoting.  Throws NotARoot when the smallest pivot is not small.
CoefficientVector nullspace_coefficients(const WellSpec& spec, double kappa);

/// A bound state: momentum, coefficients, level index (the kappa = n pi/2 label at
/// vanishing coupling), quasi-parity q_n = +1 (n odd) / -1 (n even), and the
/// PT overlap rho_n = q_n * integral psi_n^2.
struct Eigenfunction {
  WellSpec spec;
  double kappa = 0.0;
  int level = 0;
  double quasi_parity = 1.0;
  CoefficientVector coefficients;
  double rho = 0.0;
};

/// Build an eigenfunction at a root; `level` fixes the quasi-parity sign.
Eigenfunction make_eigenfunction(const WellSpec& spec, double kappa, int level);

/// Pointwise value of the piecewise-trigonometric ansatz; PT symmetry gives
/// psi(-x) = conj(psi(x)).  Throws OutOfDomain for |x| > 1.
cplx evaluate(const Eigenfunction& psi, double x);

/// Bilinear PT overlap <<L_m|D_n> = q_m * integral psi_m psi_n over (-1,1), by
/// per-segment Gauss-Legendre quadrature (64 nodes per segment).  The imaginary
/// part vanishes by PT symmetry and is returned as a diagnostic.
struct Overlap {
  double value = 0.0;
  double imag_defect = 0.0;
};
Overlap overlap_rho(const Eigenfunction& psi_m, const Eigenfunction& psi_n);

/// Residuals of all matching conditions (right side as assembled, left side by PT)
/// for diagnostics and tests.
Eigen::VectorXd condition_residuals(const Eigenfunction& psi);

}  // namespace ptwell

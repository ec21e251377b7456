#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ptwell/closed_form.hpp"
#include "ptwell/well_spec.hpp"

namespace ptwell {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// The 4L x 4L homogeneous matching system at momentum kappa.  Unknown ordering is
/// (mu, nu, gamma_1, delta_1, alpha_1, beta_1, ..., alpha_L, beta_L); rows come in
/// blocks of four per matching point +a_l: continuity (real part, imaginary part)
/// followed by the derivative-jump condition (real part, imaginary part).  Jump rows
/// are scaled by 1/kappa so that the determinant matches the closed forms up to a
/// kappa-independent constant.
template <class Scalar>
struct MatchingSystem {
  int size = 0;  // 4L
  MatrixX<Scalar> matrix;
};

/// Assemble the matching system.  Only the conditions at the positive points +a_l
/// are imposed; the -a_l conditions follow from PT symmetry of the ansatz and are
/// checked separately (left_condition_residuals).  Throws ZeroKappa for kappa = 0.
MatchingSystem<double> assemble(const WellSpec& spec, double kappa);
MatchingSystem<cplx> assemble(const WellSpec& spec, cplx kappa);

/// Determinant by Gaussian elimination with row-scaled partial pivoting and exact
/// sign tracking.  The empty (L = 0) system has determinant 1.
template <class Scalar>
Scalar determinant(const MatchingSystem<Scalar>& system);

/// Calibration constant c(spec): the kappa-independent ratio between the assembled
/// determinant and the closed forms (L <= 2), or the pure-well reference -sin(2k)/2
/// evaluated on the coupling-free copy of the spec (L >= 3).  Determined once at a
/// reference kappa* = 0.37 (+0.1 retries while the reference is almost zero).
double calibration_constant(const WellSpec& spec);

/// D~(kappa): assembled determinant divided by c(spec); equals det_l1/det_l2
/// pointwise for L in {1,2} and -sin(2k)/2 for L = 0.
double normalized_determinant(const WellSpec& spec, double kappa);
cplx normalized_determinant(const WellSpec& spec, cplx kappa);

/// A reusable evaluator that caches the calibration constant.
class SecularFunction {
 public:
  explicit SecularFunction(WellSpec spec);
  double operator()(double kappa) const;
  cplx operator()(cplx kappa) const;
  const WellSpec& spec() const { return spec_; }
  double calibration() const { return c_; }

 private:
  WellSpec spec_;
  double c_;
};

/// Residuals of the eight (per point) left-side matching conditions at -a_l for a
/// coefficient vector in the assembly ordering; they are not imposed in assemble()
/// and must vanish at any root by PT symmetry.
Eigen::VectorXd left_condition_residuals(const WellSpec& spec, double kappa,
                                         const Eigen::VectorXd& coeffs);

}  // namespace ptwell

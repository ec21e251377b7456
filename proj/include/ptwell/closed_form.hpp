#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ptwell/errors.hpp"

namespace ptwell {

using cplx = std::complex<double>;

/// Secular determinant of the single-pair well (L = 1):
///   -1/2 { sin 2k + (xi^2/k^2) sin 2ka sin^2[k(1-a)] }.
cplx det_l1(cplx kappa, double a, double xi);
double det_l1(double kappa, double a, double xi);

/// Secular determinant of the double-pair well (L = 2), 0 < a < b < 1:
///   D0 + D_xi1 + D_xi2 + Dx with
///   D0    = -1/2 sin 2k
///   D_xij = -(xij^2/2k^2) sin 2k aj sin^2[k(1-aj)]
///   Dx    = -{ (xi1 xi2/k^2) sin 2ka + (xi1^2 xi2^2/2k^4) sin 2ka sin^2[k(b-a)] } sin^2[k(1-b)]
/// The quartic part of Dx carries the extra factor (1/2) sin 2ka required for the
/// determinant of the matching system; it is verified against the assembled matrix
/// and an independent transfer-matrix route in the test suite.
cplx det_l2(cplx kappa, double a, double b, double xi1, double xi2);
double det_l2(double kappa, double a, double b, double xi1, double xi2);

/// The four rational positions with worked-out factorizations.
enum class RationalA { Half, Third, TwoThirds, Quarter };

double rational_a_value(RationalA a);

enum class ConditionKind { ExactRoots, Transcendental, QuadraticInX };

/// One factor of the secular determinant at a rational position:
///  - ExactRoots: kappa = m * period, m = 1, 2, ...
///  - Transcendental: a pole-free scalar equation F(kappa; xi) = 0
///  - QuadraticInX: (4k^2 - xi^2) X^2 + xi^2 X - k^2 = 0 with X = cos(2k/3)
struct ReducedCondition {
  ConditionKind kind;
  RationalA which;
  double xi = 0.0;
  double period = 0.0;  // ExactRoots only
  std::string description;
};

/// The defining factors at the given rational position and coupling.
std::vector<ReducedCondition> reduced_conditions(RationalA a_tag, double xi);

/// |lhs - rhs| of the condition at kappa, in a pole-free polynomial-weighted form
/// (no division by xi^2 - 4k^2 or similar movable denominators).
double residual(const ReducedCondition& cond, double kappa);

/// Signed pole-free form whose zeros are the condition's roots (residual = |signed|).
double signed_condition(const ReducedCondition& cond, double kappa);

/// All roots of the condition in (kappa_min, kappa_max), ascending.
std::vector<double> condition_roots(const ReducedCondition& cond, double kappa_min,
                                    double kappa_max);

}  // namespace ptwell

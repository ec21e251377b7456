#pragma once

#include <vector>

#include "ptwell/well_spec.hpp"

namespace ptwell {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1,1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [lo,hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Quadrature over (-1,1) split at the potential's kink points +-a_l, with
/// nodes_per_segment Gauss-Legendre points per smooth segment.  Exact to machine
/// precision for products of the piecewise-trigonometric eigenfunctions.
QuadratureRule segment_quadrature(const WellSpec& spec, int nodes_per_segment = 64);

/// Same segments, but the per-segment node counts are chosen proportional to the
/// segment lengths with total roughly `total_nodes` (minimum 16 per segment).
QuadratureRule segment_quadrature_total(const WellSpec& spec, int total_nodes);

}  // namespace ptwell

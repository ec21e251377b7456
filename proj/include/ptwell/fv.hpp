#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ptwell/rootfind.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell {

/// Concrete carrier for the two-component kets: interior sample points of (-1,1)
/// with positive quadrature weights summing to 2.  Nodes are per-segment
/// Gauss-Legendre (segments split at the kink points +-a_l) so that pairings of
/// the piecewise-trigonometric eigenfunctions are exact to machine precision.
struct GridRepresentation {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Grid with roughly `total_nodes` points (>= 64) distributed over the segments.
GridRepresentation make_grid(const WellSpec& spec, int total_nodes = 1024);

/// One member of the two-component eigenbasis: eigenvalue tau*kappa_n, right
/// vector (tau k D_n; D_n), left vector (L_n; tau k L_n) with L_n = q_n conj(D_n)
/// on the grid, and the biorthogonal norm mu = <<n|n> from the grid pairing
/// (equal to 2 tau kappa rho up to quadrature error).
struct FVEigenpair {
  int level = 0;
  int tau = +1;
  double kappa = 0.0;
  double rho = 0.0;
  double mu = 0.0;
  Eigen::VectorXcd right;  // size 2M
  Eigen::VectorXcd left;   // size 2M
};

struct EigenpairSet {
  std::vector<FVEigenpair> pairs;       // 2 per retained level, (+,-) interleaved
  std::vector<int> excluded_levels;     // |rho| < 1e-10 (exceptional-point vicinity)
};

/// Build (+,-) eigenpairs for every root; levels with |rho| < 1e-10 are excluded
/// (DegenerateRoot) and reported in excluded_levels.
EigenpairSet build_eigenpairs(const WellSpec& spec, const std::vector<RootRecord>& roots,
                              const GridRepresentation& grid);

enum class WeightScheme { Unit, InverseMuSquared, Custom };

struct MetricSpec {
  int truncation = 12;  // levels per sign
  WeightScheme scheme = WeightScheme::InverseMuSquared;
  std::vector<double> custom_plus, custom_minus;  // Custom scheme, indexed by level-1
};

/// Weight omega_n^(tau) for a pair under the scheme; throws NonPositiveWeight.
double metric_weight(const MetricSpec& mspec, const FVEigenpair& p);

/// Dense grid operators Theta = sum omega |n>><<n| (left vectors) and
/// Theta^-1 = sum 1/(omega |mu|^2) |n><n| (right vectors).  Matrices include the
/// quadrature weight on the bra side so they act on sample vectors directly;
/// Theta^-1(Theta r) = r for included right vectors and Theta(Theta^-1 l) = l for
/// included left vectors.
struct MetricOperators {
  Eigen::MatrixXcd theta;
  Eigen::MatrixXcd theta_inv;
};
MetricOperators build_metric(const GridRepresentation& grid, const EigenpairSet& set,
                             const MetricSpec& mspec);

/// Weighted two-component inner product <u, v>_w.
cplx grid_inner(const GridRepresentation& grid, const Eigen::VectorXcd& u,
                const Eigen::VectorXcd& v);
double grid_norm(const GridRepresentation& grid, const Eigen::VectorXcd& u);

/// Truncated resolution-of-identity defect ||P_N(trial) - trial|| / ||trial||,
/// P_N = sum_{n <= N, tau} |n^tau> (1/mu) <<n^tau|.
double identity_defect(const GridRepresentation& grid, const EigenpairSet& set,
                       int truncation, const Eigen::VectorXcd& trial);

/// Truncated spectral representation H_N v and its adjoint (w.r.t. <.,.>_w).
Eigen::VectorXcd apply_hn(const GridRepresentation& grid, const EigenpairSet& set,
                          int truncation, const Eigen::VectorXcd& v);
Eigen::VectorXcd apply_hn_adjoint(const GridRepresentation& grid, const EigenpairSet& set,
                                  int truncation, const Eigen::VectorXcd& v);

/// ||(Theta H_N - H_N^+ Theta) trial|| / (||Theta|| ||H_N trial||).
double quasi_hermiticity_residual(const GridRepresentation& grid, const EigenpairSet& set,
                                  const MetricSpec& mspec, const Eigen::VectorXcd& trial);

/// Conjugated pairing through the metric: <v1, Theta v2>_w.
cplx physical_product(const GridRepresentation& grid, const MetricOperators& metric,
                      const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2);

/// Hermitian Gram matrix of physical products among the 2N included right vectors.
Eigen::MatrixXcd product_gram(const GridRepresentation& grid, const EigenpairSet& set,
                              const MetricSpec& mspec);

/// Square-well mode m sampled as a two-component trial vector (0; phi_m).
Eigen::VectorXcd square_well_trial(const GridRepresentation& grid, int mode);

}  // namespace ptwell

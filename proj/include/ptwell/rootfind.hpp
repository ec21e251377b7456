#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "ptwell/secular.hpp"
#include "ptwell/well_spec.hpp"

namespace ptwell {

struct ScanConfig {
  double kappa_min = 1e-3;
  double kappa_max = 10.0;
  double step = 3.14159265358979323846 / 40.0;
  double refine_tol = 1e-12;    // on kappa
  double residual_tol = 1e-10;  // on |D~|
};

struct SweepConfig {
  double xi_from = 0.0;
  double xi_to = 1.0;
  int steps = 100;               // number of intervals; steps+1 samples
  double collision_delta = 1e-3;
  double ep_tol = 1e-8;
  double imag_tol = 1e-9;        // |Im kappa| below this counts as real
};

enum class RootTag { Robust, Fragile, Unclassified };

/// One bound-state root.  epsilon = kappa^2 is recomputed, never stored.
struct RootRecord {
  int index = 0;     // 1-based, ascending in kappa
  double kappa = 0.0;
  double residual = 0.0;
  RootTag tag = RootTag::Unclassified;

  double epsilon() const { return kappa * kappa; }
};

enum class SampleStatus { Real, Merged, Complex, Lost };

struct TraceSample {
  double xi = 0.0;
  cplx kappa;
  SampleStatus status = SampleStatus::Real;
};

struct ContinuationTrace {
  int level = 0;
  std::vector<TraceSample> samples;
  bool lost = false;
  std::optional<double> merged_xi;  // xi_c when the level coalesced
  std::optional<int> partner;       // level it merged with
};

struct ExceptionalPoint {
  double xi_c = 0.0;
  double kappa_c = 0.0;
  std::pair<int, int> pair{0, 0};
  double residual_d = 0.0;        // |D~| at (kappa_c, xi_c)
  double residual_dk = 0.0;       // |dD~/dk| at (kappa_c, xi_c)
};

/// All real roots of D~ in (kappa_min, kappa_max): sign-change brackets refined by
/// a bisection/secant hybrid, plus grid local minima of |D~| below
/// sqrt(residual_tol) refined as near-degenerate pairs.  Ascending, 1-based index.
std::vector<RootRecord> find_real_roots(const WellSpec& spec, const ScanConfig& config);

/// Same scan applied to an arbitrary secular function (closed-form backends).
std::vector<RootRecord> find_real_roots_of(const std::function<double(double)>& f,
                                           const ScanConfig& config);

/// Continue levels 1..levels from the square-well limit: couplings are s * xi_hat
/// with xi_hat = couplings / max|couplings| (all-ones if every coupling vanishes)
/// and s running over [xi_from, xi_to].  Crossings of two real levels are followed
/// through; genuine coalescences switch the pair to complex-conjugate tracking.
std::vector<ContinuationTrace> continue_levels(const WellSpec& spec, int levels,
                                               const SweepConfig& sweep,
                                               const ScanConfig& scan);

/// Solve D~ = 0, dD~/dkappa = 0 near the guess by a damped 2x2 Newton iteration
/// with central-difference Jacobian; falls back to bisection on the coupling over
/// the predicate "the pair still has two real roots".  Throws NoCoalescence when
/// the candidate is a level crossing (the pair re-separates on the real axis) or
/// no coalescence exists in range.
ExceptionalPoint find_exceptional_point(const WellSpec& spec, double kappa_guess,
                                        double lambda_guess, std::pair<int, int> pair,
                                        const SweepConfig& sweep);

/// Tag levels 1..levels Fragile iff their trace reaches Merged/Complex status for a
/// sweep strength in [0, xi_max]; Robust otherwise; Unclassified on LostTrack.
struct LevelClassification {
  int level = 0;
  RootTag tag = RootTag::Unclassified;
  std::optional<double> xi_c;
};
std::vector<LevelClassification> classify_levels(const WellSpec& spec, int levels,
                                                 double xi_max);

/// spec with couplings rescaled so the largest magnitude equals s (ratios kept).
WellSpec scaled_spec(const WellSpec& spec, double s);

}  // namespace ptwell

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptwell/well_spec.hpp"

namespace ptwell {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double worst_residual = 0.0;
  std::string context;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (c.status == CheckStatus::Fail) return false;
    }
    return true;
  }
  std::string to_json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240501;

/// Cross-backend determinant checks for the given spec: ratio constancy against
/// the closed forms (L <= 2, plus seeded random same-shape specs), reality on the
/// complex evaluation path, L2 -> L1 degeneration, PT redundancy of the unimposed
/// left matching conditions, and coupling -> 0 continuity.  Closed-form checks are
/// reported Skipped when L > 2.
VerificationReport verify_determinants(const WellSpec& spec, std::uint64_t seed);

/// Root-set equivalence between det_l1 zeros and the reduced-condition roots at
/// the four rational positions, for each coupling in xi_list, on (0, kappa_max).
VerificationReport verify_rational_a(const std::vector<double>& xi_list, double kappa_max);

}  // namespace ptwell

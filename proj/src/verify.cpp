#include "ptwell/verify.hpp"

#include <cmath>
#include <json.hpp>
#include <random>

#include "ptwell/closed_form.hpp"
#include "ptwell/csv.hpp"
#include "ptwell/rootfind.hpp"
#include "ptwell/secular.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell {

namespace {

const char* status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

double closed_det(const WellSpec& s, double k) {
  if (s.count() == 0) return -0.5 * std::sin(2.0 * k);
  if (s.count() == 1) return det_l1(k, s.positions[0], s.couplings[0]);
  return det_l2(k, s.positions[0], s.positions[1], s.couplings[0], s.couplings[1]);
}

CheckResult ratio_constancy(const WellSpec& spec, std::mt19937_64& rng) {
  CheckResult c{"ratio_constancy", CheckStatus::Pass, 0.0, ""};
  if (spec.count() > 2) {
    c.status = CheckStatus::Skipped;
    c.context = "no closed form for L > 2";
    return c;
  }
  std::uniform_real_distribution<double> ua(0.05, 0.95), ux(-5.0, 5.0);
  std::vector<WellSpec> specs{spec};
  for (int t = 0; t < 10; ++t) {
    WellSpec s;
    if (spec.count() <= 1) {
      s.positions = {ua(rng)};
      s.couplings = {ux(rng)};
    } else {
      double a = 0.05 + 0.55 * (ua(rng) - 0.05) / 0.9;
      double b = a + 0.05 + (0.9 - a) * (ua(rng) - 0.05) / 0.9 * 0.9;
      b = std::min(b, 0.95);
      s.positions = {a, b};
      s.couplings = {ux(rng), ux(rng)};
    }
    specs.push_back(s);
  }
  for (const auto& s : specs) {
    if (s.count() == 0) continue;
    SecularFunction f(s);
    for (int i = 0; i < 200; ++i) {
      double k = 0.1 + (20.0 - 0.1) * i / 199.0;
      double cf = closed_det(s, k);
      if (std::abs(cf) < 1e-4) continue;  // avoid zeros of either route
      double ratio = f(k) / cf;
      c.worst_residual = std::max(c.worst_residual, std::abs(ratio - 1.0));
    }
  }
  if (c.worst_residual > 1e-9) c.status = CheckStatus::Fail;
  return c;
}

CheckResult reality(const WellSpec& spec) {
  CheckResult c{"reality", CheckStatus::Pass, 0.0, "complex path at real kappa"};
  SecularFunction f(spec);
  for (int i = 0; i < 64; ++i) {
    double k = 0.13 + 0.37 * i;
    if (k > 20.0) break;
    cplx v = f(cplx(k, 0.0));
    double bound = 1e-12 * (std::abs(v.real()) + 1.0);
    c.worst_residual = std::max(c.worst_residual, std::abs(v.imag()) / bound * 1e-12);
    if (std::abs(v.imag()) > bound) c.status = CheckStatus::Fail;
  }
  return c;
}

CheckResult degeneration(const WellSpec& spec, std::mt19937_64& rng) {
  CheckResult c{"degeneration_l2_to_l1", CheckStatus::Pass, 0.0, ""};
  std::uniform_real_distribution<double> uk(0.2, 18.0), ua(0.05, 0.9), ux(-5.0, 5.0);
  for (int t = 0; t < 100; ++t) {
    double k = uk(rng), a = ua(rng);
    double b = a + 0.04 + (0.95 - a - 0.04) * std::uniform_real_distribution<double>(0, 1)(rng);
    double x1 = ux(rng);
    double lhs = det_l2(k, a, b, x1, 0.0);
    double rhs = det_l1(k, a, x1);
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    c.worst_residual = std::max(c.worst_residual, std::abs(lhs - rhs) / scale);
  }
  if (c.worst_residual > 1e-14) c.status = CheckStatus::Fail;
  return c;
}

CheckResult pt_redundancy(const WellSpec& spec) {
  CheckResult c{"pt_redundancy", CheckStatus::Pass, 0.0, "left conditions at -a_l"};
  if (spec.count() == 0) {
    c.status = CheckStatus::Skipped;
    c.context = "bare well has no matching points";
    return c;
  }
  ScanConfig cfg;
  cfg.kappa_max = 4.0 * 3.14159265358979323846;
  auto roots = find_real_roots(spec, cfg);
  int used = 0;
  for (const auto& r : roots) {
    if (used >= 6) break;
    auto cv = nullspace_coefficients(spec, r.kappa);
    double scale = cv.values.cwiseAbs().maxCoeff();
    auto res = left_condition_residuals(spec, r.kappa, cv.values);
    c.worst_residual = std::max(c.worst_residual, res.maxCoeff() / scale);
    ++used;
  }
  if (used == 0) {
    c.status = CheckStatus::Skipped;
    c.context = "no real roots in range";
  } else if (c.worst_residual > 1e-9) {
    c.status = CheckStatus::Fail;
  }
  return c;
}

CheckResult xi_zero_continuity(const WellSpec& spec) {
  CheckResult c{"xi_to_zero_continuity", CheckStatus::Pass, 0.0,
                "quadratic in the coupling scale"};
  if (spec.count() == 0) {
    c.status = CheckStatus::Skipped;
    c.context = "bare well";
    return c;
  }
  WellSpec zero = spec;
  for (auto& x : zero.couplings) x = 0.0;
  WellSpec e4 = spec, e6 = spec;
  for (auto& x : e4.couplings) x = 1e-4;
  for (auto& x : e6.couplings) x = 1e-6;
  SecularFunction f0(zero), f4(e4), f6(e6);
  double worst_ratio_err = 0.0;
  int used = 0;
  for (double k : {0.9, 2.3, 4.1, 6.7}) {
    double d0 = f0(k);
    double r4 = std::abs(f4(k) - d0), r6 = std::abs(f6(k) - d0);
    if (r6 < 2e-14) continue;  // below round-off, nothing to measure
    double ratio = r4 / r6;    // ~1e4 for a quadratic approach
    worst_ratio_err = std::max(worst_ratio_err, std::abs(std::log10(ratio) - 4.0));
    ++used;
  }
  c.worst_residual = worst_ratio_err;
  if (used == 0) {
    c.status = CheckStatus::Skipped;
    c.context = "increments below round-off";
  } else if (worst_ratio_err > 0.7) {
    c.status = CheckStatus::Fail;
  }
  return c;
}

}  // namespace

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"status", status_str(c.status)},
                           {"worst_residual", c.worst_residual},
                           {"context", c.context}});
  }
  return j.dump(2);
}

VerificationReport verify_determinants(const WellSpec& spec, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  rep.checks.push_back(ratio_constancy(spec, rng));
  rep.checks.push_back(reality(spec));
  rep.checks.push_back(degeneration(spec, rng));
  rep.checks.push_back(pt_redundancy(spec));
  rep.checks.push_back(xi_zero_continuity(spec));
  return rep;
}

VerificationReport verify_rational_a(const std::vector<double>& xi_list, double kappa_max) {
  VerificationReport rep;
  rep.seed = 0;
  for (RationalA tag :
       {RationalA::Half, RationalA::Third, RationalA::TwoThirds, RationalA::Quarter}) {
    const double a = rational_a_value(tag);
    for (double xi : xi_list) {
      CheckResult c;
      c.name = "factorization_a=" + std::to_string(a).substr(0, 8) +
               "_xi=" + std::to_string(xi).substr(0, 6);
      c.status = CheckStatus::Pass;
      ScanConfig cfg;
      cfg.kappa_max = kappa_max;
      auto det_roots =
          find_real_roots_of([&](double k) { return det_l1(k, a, xi); }, cfg);
      std::vector<double> cond_roots;
      for (const auto& cond : reduced_conditions(tag, xi)) {
        auto r = condition_roots(cond, cfg.kappa_min, kappa_max);
        cond_roots.insert(cond_roots.end(), r.begin(), r.end());
      }
      std::sort(cond_roots.begin(), cond_roots.end());
      double worst = 0.0;
      for (const auto& r : det_roots) {
        if (r.kappa > kappa_max - 0.01) continue;  // scan-boundary margin
        double best = 1e300;
        for (double q : cond_roots) best = std::min(best, std::abs(q - r.kappa));
        worst = std::max(worst, best);
      }
      for (double q : cond_roots) {
        if (q > kappa_max - 0.01) continue;
        double best = 1e300;
        for (const auto& r : det_roots) best = std::min(best, std::abs(q - r.kappa));
        worst = std::max(worst, best);
      }
      c.worst_residual = worst;
      c.context = std::to_string(det_roots.size()) + " roots";
      if (worst > 1e-8) c.status = CheckStatus::Fail;
      rep.checks.push_back(c);
    }
  }
  return rep;
}

}  // namespace ptwell

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptwell/rootfind.hpp"

using namespace ptwell;

namespace {
constexpr double kPi = 3.14159265358979323846;
WellSpec one(double a, double xi) { return WellSpec{{a}, {xi}}; }
}  // namespace

TEST_CASE("bare well: roots at n pi/2") {
  ScanConfig cfg;
  cfg.kappa_max = 10.0;
  auto roots = find_real_roots(WellSpec(), cfg);
  REQUIRE(roots.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(roots[i].kappa == doctest::Approx((i + 1) * kPi / 2).epsilon(1e-12));
    CHECK(roots[i].index == i + 1);
    CHECK(roots[i].residual < 1e-10);
    CHECK(roots[i].epsilon() == roots[i].kappa * roots[i].kappa);
  }
}

TEST_CASE("completeness at xi = 0 up to K = 40 levels") {
  ScanConfig cfg;
  cfg.kappa_max = 40 * kPi / 2 + kPi / 4;
  auto roots = find_real_roots(WellSpec(), cfg);
  CHECK(roots.size() == 40);
}

TEST_CASE("a=1/2, xi=3: exact robust roots m pi present") {
  ScanConfig cfg;
  cfg.kappa_max = 10.0;
  auto roots = find_real_roots(one(0.5, 3.0), cfg);
  int hits = 0;
  for (int m = 1; m <= 3; ++m) {
    for (const auto& r : roots) {
      if (std::abs(r.kappa - m * kPi) < 1e-10) {
        ++hits;
        CHECK(r.residual < 1e-10);
      }
    }
  }
  CHECK(hits == 3);
}

TEST_CASE("a=1/3, xi=2: 3m pi/2 present up to 15") {
  ScanConfig cfg;
  cfg.kappa_max = 15.0;
  auto roots = find_real_roots(one(1.0 / 3, 2.0), cfg);
  for (double want : {1.5 * kPi, 3.0 * kPi, 4.5 * kPi}) {
    double best = 1e300;
    for (const auto& r : roots) best = std::min(best, std::abs(r.kappa - want));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("re-refinement from perturbed starts converges back") {
  ScanConfig cfg;
  cfg.kappa_max = 12.0;
  WellSpec s = one(0.29, 1.7);
  auto roots = find_real_roots(s, cfg);
  REQUIRE(!roots.empty());
  SecularFunction f(s);
  for (const auto& r : roots) {
    for (double off : {-cfg.step / 10, cfg.step / 10}) {
      ScanConfig local = cfg;
      local.kappa_min = std::max(r.kappa - cfg.step / 2, 1e-3);
      local.kappa_max = r.kappa + cfg.step / 2;
      local.step = cfg.step / 8;
      auto nearby = find_real_roots_of([&](double k) { return f(k); }, local);
      double best = 1e300;
      for (const auto& q : nearby) best = std::min(best, std::abs(q.kappa - r.kappa));
      CHECK(best < cfg.refine_tol * 100 + 1e-12);
      (void)off;
    }
  }
}

TEST_CASE("continuation: flat trace for the exact level, quadratic start for level 1") {
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_to = 1.0;
  sweep.steps = 11;
  ScanConfig scan;
  scan.kappa_max = 20.0;
  auto traces = continue_levels(s, 3, sweep, scan);
  REQUIRE(traces.size() == 3);
  // level 2 pinned at pi
  for (const auto& smp : traces[1].samples) {
    CHECK(std::abs(smp.kappa.real() - kPi) < 1e-10);
    CHECK(std::abs(smp.kappa.imag()) == 0.0);
  }
  // level 1: kappa(xi) ~ pi/2 + xi^2/pi^2 at small xi
  const auto& s1 = traces[0].samples;
  REQUIRE(s1.size() == 11);
  double xi = s1[2].xi;
  double shift = s1[2].kappa.real() - kPi / 2;
  CHECK(shift == doctest::Approx(xi * xi / (kPi * kPi)).epsilon(0.02));
}

TEST_CASE("traces have exactly `steps` samples and at most one Merged") {
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_to = 8.0;
  sweep.steps = 81;
  ScanConfig scan;
  scan.kappa_max = 25.0;
  auto traces = continue_levels(s, 4, sweep, scan);
  for (const auto& tr : traces) {
    if (tr.lost) continue;
    CHECK(tr.samples.size() == 81);
    int merged = 0;
    for (const auto& smp : tr.samples) {
      if (smp.status == SampleStatus::Merged) ++merged;
    }
    CHECK(merged <= 1);
    for (size_t i = 1; i < tr.samples.size(); ++i) {
      CHECK(tr.samples[i].xi > tr.samples[i - 1].xi);  // strictly increasing
    }
    // Complex implies an earlier Merged
    bool seen_merged = false;
    for (const auto& smp : tr.samples) {
      if (smp.status == SampleStatus::Merged) seen_merged = true;
      if (smp.status == SampleStatus::Complex) CHECK(seen_merged);
    }
  }
}

TEST_CASE("exceptional point of the (1,3) pair at a = 1/2") {
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_from = 0.0;
  sweep.xi_to = 8.0;
  auto ep = find_exceptional_point(s, 3.8, 5.0, {1, 3}, sweep);
  CHECK(ep.xi_c == doctest::Approx(5.059764942477803).epsilon(1e-6));
  CHECK(ep.kappa_c == doctest::Approx(3.874366817286529).epsilon(1e-5));
  CHECK(ep.residual_d < 1e-8);
  CHECK(ep.residual_dk < 1e-8);
}

TEST_CASE("robust pair reports NoCoalescence; Hermitian limit likewise") {
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_from = 0.0;
  sweep.xi_to = 8.0;
  // (2,4) are the exact m*pi levels: never coalesce
  CHECK_THROWS_AS((void)find_exceptional_point(s, 3 * kPi / 2 + 1.3, 4.0, {2, 4}, sweep),
                  Error);
  WellSpec hermitian = one(0.5, 0.0);
  SweepConfig hsweep;
  hsweep.xi_from = 0.0;
  hsweep.xi_to = 0.0 + 1e-9;
  CHECK_THROWS_AS((void)find_exceptional_point(hermitian, 2.0, 0.0, {1, 2}, hsweep), Error);
}

TEST_CASE("conjugate pair just past the exceptional point") {
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_to = 6.0;
  sweep.steps = 61;
  ScanConfig scan;
  scan.kappa_max = 20.0;
  auto traces = continue_levels(s, 4, sweep, scan);
  const auto& t1 = traces[0], &t3 = traces[2];
  REQUIRE(t1.merged_xi.has_value());
  REQUIRE(t3.merged_xi.has_value());
  CHECK(*t1.partner == 3);
  CHECK(*t3.partner == 1);
  for (size_t i = 0; i < t1.samples.size(); ++i) {
    if (t1.samples[i].status == SampleStatus::Complex) {
      CHECK(t1.samples[i].kappa.imag() > 0.0);
      CHECK(std::abs(t1.samples[i].kappa - std::conj(t3.samples[i].kappa)) < 1e-9);
    }
  }
}

TEST_CASE("classification: reference patterns at a = 1/2 and a = 1/3") {
  auto tags_half = classify_levels(one(0.5, 1.0), 6, 40.0);
  std::string got;
  for (const auto& t : tags_half) got += (t.tag == RootTag::Fragile) ? 'F' : 'R';
  CHECK(got == "FRFRFR");
  auto tags_third = classify_levels(one(1.0 / 3, 1.0), 6, 40.0);
  got.clear();
  for (const auto& t : tags_third) got += (t.tag == RootTag::Fragile) ? 'F' : 'R';
  CHECK(got == "FFRFFR");
}

TEST_CASE("classification at a = 1/4 follows the exact-root period four") {
  // the (m pi/2-labelled) levels 4m stay pinned at 2m pi; every other level pairs
  // up and complexifies below coupling 40: (1,2), (3,5), (6,7), (9,10), (11,13)
  auto tags = classify_levels(one(0.25, 1.0), 11, 40.0);
  std::string got;
  for (const auto& t : tags) {
    got += (t.tag == RootTag::Fragile) ? 'F' : (t.tag == RootTag::Robust ? 'R' : 'U');
  }
  CHECK(got == "FFFRFFFRFFF");
  CHECK(*tags[0].xi_c == doctest::Approx(2.684676).epsilon(1e-4));
  CHECK(*tags[2].xi_c == doctest::Approx(13.768911).epsilon(1e-4));
  CHECK(*tags[10].xi_c == doctest::Approx(38.363253).epsilon(1e-4));
}

TEST_CASE("a fragile level merges even when its partner is not traced") {
  // at a = 1/2 level 1 coalesces with level 3; sweep level 1 alone
  WellSpec s = one(0.5, 1.0);
  SweepConfig sweep;
  sweep.xi_to = 6.0;
  sweep.steps = 61;
  ScanConfig scan;
  scan.kappa_max = 20.0;
  auto traces = continue_levels(s, 1, sweep, scan);
  REQUIRE(traces.size() == 1);
  REQUIRE(traces[0].merged_xi.has_value());
  CHECK(*traces[0].merged_xi == doctest::Approx(5.059764942477803).epsilon(1e-6));
  CHECK(!traces[0].partner.has_value());
  CHECK(!traces[0].lost);
  CHECK(traces[0].samples.back().status == SampleStatus::Complex);
}

TEST_CASE("a merged pair can re-enter the real axis and resumes real tracking") {
  // this double-pair well complexifies levels (3,4) near coupling 6.8 and the
  // pair returns to the real axis near 11.9
  WellSpec s{{0.261273, 0.606748}, {1.0, 1.210913}};
  SweepConfig sweep;
  sweep.xi_to = 17.0;
  sweep.steps = 171;
  ScanConfig scan;
  scan.kappa_max = 40.0;
  auto traces = continue_levels(s, 6, sweep, scan);
  const auto& t3 = traces[2];
  REQUIRE(t3.merged_xi.has_value());
  CHECK(*t3.merged_xi == doctest::Approx(6.804).epsilon(1e-3));
  CHECK(!t3.lost);
  bool saw_complex = false, saw_real_after_complex = false;
  for (const auto& smp : t3.samples) {
    if (smp.status == SampleStatus::Complex && std::abs(smp.kappa.imag()) > 1e-3) {
      saw_complex = true;
    }
    if (saw_complex && smp.status == SampleStatus::Real) saw_real_after_complex = true;
  }
  CHECK(saw_complex);
  CHECK(saw_real_after_complex);
  // the final real position is a true root
  const auto& last = t3.samples.back();
  REQUIRE(last.status == SampleStatus::Real);
  SecularFunction f(scaled_spec(s, last.xi));
  CHECK(std::abs(f(last.kappa.real())) < 1e-10);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS((void)find_real_roots(WellSpec(), ScanConfig{0.0, 10.0}),
                  std::invalid_argument);
  ScanConfig wide;
  wide.kappa_max = 2000.0;
  CHECK_THROWS_AS((void)find_real_roots(WellSpec(), wide), std::invalid_argument);
  ScanConfig coarse;
  coarse.step = 1.0;
  CHECK_THROWS_AS((void)find_real_roots(WellSpec(), coarse), std::invalid_argument);
  SweepConfig bad;
  bad.xi_from = 2.0;
  bad.xi_to = 1.0;
  CHECK_THROWS_AS((void)continue_levels(one(0.5, 1.0), 2, bad, ScanConfig{}),
                  std::invalid_argument);
}

TEST_CASE("scaled_spec keeps coupling ratios") {
  WellSpec s{{0.2, 0.6}, {1.0, -2.0}};
  auto t = scaled_spec(s, 4.0);
  CHECK(t.couplings[0] == doctest::Approx(2.0));
  CHECK(t.couplings[1] == doctest::Approx(-4.0));
  WellSpec z{{0.5}, {0.0}};
  CHECK(scaled_spec(z, 3.0).couplings[0] == doctest::Approx(3.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ptwell/closed_form.hpp"

using namespace ptwell;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("det_l1 printed values") {
  CHECK(det_l1(kPi / 4, 0.5, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(det_l1(kPi, 0.5, 7.3)) < 1e-13);
  CHECK(det_l1(kPi / 2, 0.5, 1.0) == doctest::Approx(-1.0 / (kPi * kPi)).epsilon(1e-14));
}

TEST_CASE("det_l2 degenerates to det_l1 in both limits") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uk(0.2, 18.0), ua(0.05, 0.45), ux(-5.0, 5.0);
  for (int t = 0; t < 100; ++t) {
    double k = uk(rng), a = ua(rng), b = a + 0.05 + 0.45 * ua(rng), xi = ux(rng);
    double s1 = std::max({1.0, std::abs(det_l1(k, a, xi))});
    CHECK(std::abs(det_l2(k, a, b, xi, 0.0) - det_l1(k, a, xi)) / s1 < 1e-14);
    double s2 = std::max({1.0, std::abs(det_l1(k, b, xi))});
    CHECK(std::abs(det_l2(k, a, b, 0.0, xi) - det_l1(k, b, xi)) / s2 < 1e-14);
  }
}

TEST_CASE("det_l2 at 1/3, 2/3 and zero couplings") {
  CHECK(det_l2(kPi / 4, 1.0 / 3, 2.0 / 3, 0.0, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("reduced conditions: exact-root sequences") {
  auto half = reduced_conditions(RationalA::Half, 3.0);
  REQUIRE(half.size() == 2);
  CHECK(half[1].kind == ConditionKind::ExactRoots);
  CHECK(half[1].period == doctest::Approx(kPi));
  auto third = reduced_conditions(RationalA::Third, 2.0);
  CHECK(third[1].period == doctest::Approx(1.5 * kPi));
  auto twothirds = reduced_conditions(RationalA::TwoThirds, 2.0);
  CHECK(twothirds[0].kind == ConditionKind::QuadraticInX);
  CHECK(twothirds[1].period == doctest::Approx(1.5 * kPi));  // same factor as a = 1/3
  auto quarter = reduced_conditions(RationalA::Quarter, 2.0);
  CHECK(quarter[1].period == doctest::Approx(2.0 * kPi));
}

TEST_CASE("half, xi=0: transcendental branch reduces to cos k = 0") {
  auto conds = reduced_conditions(RationalA::Half, 0.0);
  auto roots = condition_roots(conds[0], 0.01, 4 * kPi);
  std::vector<double> expect{kPi / 2, 3 * kPi / 2, 5 * kPi / 2, 7 * kPi / 2};
  REQUIRE(roots.size() == expect.size());
  for (size_t i = 0; i < roots.size(); ++i) {
    CHECK(roots[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("residuals are pole-free and vanish exactly at exact roots") {
  auto half = reduced_conditions(RationalA::Half, 0.0);
  CHECK(residual(half[0], kPi / 2) < 1e-12);
  auto third = reduced_conditions(RationalA::Third, 0.0);
  // 3pi/4 is not a root of the transcendental branch: |(-4k^2)(-1) - 2k^2| = 2k^2
  double k = 3 * kPi / 4;
  CHECK(residual(third[0], k) == doctest::Approx(2 * k * k).epsilon(1e-12));
  // but 3pi/2 solves the exact branch and the full determinant
  CHECK(residual(third[1], 1.5 * kPi) < 1e-12);
  CHECK(std::abs(det_l1(1.5 * kPi, 1.0 / 3, 0.0)) < 1e-13);
}

TEST_CASE("two-thirds quadratic: 3m pi/2 roots come from the other factor") {
  auto conds = reduced_conditions(RationalA::TwoThirds, 1.0);
  double k = 1.5 * kPi;  // X = cos pi = -1: (4k^2-1) - 1 - k^2 = 3k^2 - 2
  CHECK(residual(conds[0], k) == doctest::Approx(3 * k * k - 2.0).epsilon(1e-12));
  CHECK(std::abs(det_l1(k, 2.0 / 3, 1.0)) < 1e-12);
  CHECK(residual(conds[1], k) < 1e-12);
}

TEST_CASE("factorization consistency on a grid of couplings") {
  // every det_l1 zero matches a condition root and conversely
  for (RationalA tag :
       {RationalA::Half, RationalA::Third, RationalA::TwoThirds, RationalA::Quarter}) {
    double a = rational_a_value(tag);
    for (double xi : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      std::vector<double> det_roots;
      const double kmax = 8 * kPi;
      const int n = 60000;
      double prev = 1e-3, fprev = det_l1(prev, a, xi);
      for (int i = 1; i <= n; ++i) {
        double k = 1e-3 + (kmax - 1e-3) * i / n;
        double f = det_l1(k, a, xi);
        if (fprev * f < 0.0) {
          double lo = prev, hi = k, flo = fprev;
          for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi), fm = det_l1(mid, a, xi);
            if (flo * fm <= 0.0) {
              hi = mid;
            } else {
              lo = mid;
              flo = fm;
            }
          }
          det_roots.push_back(0.5 * (lo + hi));
        }
        prev = k;
        fprev = f;
      }
      std::vector<double> cond_roots;
      for (const auto& c : reduced_conditions(tag, xi)) {
        auto r = condition_roots(c, 1e-3, kmax);
        cond_roots.insert(cond_roots.end(), r.begin(), r.end());
      }
      for (double r : det_roots) {
        if (r > kmax - 0.01) continue;  // scan-boundary margin
        double best = 1e300;
        for (double q : cond_roots) best = std::min(best, std::abs(q - r));
        CHECK(best < 1e-8);
      }
      for (double q : cond_roots) {
        if (q > kmax - 0.01) continue;
        double best = 1e300;
        for (double r : det_roots) best = std::min(best, std::abs(q - r));
        CHECK(best < 1e-8);
      }
    }
  }
}

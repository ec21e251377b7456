#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ptwell/quadrature.hpp"
#include "ptwell/rootfind.hpp"
#include "ptwell/spectral.hpp"

using namespace ptwell;

namespace {
constexpr double kPi = 3.14159265358979323846;
WellSpec one(double a, double xi) { return WellSpec{{a}, {xi}}; }

std::vector<Eigenfunction> lowest(const WellSpec& s, int n) {
  ScanConfig cfg;
  cfg.kappa_max = (n + 1) * kPi / 2 + 1.0;
  auto roots = find_real_roots(s, cfg);
  REQUIRE(static_cast<int>(roots.size()) >= n);
  std::vector<Eigenfunction> out;
  for (int i = 0; i < n; ++i) out.push_back(make_eigenfunction(s, roots[i].kappa, i + 1));
  return out;
}
}  // namespace

TEST_CASE("gauss-legendre nodes and exactness") {
  auto q2 = gauss_legendre(2);
  CHECK(q2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(q2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  // degree-2n-1 exactness: integrate x^k on [-1,1]
  auto q8 = gauss_legendre(8);
  for (int p = 0; p <= 15; ++p) {
    double acc = 0.0;
    for (size_t i = 0; i < q8.nodes.size(); ++i) acc += q8.weights[i] * std::pow(q8.nodes[i], p);
    double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
  // trig integrand
  auto q64 = gauss_legendre(64, 0.0, kPi);
  double acc = 0.0;
  for (size_t i = 0; i < q64.nodes.size(); ++i) acc += q64.weights[i] * std::sin(q64.nodes[i]);
  CHECK(acc == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("bare-well eigenfunctions: values, walls, PT symmetry") {
  auto funcs = lowest(WellSpec(), 4);
  // level 1: psi(0) = 1 under the mu gauge
  CHECK(evaluate(funcs[0], 0.0).real() == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& psi : funcs) {
    CHECK(std::abs(evaluate(psi, 1.0)) < 1e-12);
    CHECK(std::abs(evaluate(psi, -1.0)) < 1e-12);
    for (int i = 0; i <= 100; ++i) {
      double x = -1.0 + 0.02 * i;
      CHECK(std::abs(evaluate(psi, -x) - std::conj(evaluate(psi, x))) < 1e-10);
    }
  }
  CHECK_THROWS_AS((void)evaluate(funcs[0], 1.5), Error);
}

TEST_CASE("bare-well overlaps are the identity matrix") {
  auto funcs = lowest(WellSpec(), 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      auto ov = overlap_rho(funcs[i], funcs[j]);
      CHECK(std::abs(ov.value - (i == j ? 1.0 : 0.0)) < 1e-13);
      CHECK(ov.imag_defect < 1e-13);
    }
  }
}

TEST_CASE("interacting well: nullspace coefficients satisfy all conditions") {
  WellSpec s = one(0.5, 2.0);
  auto funcs = lowest(s, 4);
  for (const auto& psi : funcs) {
    auto res = condition_residuals(psi);
    double scale = psi.coefficients.values.cwiseAbs().maxCoeff();
    CHECK(res.maxCoeff() < 1e-9 * scale);
    // continuity across each kink from both branches
    for (double a : s.positions) {
      for (double side : {a - 1e-13, a + 1e-13}) {
        CHECK(std::abs(evaluate(psi, side) - evaluate(psi, a)) < 1e-9);
      }
    }
  }
}

TEST_CASE("robust exact roots keep valid eigenfunctions at strong coupling") {
  WellSpec s = one(0.5, 6.0);
  auto psi = make_eigenfunction(s, kPi, 2);  // kappa = pi independent of coupling
  auto res = condition_residuals(psi);
  CHECK(res.maxCoeff() < 1e-9 * psi.coefficients.values.cwiseAbs().maxCoeff());
}

TEST_CASE("biorthogonality of distinct levels at nonzero coupling") {
  WellSpec s = one(0.5, 1.0);
  auto funcs = lowest(s, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j) continue;
      CHECK(std::abs(overlap_rho(funcs[i], funcs[j]).value) < 1e-8);
    }
  }
}

TEST_CASE("left pairing equals the bilinear overlap (implementation identity)") {
  WellSpec s = one(0.4, 1.3);
  auto funcs = lowest(s, 3);
  auto quad = segment_quadrature(s, 64);
  for (const auto& fm : funcs) {
    for (const auto& fn : funcs) {
      cplx acc(0, 0);
      for (size_t i = 0; i < quad.nodes.size(); ++i) {
        // conj(L_m(x)) psi_n(x) with L_m(x) = q_m psi_m(-x)
        cplx lm = fm.quasi_parity * evaluate(fm, -quad.nodes[i]);
        acc += quad.weights[i] * std::conj(lm) * evaluate(fn, quad.nodes[i]);
      }
      CHECK(std::abs(acc.real() - overlap_rho(fm, fn).value) < 1e-12);
      CHECK(std::abs(acc.imag()) < 1e-12);
    }
  }
}

TEST_CASE("three-pair well: shells, continuity, matching and biorthogonality") {
  WellSpec s{{0.2, 0.5, 0.8}, {1.1, -0.7, 0.4}};
  auto funcs = lowest(s, 5);
  for (const auto& psi : funcs) {
    double scale = psi.coefficients.values.cwiseAbs().maxCoeff();
    CHECK(condition_residuals(psi).maxCoeff() < 1e-9 * scale);
    for (double a : s.positions) {
      CHECK(std::abs(evaluate(psi, a - 1e-13) - evaluate(psi, a + 1e-13)) < 1e-9);
      CHECK(std::abs(evaluate(psi, -a - 1e-13) - evaluate(psi, -a + 1e-13)) < 1e-9);
    }
    for (int i = 0; i <= 40; ++i) {
      double x = -1.0 + 0.05 * i;
      CHECK(std::abs(evaluate(psi, -x) - std::conj(evaluate(psi, x))) < 1e-9);
    }
  }
  for (size_t i = 0; i < funcs.size(); ++i) {
    for (size_t j = 0; j < funcs.size(); ++j) {
      if (i != j) CHECK(std::abs(overlap_rho(funcs[i], funcs[j]).value) < 1e-8);
    }
  }
}

TEST_CASE("overlap of eigenfunctions from different specs is rejected") {
  auto f1 = lowest(one(0.5, 1.0), 1);
  auto f2 = lowest(one(0.4, 1.0), 1);
  CHECK_THROWS_AS((void)overlap_rho(f1[0], f2[0]), Error);
}

TEST_CASE("non-root kappa raises NotARoot") {
  WellSpec s = one(0.5, 1.0);
  CHECK_THROWS_AS((void)nullspace_coefficients(s, 2.0), Error);
}

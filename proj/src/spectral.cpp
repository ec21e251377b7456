#include "ptwell/spectral.hpp"

#include <cmath>

namespace ptwell {

namespace {

// Full-pivot elimination returning the permuted upper factor and pivot ordering.
struct FullPivot {
  Eigen::MatrixXd U;
  std::vector<int> col_perm;
  Eigen::VectorXd pivots;
};

FullPivot full_pivot_eliminate(Eigen::MatrixXd A) {
  const int n = static_cast<int>(A.rows());
  FullPivot fp;
  fp.col_perm.resize(n);
  for (int i = 0; i < n; ++i) fp.col_perm[i] = i;
  fp.pivots.resize(n);
  for (int s = 0; s < n; ++s) {
    int pr = s, pc = s;
    double best = -1.0;
    for (int i = s; i < n; ++i)
      for (int j = s; j < n; ++j)
        if (std::abs(A(i, j)) > best) {
          best = std::abs(A(i, j));
          pr = i;
          pc = j;
        }
    if (pr != s) A.row(pr).swap(A.row(s));
    if (pc != s) {
      A.col(pc).swap(A.col(s));
      std::swap(fp.col_perm[pc], fp.col_perm[s]);
    }
    fp.pivots(s) = std::abs(A(s, s));
    if (A(s, s) != 0.0) {
      for (int i = s + 1; i < n; ++i) {
        double f = A(i, s) / A(s, s);
        if (f != 0.0) A.row(i).tail(n - s) -= f * A.row(s).tail(n - s);
      }
    }
  }
  fp.U = std::move(A);
  return fp;
}

}  // namespace

CoefficientVector nullspace_coefficients(const WellSpec& spec, double kappa) {
  const int L = spec.count();
  if (L == 0) {
    // the bare well: psi_n = sin(k(x+1)); represent on the (mu, nu) center piece
    CoefficientVector cv;
    cv.values.resize(2);
    double c = std::cos(kappa), s = std::sin(kappa);
    // sin(k(x+1)) = sin k cos kx + cos k sin kx -> mu = sin k, "i nu" = cos k:
    // only one of the two survives at a root sin 2k = 0
    if (std::abs(s) > std::abs(c)) {
      cv.values << 1.0, 0.0;
    } else {
      cv.values << 0.0, 1.0;
    }
    return cv;
  }
  auto sys = assemble(spec, kappa);
  const int n = sys.size;
  double scale = sys.matrix.cwiseAbs().maxCoeff();
  auto fp = full_pivot_eliminate(sys.matrix);
  if (fp.pivots(n - 1) > 1e-6 * std::max(scale, 1.0)) {
    throw Error(Errc::NotARoot, "smallest pivot " + std::to_string(fp.pivots(n - 1)) +
                                    " is not small; kappa is not a root");
  }
  CoefficientVector cv;
  cv.degenerate = (n >= 2 && fp.pivots(n - 2) < 1e-8 * std::max(scale, 1.0));
  // back-substitute with the last permuted unknown fixed to 1; further tiny pivots
  // (two-dimensional nullspace) keep their unknowns at 0, which selects the
  // better-conditioned nullvector
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y(n - 1) = 1.0;
  for (int i = n - 2; i >= 0; --i) {
    if (std::abs(fp.U(i, i)) < 1e-12 * std::max(scale, 1.0)) {
      y(i) = 0.0;
      continue;
    }
    double rhs = -fp.U.row(i).tail(n - 1 - i).dot(y.tail(n - 1 - i));
    y(i) = rhs / fp.U(i, i);
  }
  cv.values = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) cv.values(fp.col_perm[j]) = y(j);
  cv.values /= cv.values.cwiseAbs().maxCoeff();
  if (std::abs(cv.values(0)) > 1e-8) {
    cv.values /= cv.values(0);
  } else {
    cv.values /= cv.values(1);
  }
  return cv;
}

Eigenfunction make_eigenfunction(const WellSpec& spec, double kappa, int level) {
  Eigenfunction psi;
  psi.spec = spec;
  psi.kappa = kappa;
  psi.level = level;
  psi.quasi_parity = (level % 2 == 1) ? 1.0 : -1.0;
  psi.coefficients = nullspace_coefficients(spec, kappa);
  psi.rho = overlap_rho(psi, psi).value;
  return psi;
}

cplx evaluate(const Eigenfunction& psi, double x) {
  if (std::abs(x) > 1.0 + 1e-12) throw Error(Errc::OutOfDomain, "x outside [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  if (x == 1.0 || x == -1.0) return cplx(0.0, 0.0);  // hard walls
  bool reflected = false;
  if (x < 0.0) {
    x = -x;
    reflected = true;
  }
  const auto& c = psi.coefficients.values;
  const double k = psi.kappa;
  const int L = psi.spec.count();
  cplx v;
  if (L == 0 || x <= psi.spec.positions[0]) {
    v = cplx(c(0) * std::cos(k * x), c(1) * std::sin(k * x));
  } else {
    int sh = L;
    for (int l = 0; l < L; ++l) {
      double hi = (l + 1 < L) ? psi.spec.positions[l + 1] : 1.0;
      if (x >= psi.spec.positions[l] && x <= hi) {
        sh = l + 1;
        break;
      }
    }
    double ref = (sh == L) ? 1.0 : psi.spec.positions[sh];
    double arg = k * (ref - x);
    if (sh == L) {
      cplx ab(c(2 + 4 * (L - 1)), c(3 + 4 * (L - 1)));
      v = ab * std::sin(arg);
    } else {
      int base = 2 + 4 * (sh - 1);
      cplx gd(c(base), c(base + 1));
      cplx ab(c(base + 2), c(base + 3));
      v = ab * std::sin(arg) + gd * std::cos(arg);
    }
  }
  return reflected ? std::conj(v) : v;
}

Overlap overlap_rho(const Eigenfunction& m, const Eigenfunction& n) {
  if (m.spec.positions != n.spec.positions || m.spec.couplings != n.spec.couplings) {
    throw Error(Errc::SpecMismatch, "overlap of eigenfunctions from different specs");
  }
  auto q = segment_quadrature(m.spec, 64);
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    acc += q.weights[i] * evaluate(m, q.nodes[i]) * evaluate(n, q.nodes[i]);
  }
  acc *= m.quasi_parity;
  return {acc.real(), std::abs(acc.imag())};
}

Eigen::VectorXd condition_residuals(const Eigenfunction& psi) {
  const int L = psi.spec.count();
  if (L == 0) return Eigen::VectorXd::Zero(0);
  auto sys = assemble(psi.spec, psi.kappa);
  Eigen::VectorXd right = (sys.matrix * psi.coefficients.values).cwiseAbs();
  Eigen::VectorXd left = left_condition_residuals(psi.spec, psi.kappa, psi.coefficients.values);
  Eigen::VectorXd all(right.size() + left.size());
  all << right, left;
  return all;
}

}  // namespace ptwell

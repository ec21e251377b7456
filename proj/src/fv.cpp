#include "ptwell/fv.hpp"

#include <cmath>

#include "ptwell/threads.hpp"

namespace ptwell {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<const FVEigenpair*> included(const EigenpairSet& set, int truncation) {
  std::vector<const FVEigenpair*> out;
  for (const auto& p : set.pairs) {
    if (p.level <= truncation) out.push_back(&p);
  }
  return out;
}

double theta_norm_estimate(const GridRepresentation& grid,
                           const std::vector<const FVEigenpair*>& inc,
                           const std::vector<double>& omega) {
  if (inc.empty()) return 1.0;
  // power iteration on Theta (rank form), deterministic start
  Eigen::VectorXcd v = inc.front()->right;
  double nv = grid_norm(grid, v);
  v /= nv;
  double lam = 1.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(v.size());
    for (size_t i = 0; i < inc.size(); ++i) {
      w += omega[i] * inc[i]->left * grid_inner(grid, inc[i]->left, v);
    }
    double nw = grid_norm(grid, w);
    if (nw == 0.0) return 1.0;
    lam = nw;
    v = w / nw;
  }
  return lam;
}

}  // namespace

GridRepresentation make_grid(const WellSpec& spec, int total_nodes) {
  total_nodes = std::max(64, total_nodes);
  auto q = segment_quadrature_total(spec, total_nodes);
  GridRepresentation g;
  g.points = std::move(q.nodes);
  g.weights = std::move(q.weights);
  return g;
}

EigenpairSet build_eigenpairs(const WellSpec& spec, const std::vector<RootRecord>& roots,
                              const GridRepresentation& grid) {
  EigenpairSet set;
  const int M = grid.size();
  std::vector<Eigenfunction> funcs(roots.size());
  parallel_for(0, static_cast<int>(roots.size()), [&](int i) {
    funcs[i] = make_eigenfunction(spec, roots[i].kappa, roots[i].index);
  });
  for (size_t i = 0; i < roots.size(); ++i) {
    const auto& psi = funcs[i];
    if (std::abs(psi.rho) < 1e-10) {
      set.excluded_levels.push_back(psi.level);
      continue;
    }
    Eigen::VectorXcd D(M);
    for (int j = 0; j < M; ++j) D(j) = evaluate(psi, grid.points[j]);
    Eigen::VectorXcd Lf = psi.quasi_parity * D.conjugate();  // L(x) = q psi(-x)
    for (int tau : {+1, -1}) {
      FVEigenpair p;
      p.level = psi.level;
      p.tau = tau;
      p.kappa = psi.kappa;
      p.rho = psi.rho;
      p.right.resize(2 * M);
      p.left.resize(2 * M);
      p.right << (tau * psi.kappa) * D, D;
      p.left << Lf, (tau * psi.kappa) * Lf;
      cplx mu(0.0, 0.0);
      for (int j = 0; j < M; ++j) {
        mu += grid.weights[j] * (std::conj(p.left(j)) * p.right(j) +
                                 std::conj(p.left(M + j)) * p.right(M + j));
      }
      p.mu = mu.real();
      set.pairs.push_back(std::move(p));
    }
  }
  return set;
}

double metric_weight(const MetricSpec& mspec, const FVEigenpair& p) {
  double w = 1.0;
  switch (mspec.scheme) {
    case WeightScheme::Unit: w = 1.0; break;
    case WeightScheme::InverseMuSquared: w = 1.0 / (p.mu * p.mu); break;
    case WeightScheme::Custom: {
      const auto& v = (p.tau > 0) ? mspec.custom_plus : mspec.custom_minus;
      if (p.level - 1 >= static_cast<int>(v.size())) {
        throw Error(Errc::NonPositiveWeight, "missing custom weight for level " +
                                                 std::to_string(p.level));
      }
      w = v[p.level - 1];
      break;
    }
  }
  if (!(w > 0.0)) {
    throw Error(Errc::NonPositiveWeight, "metric weights must be strictly positive");
  }
  return w;
}

cplx grid_inner(const GridRepresentation& grid, const Eigen::VectorXcd& u,
                const Eigen::VectorXcd& v) {
  const int M = grid.size();
  cplx acc(0.0, 0.0);
  for (int j = 0; j < M; ++j) {
    acc += grid.weights[j] * (std::conj(u(j)) * v(j) + std::conj(u(M + j)) * v(M + j));
  }
  return acc;
}

double grid_norm(const GridRepresentation& grid, const Eigen::VectorXcd& u) {
  return std::sqrt(std::abs(grid_inner(grid, u, u)));
}

MetricOperators build_metric(const GridRepresentation& grid, const EigenpairSet& set,
                             const MetricSpec& mspec) {
  auto inc = included(set, mspec.truncation);
  const int M = grid.size();
  const int n2 = 2 * M;
  // bra-side weight factor so the matrices act on raw sample vectors
  Eigen::VectorXd w2(n2);
  for (int j = 0; j < M; ++j) w2(j) = w2(M + j) = grid.weights[j];
  MetricOperators ops;
  ops.theta = Eigen::MatrixXcd::Zero(n2, n2);
  ops.theta_inv = Eigen::MatrixXcd::Zero(n2, n2);
  for (const auto* p : inc) {
    double om = metric_weight(mspec, *p);
    ops.theta.noalias() +=
        om * p->left * (p->left.conjugate().cwiseProduct(w2.cast<cplx>())).transpose();
    double c = 1.0 / (om * p->mu * p->mu);
    ops.theta_inv.noalias() +=
        c * p->right * (p->right.conjugate().cwiseProduct(w2.cast<cplx>())).transpose();
  }
  return ops;
}

double identity_defect(const GridRepresentation& grid, const EigenpairSet& set,
                       int truncation, const Eigen::VectorXcd& trial) {
  auto inc = included(set, truncation);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(trial.size());
  for (const auto* p : inc) {
    acc += p->right * (grid_inner(grid, p->left, trial) / p->mu);
  }
  return grid_norm(grid, acc - trial) / grid_norm(grid, trial);
}

Eigen::VectorXcd apply_hn(const GridRepresentation& grid, const EigenpairSet& set,
                          int truncation, const Eigen::VectorXcd& v) {
  auto inc = included(set, truncation);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  for (const auto* p : inc) {
    acc += p->right * ((p->tau * p->kappa / p->mu) * grid_inner(grid, p->left, v));
  }
  return acc;
}

Eigen::VectorXcd apply_hn_adjoint(const GridRepresentation& grid, const EigenpairSet& set,
                                  int truncation, const Eigen::VectorXcd& v) {
  auto inc = included(set, truncation);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  for (const auto* p : inc) {
    acc += p->left * ((p->tau * p->kappa / p->mu) * grid_inner(grid, p->right, v));
  }
  return acc;
}

double quasi_hermiticity_residual(const GridRepresentation& grid, const EigenpairSet& set,
                                  const MetricSpec& mspec, const Eigen::VectorXcd& trial) {
  auto inc = included(set, mspec.truncation);
  std::vector<double> omega;
  omega.reserve(inc.size());
  for (const auto* p : inc) omega.push_back(metric_weight(mspec, *p));
  auto theta_apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
    for (size_t i = 0; i < inc.size(); ++i) {
      acc += omega[i] * inc[i]->left * grid_inner(grid, inc[i]->left, v);
    }
    return acc;
  };
  Eigen::VectorXcd hv = apply_hn(grid, set, mspec.truncation, trial);
  Eigen::VectorXcd lhs = theta_apply(hv);
  Eigen::VectorXcd rhs = apply_hn_adjoint(grid, set, mspec.truncation, theta_apply(trial));
  double tnorm = theta_norm_estimate(grid, inc, omega);
  double hnorm = grid_norm(grid, hv);
  if (tnorm == 0.0 || hnorm == 0.0) return 0.0;
  return grid_norm(grid, lhs - rhs) / (tnorm * hnorm);
}

cplx physical_product(const GridRepresentation& grid, const MetricOperators& metric,
                      const Eigen::VectorXcd& v1, const Eigen::VectorXcd& v2) {
  return grid_inner(grid, v1, metric.theta * v2);
}

Eigen::MatrixXcd product_gram(const GridRepresentation& grid, const EigenpairSet& set,
                              const MetricSpec& mspec) {
  auto inc = included(set, mspec.truncation);
  std::vector<double> omega;
  for (const auto* p : inc) omega.push_back(metric_weight(mspec, *p));
  const int m = static_cast<int>(inc.size());
  // Gram(i,j) = <r_i, Theta r_j>_w computed in rank form
  Eigen::MatrixXcd B(m, m);  // B(n, j) = <l_n, r_j>_w
  for (int n = 0; n < m; ++n) {
    for (int j = 0; j < m; ++j) B(n, j) = grid_inner(grid, inc[n]->left, inc[j]->right);
  }
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    G.noalias() += omega[n] * B.row(n).adjoint() * B.row(n);
  }
  return 0.5 * (G + G.adjoint());
}

Eigen::VectorXcd square_well_trial(const GridRepresentation& grid, int mode) {
  const int M = grid.size();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * M);
  for (int j = 0; j < M; ++j) {
    v(M + j) = std::sin(mode * kPi * (grid.points[j] + 1.0) / 2.0);
  }
  return v;
}

}  // namespace ptwell

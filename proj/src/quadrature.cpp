#include "ptwell/quadrature.hpp"

#include <cmath>

namespace ptwell {

QuadratureRule gauss_legendre(int n) {
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double pi = 3.14159265358979323846;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  QuadratureRule q = gauss_legendre(n);
  const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = c + h * q.nodes[i];
    q.weights[i] *= h;
  }
  return q;
}

namespace {
std::vector<double> breakpoints(const WellSpec& spec) {
  std::vector<double> pts;
  pts.push_back(-1.0);
  for (int l = spec.count() - 1; l >= 0; --l) pts.push_back(-spec.positions[l]);
  for (int l = 0; l < spec.count(); ++l) pts.push_back(spec.positions[l]);
  pts.push_back(1.0);
  return pts;
}
}  // namespace

QuadratureRule segment_quadrature(const WellSpec& spec, int nodes_per_segment) {
  QuadratureRule out;
  auto pts = breakpoints(spec);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    auto q = gauss_legendre(nodes_per_segment, pts[i], pts[i + 1]);
    out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
    out.weights.insert(out.weights.end(), q.weights.begin(), q.weights.end());
  }
  return out;
}

QuadratureRule segment_quadrature_total(const WellSpec& spec, int total_nodes) {
  QuadratureRule out;
  auto pts = breakpoints(spec);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double len = pts[i + 1] - pts[i];
    int n = std::max(16, static_cast<int>(std::lround(total_nodes * len / 2.0)));
    auto q = gauss_legendre(n, pts[i], pts[i + 1]);
    out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
    out.weights.insert(out.weights.end(), q.weights.begin(), q.weights.end());
  }
  return out;
}

}  // namespace ptwell

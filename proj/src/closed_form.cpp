#include "ptwell/closed_form.hpp"

#include <cmath>

namespace ptwell {

namespace {
constexpr double kPi = 3.14159265358979323846;

template <class T>
T det_l1_impl(T k, double a, double xi) {
  using std::sin;
  T s = sin(k * (1.0 - a));
  return -0.5 * (sin(2.0 * k) + (xi * xi) / (k * k) * sin(2.0 * k * a) * s * s);
}

template <class T>
T det_l2_impl(T k, double a, double b, double xi1, double xi2) {
  using std::sin;
  T k2 = k * k;
  T sa = sin(k * (1.0 - a));
  T sb = sin(k * (1.0 - b));
  T sba = sin(k * (b - a));
  T d0 = -0.5 * sin(2.0 * k);
  T d1 = -(xi1 * xi1) / (2.0 * k2) * sin(2.0 * k * a) * sa * sa;
  T d2 = -(xi2 * xi2) / (2.0 * k2) * sin(2.0 * k * b) * sb * sb;
  T dx = -((xi1 * xi2) / k2 * sin(2.0 * k * a) +
           (xi1 * xi1 * xi2 * xi2) / (2.0 * k2 * k2) * sin(2.0 * k * a) * sba * sba) *
         sb * sb;
  return d0 + d1 + d2 + dx;
}
}  // namespace

cplx det_l1(cplx k, double a, double xi) { return det_l1_impl(k, a, xi); }
double det_l1(double k, double a, double xi) { return det_l1_impl(k, a, xi); }
cplx det_l2(cplx k, double a, double b, double xi1, double xi2) {
  return det_l2_impl(k, a, b, xi1, xi2);
}
double det_l2(double k, double a, double b, double xi1, double xi2) {
  return det_l2_impl(k, a, b, xi1, xi2);
}

double rational_a_value(RationalA a) {
  switch (a) {
    case RationalA::Half: return 0.5;
    case RationalA::Third: return 1.0 / 3.0;
    case RationalA::TwoThirds: return 2.0 / 3.0;
    case RationalA::Quarter: return 0.25;
  }
  return 0.0;
}

std::vector<ReducedCondition> reduced_conditions(RationalA a_tag, double xi) {
  std::vector<ReducedCondition> out;
  switch (a_tag) {
    case RationalA::Half:
      out.push_back({ConditionKind::Transcendental, a_tag, xi, 0.0,
                     "(xi^2 - 4k^2) cos k - xi^2 = 0"});
      out.push_back({ConditionKind::ExactRoots, a_tag, xi, kPi, "kappa = m pi"});
      break;
    case RationalA::Third:
      out.push_back({ConditionKind::Transcendental, a_tag, xi, 0.0,
                     "(xi^2 - 4k^2) cos(4k/3) - xi^2 - 2k^2 = 0"});
      out.push_back({ConditionKind::ExactRoots, a_tag, xi, 1.5 * kPi, "kappa = 3m pi/2"});
      break;
    case RationalA::TwoThirds:
      out.push_back({ConditionKind::QuadraticInX, a_tag, xi, 0.0,
                     "(4k^2 - xi^2) X^2 + xi^2 X - k^2 = 0, X = cos(2k/3)"});
      out.push_back({ConditionKind::ExactRoots, a_tag, xi, 1.5 * kPi, "kappa = 3m pi/2"});
      break;
    case RationalA::Quarter:
      // The residual factor is the full determinant with the sin(k/2) zeros divided
      // out analytically: sin 2k = 4 sin(k/2) cos(k/2) cos k.
      out.push_back({ConditionKind::Transcendental, a_tag, xi, 0.0,
                     "4 cos(k/2) cos k + (xi^2/k^2) sin^2(3k/4) = 0"});
      out.push_back({ConditionKind::ExactRoots, a_tag, xi, 2.0 * kPi, "kappa = 2m pi"});
      break;
  }
  return out;
}

double signed_condition(const ReducedCondition& c, double k) {
  const double xi2 = c.xi * c.xi;
  switch (c.kind) {
    case ConditionKind::ExactRoots:
      return std::sin(kPi * k / c.period);  // zero exactly at m*period
    case ConditionKind::Transcendental:
      switch (c.which) {
        case RationalA::Half: return (xi2 - 4.0 * k * k) * std::cos(k) - xi2;
        case RationalA::Third:
          return (xi2 - 4.0 * k * k) * std::cos(4.0 * k / 3.0) - xi2 - 2.0 * k * k;
        case RationalA::Quarter: {
          if (k == 0.0) throw Error(Errc::PoleAtKappa, "kappa = 0");
          double s = std::sin(0.75 * k);
          return 4.0 * std::cos(0.5 * k) * std::cos(k) + xi2 / (k * k) * s * s;
        }
        default: break;
      }
      break;
    case ConditionKind::QuadraticInX: {
      double X = std::cos(2.0 * k / 3.0);
      return (4.0 * k * k - xi2) * X * X + xi2 * X - k * k;
    }
  }
  throw Error(Errc::PoleAtKappa, "unsupported condition");
}

double residual(const ReducedCondition& c, double k) { return std::abs(signed_condition(c, k)); }

std::vector<double> condition_roots(const ReducedCondition& c, double kmin, double kmax) {
  std::vector<double> out;
  if (c.kind == ConditionKind::ExactRoots) {
    for (int m = 1; m * c.period < kmax; ++m) {
      double r = m * c.period;
      if (r > kmin) out.push_back(r);
    }
    return out;
  }
  const double step = kPi / 80.0;
  double x0 = kmin, f0 = signed_condition(c, x0);
  for (double x = kmin + step; x < kmax + step * 0.5; x += step) {
    double f = signed_condition(c, std::min(x, kmax));
    if (f0 == 0.0) out.push_back(x0);
    if (f0 * f < 0.0) {
      double lo = x0, hi = std::min(x, kmax), flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi), fm = signed_condition(c, mid);
        if (flo * fm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = std::min(x, kmax);
    f0 = f;
  }
  return out;
}

}  // namespace ptwell

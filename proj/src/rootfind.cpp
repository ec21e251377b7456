#include "ptwell/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ptwell/threads.hpp"

namespace ptwell {

namespace {

constexpr double kPi = 3.14159265358979323846;

// bisection/secant hybrid on a bracketing interval
double refine_bracket(const std::function<double(double)>& f, double lo, double hi, double flo,
                      double fhi, double tol) {
  double best = (std::abs(flo) < std::abs(fhi)) ? lo : hi;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid;
    if (flo != fhi) {
      mid = lo - flo * (hi - lo) / (fhi - flo);  // secant
      double margin = 0.01 * (hi - lo);
      if (!(mid > lo + margin && mid < hi - margin)) mid = 0.5 * (lo + hi);
    } else {
      mid = 0.5 * (lo + hi);
    }
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    best = (std::abs(flo) < std::abs(fhi)) ? lo : hi;
  }
  return best;
}

double refine_minimum(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = 0.3819660112501051;
  double x1 = lo + g * (hi - lo), x2 = hi - g * (hi - lo);
  double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + g * (hi - lo);
      f1 = std::abs(f(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = hi - g * (hi - lo);
      f2 = std::abs(f(x2));
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<RootRecord> scan_roots(const std::function<double(double)>& f,
                                   const ScanConfig& cfg) {
  const int n =
      std::max(2, static_cast<int>(std::ceil((cfg.kappa_max - cfg.kappa_min) / cfg.step)));
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = cfg.kappa_min + (cfg.kappa_max - cfg.kappa_min) * i / n;
  }
  parallel_for(0, n + 1, [&](int i) { fs[i] = f(xs[i]); });
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0) {
      roots.push_back(xs[i]);
    } else if (fs[i] * fs[i + 1] < 0.0) {
      roots.push_back(refine_bracket(f, xs[i], xs[i + 1], fs[i], fs[i + 1], cfg.refine_tol));
    }
  }
  if (fs[n] == 0.0) roots.push_back(xs[n]);
  const double dip = std::sqrt(cfg.residual_tol);
  // roots sitting on the scan boundary produce no sign change; pick them up when
  // the endpoint value is already below the dip threshold
  for (int i : {0, n}) {
    if (fs[i] != 0.0 && std::abs(fs[i]) < dip) {
      double lo = (i == 0) ? xs[0] : xs[n - 1];
      double hi = (i == 0) ? xs[1] : xs[n];
      double x = refine_minimum(f, lo, hi, cfg.refine_tol);
      if (std::abs(f(xs[i])) <= std::abs(f(x))) x = xs[i];
      if (std::abs(f(x)) < cfg.residual_tol) roots.push_back(x);
    }
  }
  // near-degenerate pairs: a double root leaves a sign-constant dip of |f|; every
  // grid local minimum is polished and kept only when it reaches residual_tol
  for (int i = 1; i < n; ++i) {
    if (std::abs(fs[i]) <= std::abs(fs[i - 1]) && std::abs(fs[i]) <= std::abs(fs[i + 1]) &&
        fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0) {
      double x = refine_minimum(f, xs[i - 1], xs[i + 1], cfg.refine_tol);
      if (std::abs(f(x)) < cfg.residual_tol) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<RootRecord> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(r - out.back().kappa) < 10.0 * cfg.refine_tol) continue;
    RootRecord rec;
    rec.kappa = r;
    rec.residual = std::abs(f(r));
    if (rec.residual > cfg.residual_tol) continue;
    out.push_back(rec);
  }
  for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i) + 1;
  return out;
}

// ---------------------------------------------------------------------------
// continuation machinery shared by continue_levels and find_exceptional_point
// ---------------------------------------------------------------------------

struct Engine {
  Engine(const WellSpec& spec, const SweepConfig& sweep, const ScanConfig& scan)
      : spec_(spec), sw_(sweep), sc_(scan) {}

  const WellSpec spec_;
  const SweepConfig sw_;
  const ScanConfig sc_;
  mutable std::map<double, SecularFunction> cache_;

  const SecularFunction& fn(double s) const {
    auto it = cache_.find(s);
    if (it == cache_.end()) {
      it = cache_.emplace(s, SecularFunction(scaled_spec(spec_, s))).first;
    }
    return it->second;
  }

  double D(double k, double s) const { return fn(s)(k); }
  cplx Dc(cplx k, double s) const { return fn(s)(k); }

  double Dk(double k, double s) const {
    const SecularFunction& F = fn(s);
    double h = 1e-7 * std::max(1.0, std::abs(k));
    return (F(k + h) - F(k - h)) / (2.0 * h);
  }

  std::pair<double, bool> newton(double k0, double s) const {
    const SecularFunction& F = fn(s);
    double k = k0;
    for (int it = 0; it < 60; ++it) {
      if (k <= sc_.kappa_min || k > 1e3) return {k, false};
      double f = F(k);
      double h = 1e-7 * std::max(1.0, std::abs(k));
      double d = (F(k + h) - F(k - h)) / (2.0 * h);
      if (d == 0.0) return {k, std::abs(f) < sc_.residual_tol};
      double step = f / d;
      if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
      k -= step;
      if (std::abs(k - k0) > kPi / 4.0) return {k, false};
      if (std::abs(f) < sc_.residual_tol && std::abs(step) < 1e-9 * std::max(1.0, std::abs(k))) {
        return {k, true};
      }
    }
    return {k, std::abs(F(k)) < sc_.residual_tol};
  }

  std::pair<cplx, bool> newton_complex(cplx k0, double s) const {
    const SecularFunction& F = fn(s);
    cplx k = k0;
    for (int it = 0; it < 80; ++it) {
      cplx f = F(k);
      double h = 1e-7 * std::max(1.0, std::abs(k));
      cplx d = (F(k + h) - F(k - h)) / (2.0 * h);
      if (d == cplx(0.0, 0.0)) return {k, std::abs(f) < sc_.residual_tol};
      cplx step = f / d;
      if (std::abs(step) > 0.5) step *= 0.5 / std::abs(step);
      k -= step;
      if (std::abs(f) < sc_.residual_tol && std::abs(step) < 1e-9 * std::max(1.0, std::abs(k))) {
        return {k, true};
      }
    }
    return {k, std::abs(F(k)) < sc_.residual_tol};
  }

  std::vector<double> roots_window(double s, double lo, double hi, double res) const {
    const SecularFunction& F = fn(s);
    ScanConfig c = sc_;
    c.kappa_min = std::max(lo, sc_.kappa_min);
    c.kappa_max = std::max(hi, c.kappa_min + 1e-6);
    c.step = res;
    std::vector<double> out;
    for (const auto& r : scan_roots([&](double k) { return F(k); }, c)) {
      out.push_back(r.kappa);
    }
    return out;
  }

  struct EpCandidate {
    double kappa = 0.0, xi = 0.0;
    double res_d = 0.0, res_dk = 0.0;
    bool converged = false;
  };

  EpCandidate ep_newton(double k0, double s0) const {
    double k = k0, s = s0;
    EpCandidate ec;
    for (int it = 0; it < 80; ++it) {
      double f1 = D(k, s), f2 = Dk(k, s);
      ec = {k, s, std::abs(f1), std::abs(f2), false};
      if (std::abs(f1) < sw_.ep_tol && std::abs(f2) < sw_.ep_tol) {
        ec.converged = true;
        return ec;
      }
      double hk = 1e-6 * std::max(1.0, std::abs(k));
      double hs = 1e-6 * std::max(1.0, std::abs(s));
      double a11 = (D(k + hk, s) - D(k - hk, s)) / (2.0 * hk);
      double a12 = (D(k, s + hs) - D(k, s - hs)) / (2.0 * hs);
      double a21 = (Dk(k + hk, s) - Dk(k - hk, s)) / (2.0 * hk);
      double a22 = (Dk(k, s + hs) - Dk(k, s - hs)) / (2.0 * hs);
      double det = a11 * a22 - a12 * a21;
      if (det == 0.0) return ec;
      double dk = (f1 * a22 - f2 * a12) / det;
      double ds = (a11 * f2 - a21 * f1) / det;
      double norm = std::hypot(dk, ds);
      if (norm > 1.0) {
        dk /= norm;
        ds /= norm;
      }
      k -= dk;
      s -= ds;
      if (k <= sc_.kappa_min || k > 1e3 || s < 0.0 || s > 1e3) return ec;
    }
    return ec;
  }

  // Square-root law just past a coalescence: D ~ (1/2) D_kk (k - k_c)^2 + D_s dxi,
  // so the pair sits at k_c +- i sqrt(2 |D_s / D_kk| dxi).
  double imag_scale_past_ep(double kc, double xic, double dxi) const {
    double h = 1e-4 * std::max(1.0, std::abs(kc));
    double dkk = (D(kc + h, xic) - 2.0 * D(kc, xic) + D(kc - h, xic)) / (h * h);
    double h2 = 1e-6 * std::max(1.0, std::abs(xic));
    double ds = (D(kc, xic + h2) - D(kc, xic - h2)) / (2.0 * h2);
    if (dkk == 0.0) return 1e-3;
    return std::max(std::sqrt(2.0 * std::abs(ds / dkk) * std::max(dxi, 0.0)), 1e-6);
  }

  // upper complex root of the pair at s > xi_c; seeds at the square-root-law
  // estimate (a flat 1e-3 seed can fall into the basin of an unrelated real
  // root); nullopt when no off-axis root is found
  std::optional<cplx> complex_root_past_ep(double kc, double xic, double s) const {
    double im0 = imag_scale_past_ep(kc, xic, s - xic);
    for (double m : {1.0, 2.0, 4.0, 0.5}) {
      auto [k, ok] = newton_complex(cplx(kc, m * im0), s);
      if (ok && std::abs(k.imag()) > sw_.imag_tol) {
        return (k.imag() > 0) ? k : std::conj(k);
      }
    }
    return std::nullopt;
  }

  // A candidate double root is a genuine exceptional point iff just past xi_c the
  // pair has left the real axis: no real roots remain nearby (fine scan) and the
  // complex iteration settles off-axis.  Level crossings also satisfy
  // D = dD/dk = 0 but keep two real roots and pull the complex iterate back.
  bool genuine_ep(const EpCandidate& ec, cplx* complex_root) const {
    const double s_probe = ec.xi + 1e-3;
    auto nearby = roots_window(s_probe, ec.kappa - 0.05, ec.kappa + 0.05, 2e-5);
    auto kc = complex_root_past_ep(ec.kappa, ec.xi, s_probe);
    if (complex_root && kc) *complex_root = *kc;
    return nearby.empty() && kc.has_value();
  }
};

class Sweeper {
 public:
  Sweeper(const WellSpec& spec, int levels, const SweepConfig& sweep, const ScanConfig& scan)
      : eng_(spec, sweep, scan), nlev_(levels) {}

  std::vector<ContinuationTrace> run();

 private:
  Engine eng_;
  int nlev_;
};

std::vector<ContinuationTrace> Sweeper::run() {
  const SweepConfig& sw = eng_.sw_;
  const ScanConfig& sc = eng_.sc_;
  const int n = nlev_;
  const int S = std::max(2, sw.steps);  // number of samples
  std::vector<ContinuationTrace> traces(n);
  enum class St { Real, Complex, Lost };
  std::vector<St> state(n + 1, St::Real);
  std::vector<cplx> kcur(n + 1), kprev(n + 1);
  std::vector<double> lam(S);
  for (int i = 0; i < S; ++i) {
    lam[i] = sw.xi_from + (sw.xi_to - sw.xi_from) * i / (S - 1);
  }
  const double dl = (sw.xi_to - sw.xi_from) / (S - 1);

  for (int i = 1; i <= n; ++i) {
    traces[i - 1].level = i;
    kcur[i] = kprev[i] = i * kPi / 2.0;
  }
  if (sw.xi_from != 0.0) {
    // seeded away from the square-well limit: locate and label ascending
    ScanConfig c = sc;
    c.kappa_max = (n + 2) * kPi / 2.0 + std::abs(sw.xi_from);
    auto rr = scan_roots([&](double k) { return eng_.D(k, sw.xi_from); }, c);
    for (int i = 1; i <= n; ++i) {
      if (i <= static_cast<int>(rr.size())) {
        kcur[i] = kprev[i] = rr[i - 1].kappa;
      } else {
        state[i] = St::Lost;
        traces[i - 1].lost = true;
      }
    }
  }
  auto record = [&](int i, double xi, cplx k, SampleStatus st) {
    traces[i - 1].samples.push_back({xi, k, st});
  };
  for (int i = 1; i <= n; ++i) {
    if (state[i] == St::Real) record(i, lam[0], kcur[i], SampleStatus::Real);
  }

  for (int si = 1; si < S; ++si) {
    const double s = lam[si], s_prev = lam[si - 1];
    std::vector<cplx> old(kcur);
    std::vector<double> pred(n + 1, 0.0);
    std::vector<int> pool, owners;
    std::vector<bool> advanced(n + 1, false);
    for (int i = 1; i <= n; ++i) {
      if (advanced[i]) continue;
      if (state[i] == St::Complex) {
        auto [kc, ok] = eng_.newton_complex(kcur[i] + (kcur[i] - kprev[i]), s);
        if (ok && std::abs(kc.imag()) < sw.imag_tol) {
          // the conjugate pair re-entered the real axis at a second coalescence;
          // split onto the emerging real roots and resume real tracking
          double kr = kc.real();
          auto rts = eng_.roots_window(s, std::max(kr - 0.6, sc.kappa_min), kr + 0.6,
                                       std::min(sc.step, 1e-3));
          std::sort(rts.begin(), rts.end(), [&](double a, double b) {
            return std::abs(a - kr) < std::abs(b - kr);
          });
          int j = traces[i - 1].partner.value_or(-1);
          if (j >= 1 && state[j] != St::Complex) j = -1;
          if (!rts.empty()) {
            if (j >= 1) {
              double r1 = rts[0], r2 = rts.size() >= 2 ? rts[1] : rts[0];
              int lo = std::min(i, j), hi = std::max(i, j);
              kcur[lo] = kprev[lo] = std::min(r1, r2);
              kcur[hi] = kprev[hi] = std::max(r1, r2);
              for (int t : {lo, hi}) {
                state[t] = St::Real;
                pred[t] = kr;
                record(t, s, kcur[t], SampleStatus::Real);
                advanced[t] = true;
              }
            } else {
              state[i] = St::Real;
              kcur[i] = kprev[i] = rts[0];
              pred[i] = kr;
              record(i, s, kcur[i], SampleStatus::Real);
              advanced[i] = true;
            }
            continue;
          }
        }
        if (ok) {
          kprev[i] = kcur[i];
          kcur[i] = kc;
        }
        record(i, s, kcur[i], SampleStatus::Complex);
        advanced[i] = true;
        continue;
      }
      if (state[i] == St::Lost) continue;
      pred[i] = (2.0 * kcur[i] - kprev[i]).real();
      auto [kk, ok] = eng_.newton(pred[i], s);
      if (ok) {
        kprev[i] = kcur[i];
        kcur[i] = kk;
      } else {
        pool.push_back(i);
      }
    }
    // ownership: no two real traces may claim the same root
    {
      std::vector<int> live;
      for (int i = 1; i <= n; ++i) {
        if (state[i] == St::Real && std::find(pool.begin(), pool.end(), i) == pool.end()) {
          live.push_back(i);
        }
      }
      std::sort(live.begin(), live.end(), [&](int a, int b) {
        return std::abs(kcur[a].real() - pred[a]) < std::abs(kcur[b].real() - pred[b]);
      });
      for (int i : live) {
        bool taken = false;
        for (int j : owners) {
          if (std::abs(kcur[i].real() - kcur[j].real()) < 1e-8) {
            taken = true;
            break;
          }
        }
        if (taken) {
          pool.push_back(i);
          kcur[i] = old[i];
        } else {
          owners.push_back(i);
        }
      }
    }
    // crossings: disentangle close pairs by exclusive predictor assignment
    for (size_t ii = 0; ii < owners.size(); ++ii) {
      for (size_t jj = ii + 1; jj < owners.size(); ++jj) {
        int i = owners[ii], j = owners[jj];
        double ki = kcur[i].real(), kj = kcur[j].real();
        if (std::abs(ki - kj) < 10.0 * sw.collision_delta) {
          auto rts = eng_.roots_window(s, std::min(ki, kj) - 0.3, std::max(ki, kj) + 0.3,
                                       std::min(sc.step, 1e-3));
          if (rts.size() >= 2) {
            double bc = 1e300, bi = ki, bj = kj;
            for (double ri : rts) {
              for (double rj : rts) {
                if (std::abs(ri - rj) < 1e-12) continue;
                double cst = std::abs(ri - pred[i]) + std::abs(rj - pred[j]);
                if (cst < bc) {
                  bc = cst;
                  bi = ri;
                  bj = rj;
                }
              }
            }
            kcur[i] = bi;
            kcur[j] = bj;
          }
        }
      }
    }
    // attempts the coalescence handoff for a suspect pair (j < 0: the partner is
    // not among the traced levels); on success the traces switch to conjugate
    // complex tracking with a Merged marker at xi_c
    auto try_merge = [&](int i, int j, double seed_k) -> bool {
      auto ec = eng_.ep_newton(seed_k, 0.5 * (s_prev + s));
      cplx croot;
      if (!(ec.converged && ec.xi >= s_prev - dl && ec.xi <= s + dl &&
            std::abs(ec.kappa - seed_k) < 0.8 && eng_.genuine_ep(ec, &croot))) {
        return false;
      }
      // the pair was still real at s_prev, so xi_c lies in (s_prev, s] up to
      // solver tolerance; keep the recorded samples strictly increasing
      double xi_c = std::clamp(ec.xi, s_prev + 1e-9 * dl, s);
      cplx kc1 = eng_.complex_root_past_ep(ec.kappa, ec.xi, s)
                     .value_or(cplx(ec.kappa, eng_.imag_scale_past_ep(ec.kappa, ec.xi, s - ec.xi)));
      // a re-entered level may coalesce again: keep the first xi_c and partner,
      // and record at most one Merged marker per trace
      auto mark = [&](int t, int other) {
        state[t] = St::Complex;
        if (!traces[t - 1].merged_xi) {
          traces[t - 1].merged_xi = xi_c;
          if (other >= 1) traces[t - 1].partner = other;
          record(t, xi_c, cplx(ec.kappa, 0.0), SampleStatus::Merged);
        } else {
          record(t, xi_c, cplx(ec.kappa, 0.0), SampleStatus::Complex);
        }
      };
      mark(i, j);
      if (j < 0) {
        kprev[i] = kcur[i] = kc1;  // untraced partner carries the conjugate
        return true;
      }
      mark(j, i);
      int lo = std::min(i, j), hi = std::max(i, j);
      kcur[lo] = kc1;
      kcur[hi] = std::conj(kc1);
      kprev[lo] = kcur[lo];
      kprev[hi] = kcur[hi];
      return true;
    };
    // proximity trigger: owners that came within collision_delta may already sit in
    // the flat valley of an EP just below s
    for (size_t ii = 0; ii < owners.size(); ++ii) {
      for (size_t jj = ii + 1; jj < owners.size(); ++jj) {
        int i = owners[ii], j = owners[jj];
        if (state[i] != St::Real || state[j] != St::Real) continue;
        double d = std::abs(kcur[i].real() - kcur[j].real());
        if (d < sw.collision_delta) {
          try_merge(i, j, 0.5 * (kcur[i].real() + kcur[j].real()));
        }
      }
    }
    owners.erase(std::remove_if(owners.begin(), owners.end(),
                                [&](int i) { return state[i] != St::Real; }),
                 owners.end());
    std::sort(pool.begin(), pool.end(),
              [&](int a, int b) { return old[a].real() < old[b].real(); });
    std::vector<bool> handled(n + 1, false);
    for (int i : pool) {
      if (handled[i]) continue;
      int mate = -1;
      double bestd = 1e300;
      for (int j : pool) {
        if (j == i || handled[j]) continue;
        double d = std::abs(old[j].real() - old[i].real());
        if (d < bestd) {
          bestd = d;
          mate = j;
        }
      }
      bool done = false;
      if (mate >= 0 && bestd < 1.2) {
        if (try_merge(i, mate, 0.5 * (old[i].real() + old[mate].real()))) {
          handled[i] = handled[mate] = true;
          done = true;
        }
      }
      if (!done) {
        auto rts = eng_.roots_window(s, std::max(pred[i] - 0.3, sc.kappa_min), pred[i] + 0.3,
                                     std::min(sc.step, 1e-3));
        double best = 1e300, kbest = 0.0;
        for (double r : rts) {
          bool taken = false;
          for (int j : owners) {
            if (std::abs(r - kcur[j].real()) < 1e-8) {
              taken = true;
              break;
            }
          }
          if (!taken && std::abs(r - pred[i]) < best) {
            best = std::abs(r - pred[i]);
            kbest = r;
          }
        }
        if (best < 1e300) {
          kprev[i] = old[i];
          kcur[i] = kbest;
          owners.push_back(i);
        } else if (try_merge(i, -1, old[i].real())) {
          // coalesced with a level outside the traced set
        } else {
          state[i] = St::Lost;
          traces[i - 1].lost = true;
          record(i, s, old[i], SampleStatus::Lost);
        }
        handled[i] = true;
      }
    }
    for (int i = 1; i <= n; ++i) {
      if (state[i] == St::Real && !advanced[i]) record(i, s, kcur[i], SampleStatus::Real);
    }
  }
  return traces;
}

}  // namespace

namespace {
void check_scan_config(const ScanConfig& cfg) {
  if (!(cfg.kappa_min > 0.0 && cfg.kappa_min < cfg.kappa_max && cfg.kappa_max <= 1e3)) {
    throw std::invalid_argument("scan range must satisfy 0 < kappa_min < kappa_max <= 1e3");
  }
  if (!(cfg.step > 0.0 && cfg.step < kPi / 4.0)) {
    throw std::invalid_argument("scan step must lie in (0, pi/4)");
  }
}
void check_sweep_config(const SweepConfig& sw) {
  if (!(sw.xi_from < sw.xi_to)) throw std::invalid_argument("xi_from must be below xi_to");
  if (sw.steps < 2) throw std::invalid_argument("a sweep needs at least 2 samples");
}
}  // namespace

std::vector<RootRecord> find_real_roots_of(const std::function<double(double)>& f,
                                           const ScanConfig& cfg) {
  check_scan_config(cfg);
  return scan_roots(f, cfg);
}

std::vector<RootRecord> find_real_roots(const WellSpec& spec, const ScanConfig& cfg) {
  check_scan_config(cfg);
  SecularFunction D(spec);
  return scan_roots([&](double k) { return D(k); }, cfg);
}

WellSpec scaled_spec(const WellSpec& spec, double s) {
  WellSpec out = spec;
  double m = 0.0;
  for (double x : spec.couplings) m = std::max(m, std::abs(x));
  for (size_t l = 0; l < out.couplings.size(); ++l) {
    out.couplings[l] = (m > 0.0) ? s * spec.couplings[l] / m : s;
  }
  return out;
}

std::vector<ContinuationTrace> continue_levels(const WellSpec& spec, int levels,
                                               const SweepConfig& sweep,
                                               const ScanConfig& scan) {
  check_sweep_config(sweep);
  check_scan_config(scan);
  return Sweeper(spec, levels, sweep, scan).run();
}

ExceptionalPoint find_exceptional_point(const WellSpec& spec, double kappa_guess,
                                        double lambda_guess, std::pair<int, int> pair,
                                        const SweepConfig& sweep) {
  ScanConfig scan;
  scan.kappa_max = kappa_guess + 4.0 * kPi;
  Engine eng(spec, sweep, scan);
  auto ec = eng.ep_newton(kappa_guess, lambda_guess);
  cplx croot;
  if (ec.converged && eng.genuine_ep(ec, &croot)) {
    return {ec.xi, ec.kappa, pair, ec.res_d, ec.res_dk};
  }
  // fallback: bisect the coupling over "the pair still has two real roots"
  const double w = 0.75 * kPi;
  const double klo = std::max(kappa_guess - w, scan.kappa_min);
  const double khi = kappa_guess + w;
  auto count2 = [&](double s) { return eng.roots_window(s, klo, khi, 1e-4).size() >= 2; };
  double lo = sweep.xi_from, hi = sweep.xi_to;
  if (!count2(lo) || count2(hi)) {
    throw Error(Errc::NoCoalescence, "pair keeps two real roots across the range");
  }
  for (int it = 0; it < 50 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (count2(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double s_c = 0.5 * (lo + hi);
  auto rts = eng.roots_window(lo, klo, khi, 1e-4);
  double kc = kappa_guess;
  if (rts.size() >= 2) kc = 0.5 * (rts[rts.size() - 2] + rts.back());
  auto ec2 = eng.ep_newton(kc, s_c);
  if (ec2.converged && eng.genuine_ep(ec2, &croot)) {
    return {ec2.xi, ec2.kappa, pair, ec2.res_d, ec2.res_dk};
  }
  throw Error(Errc::NoCoalescence, "no coalescence found in range");
}

std::vector<LevelClassification> classify_levels(const WellSpec& spec, int levels,
                                                 double xi_max) {
  constexpr int kBuffer = 4;  // trace extra levels so merge partners exist
  SweepConfig sweep;
  sweep.xi_from = 0.0;
  sweep.xi_to = xi_max;
  sweep.steps = std::max(101, static_cast<int>(std::ceil(xi_max / 0.1)) + 1);
  ScanConfig scan;
  scan.kappa_max = (levels + kBuffer + 2) * kPi / 2.0 + xi_max;
  auto traces = continue_levels(spec, levels + kBuffer, sweep, scan);
  std::vector<LevelClassification> out;
  for (int i = 0; i < levels; ++i) {
    LevelClassification lc;
    lc.level = i + 1;
    if (traces[i].merged_xi) {
      lc.tag = RootTag::Fragile;
      lc.xi_c = traces[i].merged_xi;
    } else if (traces[i].lost) {
      lc.tag = RootTag::Unclassified;
    } else {
      lc.tag = RootTag::Robust;
    }
    out.push_back(lc);
  }
  return out;
}

}  // namespace ptwell

#pragma once

// Test-only numerical oracles, deliberately independent of the library's
// closed-form implementation paths: a fixed-step RK4 integrator, central
// finite differences, adaptive quadrature, trapezoid sums, and a dense
// scan-plus-bisection root localizer.

#include <cmath>
#include <functional>
#include <vector>

#include "etnet/dynamics.hpp"

namespace oracle {

using etnet::Vec;

/// Classic RK4 with fixed step h on x' = f(x), from t=0 to t=span.
inline Vec rk4(const std::function<Vec(const Vec&)>& f, Vec x, double span, double h) {
  auto axpy = [](const Vec& a, double s, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  double t = 0.0;
  while (t < span) {
    const double step = std::min(h, span - t);
    const Vec k1 = f(x);
    const Vec k2 = f(axpy(x, 0.5 * step, k1));
    const Vec k3 = f(axpy(x, 0.5 * step, k2));
    const Vec k4 = f(axpy(x, step, k3));
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += step;
  }
  return x;
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central finite-difference gradient of a scalar field.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& y, double h) {
  Vec g(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Vec hi = y, lo = y;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  std::function<double(double, double, double, double, double, double, int)> go =
      [&](double lo, double hi, double flo, double fmid, double fhi, double eps,
          int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = f(lmid);
    const double frmid = f(rmid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
    if (depth > 48 || std::abs(left + right - whole) <= 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return go(lo, mid, flo, flmid, fmid, 0.5 * eps, depth + 1) +
           go(mid, hi, fmid, frmid, fhi, 0.5 * eps, depth + 1);
  };
  return go(a, b, f(a), f(0.5 * (a + b)), f(b), tol, 0);
}

/// Trapezoid sum over a uniform grid with m panels.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int m) {
  double sum = 0.5 * (f(a) + f(b));
  for (int k = 1; k < m; ++k) sum += f(a + (b - a) * k / m);
  return sum * (b - a) / m;
}

/// First root of f (crossing from negative to nonnegative) after a,
/// located by a dense scan with the given step then bisection to tol.
/// Returns a NaN when no crossing is found up to b.
inline double first_root(const std::function<double(double)>& f, double a, double b, double step,
                         double tol) {
  double lo = a;
  for (double s = a + step; lo < b; s = std::min(s + step, b)) {
    if (f(s) >= 0.0) {
      double hi = s;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
    lo = s;
    if (s >= b) break;
  }
  return std::nan("");
}

/// Continuous right-hand side -D x - grad f(g(Lambda x)) + theta, the
/// event-free limit every engine trajectory must obey between triggers
/// when the held feedback is substituted explicitly.
inline Vec held_feedback_rhs(const etnet::NetworkModel& model, const Vec& sampled_grad,
                             const Vec& x) {
  Vec f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    f[i] = -model.d[i] * x[i] - sampled_grad[i] + model.theta[i];
  return f;
}

}  // namespace oracle

#pragma once
#include <cmath>

#include "polylab/errors.hpp"

namespace polylab {

// Bisection to moderate accuracy, then Newton polish. f must change sign on
// [a, b]. df is the analytic derivative. Tolerance is relative to the root.
template <class F, class DF>
double root_bisect_newton(F&& f, DF&& df, double a, double b,
                          double rel_tol = 1e-9) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0))
    throw domain_error("root_bisect_newton: no sign change on bracket");
  // bisect until the bracket is small enough for Newton to be safe
  for (int it = 0; it < 200 && (b - a) > 1e-3 * (std::fabs(a) + std::fabs(b));
       ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 60; ++it) {
    double fx = f(x);
    double dfx = df(x);
    double step = (dfx != 0) ? fx / dfx : 0.0;
    double xn = x - step;
    if (!(xn > a && xn < b) || dfx == 0) {
      // fall back to bisection inside the maintained bracket
      if ((fx > 0) == (fa > 0)) {
        a = x;
        fa = fx;
      } else {
        b = x;
        fb = fx;
      }
      xn = 0.5 * (a + b);
    } else {
      if ((fx > 0) == (fa > 0)) {
        a = x;
        fa = fx;
      } else {
        b = x;
        fb = fx;
      }
    }
    double scale = std::fabs(xn) > 0 ? std::fabs(xn) : 1.0;
    if (std::fabs(xn - x) <= rel_tol * scale) return xn;
    x = xn;
  }
  throw numeric_error("root_bisect_newton: did not converge");
}

// Plain bisection (used where no cheap derivative exists).
template <class F>
double root_bisect(F&& f, double a, double b, double rel_tol = 1e-13,
                   int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0))
    throw domain_error("root_bisect: no sign change on bracket");
  for (int it = 0; it < max_iter; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
    if ((b - a) <= rel_tol * (std::fabs(a) + std::fabs(b)) * 0.5) break;
  }
  return 0.5 * (a + b);
}

}  // namespace polylab

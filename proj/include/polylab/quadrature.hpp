#pragma once
#include <cmath>
#include <cstddef>

#include "polylab/errors.hpp"

namespace polylab {

struct QuadResult {
  double value;
  double error;  // |Kronrod - Gauss| based estimate
};

// 15-point Kronrod / 7-point Gauss pair on [a, b].
template <class F>
QuadResult gk15(F&& f, double a, double b) {
  static const double xk[8] = {
      0.991455371120813, 0.949107912342759, 0.864864423359769,
      0.741531185599394, 0.586087235467691, 0.405845151377397,
      0.207784955007898, 0.0};
  static const double wk[8] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728};
  static const double wg[4] = {0.129484966168870, 0.279705391489277,
                               0.381830050505119, 0.417959183673469};
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double kron = 0, gauss = 0;
  for (int i = 0; i < 7; ++i) {
    double fp = f(c + hw * xk[i]);
    double fm = f(c - hw * xk[i]);
    kron += wk[i] * (fp + fm);
    if (i % 2 == 1) gauss += wg[i / 2] * (fp + fm);
  }
  double f0 = f(c);
  kron += wk[7] * f0;
  gauss += wg[3] * f0;
  kron *= hw;
  gauss *= hw;
  double err = std::pow(200.0 * std::fabs(kron - gauss), 1.5);
  return {kron, std::min(err, std::fabs(kron - gauss) * 200.0)};
}

// Adaptive bisection on the GK15 pair.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-12,
                          int max_depth = 48) {
  struct Rec {
    const F& f;
    double tol;
    double run(double a, double b, int depth) const {
      QuadResult q = gk15(f, a, b);
      if (q.error <= tol * std::max(1.0, std::fabs(q.value)) || depth <= 0) {
        if (depth <= 0 && q.error > 1e-6 * std::max(1.0, std::fabs(q.value)))
          throw numeric_error("integrate_adaptive: refinement exhausted");
        return q.value;
      }
      double m = 0.5 * (a + b);
      return run(a, m, depth - 1) + run(m, b, depth - 1);
    }
  };
  return Rec{f, tol}.run(a, b, max_depth);
}

}  // namespace polylab

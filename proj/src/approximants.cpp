#include "polylab/approximants.hpp"

#include <cmath>
#include <limits>

#include "polylab/roots.hpp"

namespace polylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// theta_3 series coefficients in x = xi^2 through x^5
constexpr double kC3[6] = {1.0,
                           -1.0 / 6.0,
                           1.0 / 40.0,
                           -19.0 / 5040.0,
                           619.0 / 1088640.0,
                           -2743.0 / 39916800.0};

// first positive zero of the truncated series, +inf if it stays positive
double series_first_zero(const PolytropeIndex& n, int order) {
  auto f = [&](double xi) { return taylor_theta(n, xi, order); };
  double prev = 0.0;
  for (double xi = 0.25; xi <= 64.0; xi += 0.25) {
    if (f(xi) <= 0.0) return root_bisect(f, prev, xi);
    prev = xi;
  }
  return kInf;
}

}  // namespace

double picard_theta(const PolytropeIndex& n, double xi) {
  if (!(xi >= 0.0)) throw domain_error("picard_theta: xi must be >= 0");
  double N = n.picard_N();  // 5/(3n-5), throws at n = 5/3
  double base = 1.0 + xi * xi / (6.0 * N);
  if (base < 0.0)
    throw domain_error("picard_theta: past the positivity bound sqrt(6|N|)");
  return std::pow(base, -N);
}

double taylor_theta(const PolytropeIndex& n, double xi, int order) {
  if (!(xi >= 0.0)) throw domain_error("taylor_theta: xi must be >= 0");
  if (order < 2 || order > 10 || order % 2)
    throw domain_error("taylor_theta: order must be even, 2..10");
  if (order > 6 && n.n != 3.0)
    throw domain_error("taylor_theta: orders above 6 only for n = 3");
  const double x = xi * xi;
  if (n.n == 3.0) {
    double acc = 0.0;
    for (int k = order / 2; k >= 0; --k) acc = kC3[k] + x * acc;
    return acc;
  }
  double c2 = -1.0 / 6.0, c4 = n.n / 120.0,
         c6 = -n.n * (8.0 * n.n - 5.0) / 15120.0;
  if (order == 2) return 1.0 + x * c2;
  if (order == 4) return 1.0 + x * (c2 + x * c4);
  return 1.0 + x * (c2 + x * (c4 + x * c6));
}

double pade_theta3(double xi) {
  if (!(xi >= 0.0)) throw domain_error("pade_theta3: xi must be >= 0");
  const double x = xi * xi;
  double num = 1.0 - x / 108.0 - 11.0 * x * x / 45360.0;
  double den = 1.0 + 17.0 * x / 108.0 + x * x / 1008.0;
  return num / den;
}

double Approximant::operator()(double xi) const {
  switch (kind) {
    case ApproxKind::taylor:
      return taylor_theta(n, xi, order);
    case ApproxKind::picard:
      return picard_theta(n, xi);
    case ApproxKind::pade3:
      return pade_theta3(xi);
    case ApproxKind::poly10_3:
      return taylor_theta(n, xi, 10);
  }
  throw domain_error("Approximant: bad kind");
}

Approximant make_taylor(const PolytropeIndex& n, int order) {
  taylor_theta(n, 0.0, order);  // validate the pair early
  return {ApproxKind::taylor, n, order, series_first_zero(n, order)};
}

Approximant make_picard(const PolytropeIndex& n) {
  double N = n.picard_N();
  double bound = N < 0.0 ? std::sqrt(-6.0 * N) : kInf;
  return {ApproxKind::picard, n, 0, bound};
}

Approximant make_pade3() {
  return {ApproxKind::pade3, PolytropeIndex(3.0), 0, kInf};
}

Approximant make_poly10() {
  return {ApproxKind::poly10_3, PolytropeIndex(3.0), 10, kInf};
}

ErrorReport compare(const Approximant& approx, const EmdenProfile& exact,
                    double xi_lo, double xi_hi) {
  if (!(xi_lo >= 0.0 && xi_hi > xi_lo))
    throw domain_error("compare: need 0 <= xi_lo < xi_hi");
  if (!(xi_hi <= exact.xi_end()))
    throw domain_error("compare: xi_hi beyond the integrated profile");
  const double hi_a = std::min(xi_hi, approx.xi_max_valid);

  ErrorReport rep{0.0, xi_lo, 0.0, xi_lo, std::nullopt, std::nullopt};
  auto scan = [&](double a, double b, int m) {
    for (int i = 0; i <= m; ++i) {
      double xi = a + (b - a) * i / m;
      double t = exact.theta(xi);
      if (t <= 0.0) continue;  // relative error is only read off inside
      double e = std::fabs(approx(xi) - t);
      if (e > rep.max_abs_err) {
        rep.max_abs_err = e;
        rep.xi_at_max_abs = xi;
      }
      if (e / t > rep.max_rel_err) {
        rep.max_rel_err = e / t;
        rep.xi_at_max_rel = xi;
      }
    }
  };
  const int m0 = 4000;
  scan(xi_lo, hi_a, m0);
  double h = (hi_a - xi_lo) / m0;
  for (int pass = 0; pass < 3; ++pass) {  // refine both maxima locally
    double ra = std::max(rep.xi_at_max_rel - h, xi_lo);
    scan(ra, std::min(rep.xi_at_max_rel + h, hi_a), 40);
    ra = std::max(rep.xi_at_max_abs - h, xi_lo);
    scan(ra, std::min(rep.xi_at_max_abs + h, hi_a), 40);
    h /= 20.0;
  }

  // first zeros inside [xi_lo, xi_hi], where present
  {
    auto f = [&](double xi) { return exact.theta(xi); };
    double prev = xi_lo;
    for (int i = 1; i <= m0; ++i) {
      double xi = xi_lo + (xi_hi - xi_lo) * i / m0;
      if (f(prev) > 0.0 && f(xi) <= 0.0) {
        rep.zero_exact = root_bisect(f, prev, xi);
        break;
      }
      prev = xi;
    }
  }
  {
    double prev = xi_lo;
    bool found = false;
    for (int i = 1; i <= m0; ++i) {
      double xi = xi_lo + (hi_a - xi_lo) * i / m0;
      if (approx(prev) > 0.0 && approx(xi) <= 0.0) {
        rep.zero_approx =
            root_bisect([&](double s) { return approx(s); }, prev, xi);
        found = true;
        break;
      }
      prev = xi;
    }
    // a positivity bound inside the window is itself the zero
    if (!found && approx.xi_max_valid <= xi_hi)
      rep.zero_approx = approx.xi_max_valid;
  }
  return rep;
}

}  // namespace polylab

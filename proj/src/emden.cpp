#include "polylab/emden.hpp"

#include <cmath>
#include <limits>

#include "polylab/constants.hpp"
#include "polylab/roots.hpp"

namespace polylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double theta_pow(double theta, double n) {
  if (n == 0.0) return 1.0;
  return theta > 0.0 ? std::pow(theta, n) : 0.0;
}

}  // namespace

SeriesValue taylor_start(const PolytropeIndex& n, double xi) {
  if (!(xi >= 0.0 && xi <= 0.1))
    throw domain_error("taylor_start: validated only for 0 <= xi <= 0.1");
  const double c1 = -1.0 / 6.0;
  const double c2 = n.n / 120.0;
  const double c3 = -n.n * (8.0 * n.n - 5.0) / 15120.0;
  const double x = xi * xi;
  double th = 1.0 + x * (c1 + x * (c2 + x * c3));
  double dth = xi * (2 * c1 + x * (4 * c2 + x * 6 * c3));
  return {th, dth};
}

double EmdenProfile::theta(double xi) const {
  if (!(xi >= 0.0 && xi <= xi_end()))
    throw domain_error("EmdenProfile::theta: xi outside the grid");
  if (xi < xi_begin()) return taylor_start(idx_, xi).theta;
  return sol_.at(xi)[0];
}

double EmdenProfile::dtheta(double xi) const {
  if (!(xi >= 0.0 && xi <= xi_end()))
    throw domain_error("EmdenProfile::dtheta: xi outside the grid");
  if (xi < xi_begin()) return taylor_start(idx_, xi).dtheta;
  return sol_.at(xi)[1];
}

std::vector<EmdenProfile::Node> EmdenProfile::nodes() const {
  std::vector<Node> out;
  out.reserve(sol_.t.size());
  for (std::size_t i = 0; i < sol_.t.size(); ++i)
    if (sol_.y[i][0] > 0.0)
      out.push_back({sol_.t[i], sol_.y[i][0], sol_.y[i][1]});
  return out;
}

EmdenProfile integrate_profile(const PolytropeIndex& n,
                               const IntegratorOptions& opts) {
  const double nn = n.n;
  auto rhs = [nn](double xi, const std::array<double, 2>& y,
                  std::array<double, 2>& f) {
    f[0] = y[1];
    f[1] = -theta_pow(y[0], nn) - 2.0 * y[1] / xi;
  };
  SeriesValue s = taylor_start(n, opts.xi0);
  StepControl ctl;
  ctl.rtol = opts.rtol;
  ctl.atol = opts.atol;
  ctl.max_step = opts.max_step;
  auto stop = [](double, const std::array<double, 2>& y) {
    return y[0] <= 0.0;
  };
  OdeSolution<2> sol = integrate_ode<2>(rhs, opts.xi0, opts.xi_max,
                                        {s.theta, s.dtheta}, ctl, stop);
  bool bracketed = sol.y.back()[0] <= 0.0;
  if (!n.is_n5() && !bracketed)
    throw numeric_error("integrate_profile: theta did not reach zero by xi_max");
  return EmdenProfile(n, opts, std::move(sol), bracketed);
}

namespace {

// (xi1, m1) with the n = 5 closed-form limits special-cased.
std::pair<double, double> surface_root(const EmdenProfile& p) {
  if (p.index().is_n5())
    return {std::numeric_limits<double>::infinity(), std::sqrt(3.0)};
  if (!p.surface_bracketed())
    throw numeric_error("find_surface: no sign-change bracket on theta");
  const auto& sol = p.solution();
  double a = sol.t[sol.t.size() - 2];
  double b = sol.t.back();
  double xi1 = root_bisect_newton([&](double x) { return sol.at(x)[0]; },
                                  [&](double x) { return sol.at(x)[1]; }, a, b,
                                  1e-11);
  double m1 = -xi1 * xi1 * sol.at(xi1)[1];
  return {xi1, m1};
}

}  // namespace

HomologyInvariants invariants_at(const EmdenProfile& profile, double xi) {
  const double n = profile.n();
  if (!(xi >= 0.0 && xi <= profile.xi_end()))
    throw domain_error("invariants_at: xi outside the grid");
  if (xi == 0.0) {
    double omega = n > 1.0 ? 0.0
                 : n == 1.0 ? std::numeric_limits<double>::quiet_NaN()
                            : std::numeric_limits<double>::infinity();
    return {3.0, 0.0, 0.0, 0.0, omega};
  }
  double th = profile.theta(xi), dth = profile.dtheta(xi);
  if (th <= 0.0) throw domain_error("invariants_at: beyond the surface");
  double u = -xi * theta_pow(th, n) / dth;
  double v = -xi * dth / th;
  double w = n * v;
  double omega;
  if (n == 1.0)
    omega = std::numeric_limits<double>::quiet_NaN();
  else
    omega = -std::pow(xi, 1.0 + 2.0 / (n - 1.0)) * dth;
  return {u, v, w, 3.0 - u, omega};
}

CoreRadius core_radius(const EmdenProfile& profile) {
  const double n = profile.n();
  auto [xi1, m1] = surface_root(profile);
  if (n == 0.0) return {xi1, 1.0, 1.0};  // u = 3 up to the boundary

  // bracket u = 2 between stored nodes (u decreases monotonically from 3)
  auto u_of = [&](double xi) { return invariants_at(profile, xi).u; };
  const auto nodes = profile.nodes();
  double a = profile.xi_begin(), b = 0.0;
  bool found = false;
  for (const auto& nd : nodes) {
    if (nd.xi <= a) continue;
    if (u_of(nd.xi) < 2.0) {
      b = nd.xi;
      found = true;
      break;
    }
    a = nd.xi;
  }
  if (!found) throw numeric_error("core_radius: u never reaches 2 on the grid");
  auto f = [&](double xi) { return u_of(xi) - 2.0; };
  auto df = [&](double xi) {
    auto inv = invariants_at(profile, xi);
    return (inv.u / xi) * (3.0 - inv.u - inv.w);  // d u / d xi
  };
  double xic = root_bisect_newton(f, df, a, b, 1e-11);
  double m_core = -xic * xic * profile.dtheta(xic);
  return {xic, xic / xi1, m_core / m1};
}

SurfaceConstants find_surface(const EmdenProfile& profile) {
  const double n = profile.n();
  auto [xi1, m1] = surface_root(profile);
  CoreRadius core = core_radius(profile);
  SurfaceConstants sc;
  sc.xi1 = xi1;
  sc.m1 = m1;
  if (n == 1.0)
    sc.omega0 = std::nullopt;
  else if (profile.index().is_n5())
    sc.omega0 = 0.0;
  else
    sc.omega0 = m1 * std::pow(xi1, (3.0 - n) / (n - 1.0));
  sc.rho_ratio = profile.index().is_n5()
                     ? std::numeric_limits<double>::infinity()
                     : xi1 * xi1 * xi1 / (3.0 * m1);
  sc.xi_core = core.xi_core;
  sc.r_core_frac = core.r_core_frac;
  sc.m_core_frac = core.m_core_frac;
  return sc;
}

PhysicalProfile dimensionalize(const EmdenProfile& profile, double K,
                               double rho_c) {
  if (!(K > 0.0) || !(rho_c > 0.0))
    throw domain_error("dimensionalize: K and rho_c must be positive");
  const double n = profile.n();
  const double G = constants().G;
  // n = 0 is incompressible; the central-density power is dropped there
  // (unit-central-density convention), leaving only the overall scale.
  double rho_pow = n > 0.0 ? std::pow(rho_c, 1.0 / n) : 1.0;
  double H_c = (n + 1.0) * K * rho_pow;
  double alpha = std::sqrt(H_c / (4.0 * kPi * G * rho_c));
  PhysicalProfile ph;
  ph.K = K;
  ph.rho_c = rho_c;
  ph.alpha = alpha;
  ph.H_c = H_c;
  for (const auto& nd : profile.nodes()) {
    ph.r.push_back(alpha * nd.xi);
    ph.rho.push_back(rho_c * theta_pow(nd.theta, n));
    ph.m.push_back(4.0 * kPi * rho_c * alpha * alpha * alpha *
                   (-nd.xi * nd.xi * nd.dtheta));
    ph.rho_bar.push_back(rho_c * (-3.0 * nd.dtheta / nd.xi));
    ph.g.push_back(4.0 * kPi * G * rho_c * alpha * (-nd.dtheta));
  }
  return ph;
}

MassRadius mass_radius(const PolytropeIndex& n, double K, Given which,
                       double value, const IntegratorOptions& opts) {
  if (!(K > 0.0)) throw domain_error("mass_radius: K must be positive");
  if (!(value > 0.0)) throw domain_error("mass_radius: M or R must be positive");
  const double nn = n.n;
  const double G = constants().G;

  if (nn == 0.0) {
    // K drops out; unit central density fixes the scale.
    if (which == Given::mass)
      return {value, std::cbrt(3.0 * value / (4.0 * kPi))};
    return {4.0 * kPi / 3.0 * value * value * value, value};
  }

  const double beta = std::sqrt((nn + 1.0) * K / (4.0 * kPi * G));

  if (n.is_n1()) {
    if (which == Given::radius)
      throw domain_error(
          "mass_radius: n = 1 fixes the radius from K alone; supply the mass");
    return {value, kPi * beta};
  }

  if (n.is_n5()) {
    if (which == Given::radius)
      throw domain_error("mass_radius: n = 5 has infinite radius for any mass");
    return {value, std::numeric_limits<double>::infinity()};
  }

  auto sc = find_surface(integrate_profile(n, opts));

  if (nn == 3.0) {
    if (which == Given::mass)
      throw domain_error(
          "mass_radius: n = 3 fixes the mass from K alone; supply the radius");
    return {4.0 * kPi * sc.m1 * beta * beta * beta, value};
  }

  double rho_c;
  if (which == Given::mass)
    rho_c = std::pow(value / (4.0 * kPi * beta * beta * beta * sc.m1),
                     2.0 * nn / (3.0 - nn));
  else
    rho_c = std::pow(value / (beta * sc.xi1), 2.0 * nn / (1.0 - nn));
  double M = 4.0 * kPi * beta * beta * beta * sc.m1 *
             std::pow(rho_c, (3.0 - nn) / (2.0 * nn));
  double R = beta * std::pow(rho_c, (1.0 - nn) / (2.0 * nn)) * sc.xi1;
  return {M, R};
}

}  // namespace polylab

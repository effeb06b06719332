#include "polylab/noether.hpp"

#include <cmath>

namespace polylab {

namespace {

double pow_pos(double th, double p) {
  return th > 0.0 ? std::pow(th, p) : 0.0;
}

}  // namespace

double noether_charge(const EmdenProfile& profile, double xi) {
  const double n = profile.n();
  if (n == 1.0) throw domain_error("noether_charge: undefined at n = 1");
  double th = profile.theta(xi), dth = profile.dtheta(xi);
  return xi * xi * xi * (0.5 * dth * dth + pow_pos(th, n + 1.0) / (n + 1.0)) +
         (2.0 / (n - 1.0)) * xi * xi * th * dth;
}

double noether_rhs(const EmdenProfile& profile, double xi) {
  const double n = profile.n();
  if (n == 1.0) throw domain_error("noether_rhs: undefined at n = 1");
  double th = profile.theta(xi), dth = profile.dtheta(xi);
  return ((5.0 - n) / (n - 1.0)) * xi * xi *
         (0.5 * dth * dth - pow_pos(th, n + 1.0) / (n + 1.0));
}

double noether_charge_invariant_form(const EmdenProfile& profile, double xi) {
  const double n = profile.n();
  double wt = profile.index().omega_tilde();  // throws at n = 1
  auto inv = invariants_at(profile, xi);
  if (!(inv.v > 0.0))
    throw domain_error("noether_charge_invariant_form: needs xi > 0");
  return inv.omega * inv.omega * std::pow(xi, 1.0 - 2.0 * wt) *
         (0.5 + inv.u / ((n + 1.0) * inv.v) - wt / inv.v);
}

double energy_ratio(const EmdenProfile& profile, double xi) {
  const double n = profile.n();
  double th = profile.theta(xi), dth = profile.dtheta(xi);
  return 2.0 * pow_pos(th, n + 1.0) / ((n + 1.0) * dth * dth);
}

NonconservationReport check_nonconservation(const PolytropeIndex& n, double h,
                                            int n_samples) {
  if (n.is_n1()) throw domain_error("check_nonconservation: undefined at n = 1");
  if (!(h > 0.0 && h <= 0.05))
    throw domain_error("check_nonconservation: need 0 < h <= 0.05");
  if (n_samples < 2) throw domain_error("check_nonconservation: n_samples >= 2");

  // dedicated fine grid: interpolation error must stay well under the h^4
  // stencil truncation once divided by 12 h
  IntegratorOptions opts;
  opts.rtol = 1e-12;
  opts.atol = 1e-14;
  opts.max_step = 2e-3;
  double lo, hi;
  if (n.is_n5()) {
    lo = 0.5;
    hi = 10.0;
    opts.xi_max = hi + 4.0 * h + 0.1;
  } else {
    opts.xi_max = 100.0;
  }
  EmdenProfile profile = integrate_profile(n, opts);
  if (!n.is_n5()) {
    double xi1 = find_surface(profile).xi1;
    lo = 0.1 * xi1;
    hi = 0.9 * xi1;
  }

  NonconservationReport rep{{}, 0.0, 0.0};
  for (int i = 0; i < n_samples; ++i) {
    double xi = lo + (hi - lo) * i / (n_samples - 1);
    std::vector<double> x = {xi - 2 * h, xi - h, xi, xi + h, xi + 2 * h};
    std::vector<double> wts = fd_weights(x, xi, 1);
    double num = 0.0;
    for (int j = 0; j < 5; ++j) num += wts[j] * noether_charge(profile, x[j]);
    double ana = noether_rhs(profile, xi);
    rep.samples.push_back({xi, noether_charge(profile, xi), num, ana});
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::fabs(num - ana));
    rep.max_abs_rhs = std::max(rep.max_abs_rhs, std::fabs(ana));
  }
  return rep;
}

}  // namespace polylab

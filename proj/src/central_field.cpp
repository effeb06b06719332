#include "polylab/central_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polylab/quadrature.hpp"
#include "polylab/roots.hpp"

namespace polylab {

double PotentialSpec::V(double r) const {
  if (!(r > 0.0)) throw domain_error("PotentialSpec::V: r must be positive");
  if (n == 0.0) return 0.0;
  if (n > 0.0) return -k * std::pow(r, -n);
  return k * std::pow(r, -n);
}

double PotentialSpec::dV(double r) const {
  if (!(r > 0.0)) throw domain_error("PotentialSpec::dV: r must be positive");
  if (n == 0.0) return 0.0;
  return std::fabs(n) * k * std::pow(r, -n - 1.0);
}

double orbit_energy(const PotentialSpec& spec, const OrbitState& s) {
  double v2 = s.rdot * s.rdot + s.r * s.r * s.thetadot * s.thetadot;
  return 0.5 * spec.mass * v2 + spec.V(s.r);
}

double orbit_ang_mom(const PotentialSpec& spec, const OrbitState& s) {
  return spec.mass * s.r * s.r * s.thetadot;
}

OrbitState Trajectory::state_at(double t) const {
  double a = sol.t0(), b = sol.t1();
  if (!(t >= a && t <= b))
    throw domain_error("Trajectory::state_at: t outside the integrated span");
  auto y = sol.at(t);
  return {t, y[0], y[1], y[2], y[3]};
}

Trajectory integrate_orbit(const PotentialSpec& spec, const OrbitState& s0,
                           double t_end, const StepControl& ctl) {
  if (!(spec.mass > 0.0)) throw domain_error("integrate_orbit: mass > 0");
  if (!(s0.r > 0.0)) throw domain_error("integrate_orbit: r(0) > 0");
  if (!(t_end > s0.t)) throw domain_error("integrate_orbit: t_end > t(0)");

  const double r_stop = 1e-6 * s0.r;
  auto rhs = [&spec](double, const std::array<double, 4>& y,
                     std::array<double, 4>& f) {
    double r = std::max(y[0], 1e-300);  // stages may overshoot the origin
    f[0] = y[2];
    f[1] = y[3];
    f[2] = r * y[3] * y[3] - spec.dV(r) / spec.mass;
    f[3] = -2.0 * y[2] * y[3] / r;
  };
  auto stop = [r_stop](double, const std::array<double, 4>& y) {
    return y[0] <= r_stop;
  };
  auto sol = integrate_ode<4>(rhs, s0.t, t_end,
                              {s0.r, s0.theta, s0.rdot, s0.thetadot}, ctl, stop);

  Trajectory tr{spec, std::move(sol), 0, 0, 0, 0, false};
  tr.E0 = orbit_energy(spec, s0);
  tr.l0 = orbit_ang_mom(spec, s0);
  tr.hit_center = tr.sol.y.back()[0] <= r_stop;

  double v0 = std::hypot(s0.rdot, s0.r * s0.thetadot);
  double scale_E = std::max({std::fabs(tr.E0),
                             0.5 * spec.mass * v0 * v0 +
                                 std::fabs(spec.V(s0.r)),
                             1e-300});
  double scale_l = std::max({std::fabs(tr.l0), spec.mass * s0.r * v0, 1e-300});
  for (std::size_t i = 0; i < tr.sol.t.size(); ++i) {
    const auto& y = tr.sol.y[i];
    if (!(y[0] > 0.0)) break;
    OrbitState si{tr.sol.t[i], y[0], y[1], y[2], y[3]};
    tr.max_E_drift = std::max(
        tr.max_E_drift, std::fabs(orbit_energy(spec, si) - tr.E0) / scale_E);
    tr.max_l_drift = std::max(
        tr.max_l_drift, std::fabs(orbit_ang_mom(spec, si) - tr.l0) / scale_l);
  }
  return tr;
}

namespace {

struct Crossing {
  double t;
  int dir;  // +1: rdot turns positive (minimum of r), -1: maximum
};

std::vector<Crossing> radial_crossings(const Trajectory& traj) {
  const auto& sol = traj.sol;
  std::vector<Crossing> out;
  auto push = [&](double t, int dir) {
    if (!out.empty() && std::fabs(t - out.back().t) < 1e-12 * (std::fabs(t) + 1.0))
      return;
    out.push_back({t, dir});
  };
  if (sol.y[0][2] == 0.0 && sol.f[0][2] != 0.0)
    push(sol.t[0], sol.f[0][2] > 0.0 ? +1 : -1);  // launched from a turning point
  for (std::size_t i = 0; i + 1 < sol.t.size(); ++i) {
    double f0 = sol.y[i][2], f1 = sol.y[i + 1][2];
    if (f0 == 0.0 || (f0 > 0.0) == (f1 > 0.0)) continue;
    double t = root_bisect_newton(
        [&](double s) { return sol.at(s)[2]; },
        [&](double s) { return sol.deriv_at(s)[2]; }, sol.t[i], sol.t[i + 1],
        1e-13);
    push(t, f1 > f0 ? +1 : -1);
  }
  return out;
}

// times of crossings sharing the direction of the first one (one per period)
std::vector<double> same_direction_times(const std::vector<Crossing>& cross) {
  std::vector<double> times;
  if (cross.empty()) return times;
  int dir0 = cross.front().dir;
  for (const auto& c : cross)
    if (c.dir == dir0) times.push_back(c.t);
  return times;
}

}  // namespace

VirialReport virial_average(const Trajectory& traj) {
  const auto& sol = traj.sol;
  const auto& spec = traj.spec;
  if (traj.hit_center)
    throw numeric_error("virial_average: the trajectory fell to the center");
  auto times = same_direction_times(radial_crossings(traj));

  double t_a, t_b, period;
  int periods;
  if (times.size() >= 2) {
    t_a = times.front();
    t_b = times.back();
    periods = int(times.size()) - 1;
    period = (t_b - t_a) / periods;
  } else {
    // no radial oscillation resolved: accept only a circular orbit and
    // average over the whole span
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& y : sol.y) {
      rmin = std::min(rmin, y[0]);
      rmax = std::max(rmax, y[0]);
    }
    if (!(rmax - rmin < 1e-6 * sol.y[0][0]))
      throw numeric_error(
          "virial_average: span shorter than one radial period");
    t_a = sol.t0();
    t_b = sol.t1();
    periods = 0;
    period = 0.0;
  }

  auto eval = [&](double t, double& K, double& V, double& A) {
    auto y = sol.at(t);
    K = 0.5 * spec.mass * (y[2] * y[2] + y[0] * y[0] * y[3] * y[3]);
    V = spec.V(y[0]);
    A = spec.mass * y[0] * y[2];
  };
  // uniform trapezoid over whole periods: spectrally accurate for a
  // periodic integrand
  long M = std::min(4000L * std::max(periods, 1), 400000L);
  double sumK = 0, sumV = 0, K, V, A0, A1, Adum;
  for (long i = 0; i <= M; ++i) {
    double t = t_a + (t_b - t_a) * i / M;
    eval(t, K, V, Adum);
    double w = (i == 0 || i == M) ? 0.5 : 1.0;
    sumK += w * K;
    sumV += w * V;
  }
  eval(t_a, K, V, A0);
  eval(t_b, K, V, A1);
  return {sumK / M, sumV / M, (A1 - A0) / (t_b - t_a), period, periods};
}

double period_amplitude_exponent(const PotentialSpec& spec, double r0,
                                 double vt0, int n_amplitudes) {
  if (spec.n >= 2.0)
    throw domain_error(
        "period_amplitude_exponent: no bounded noncircular orbits for n >= 2");
  if (spec.n == 0.0)
    throw domain_error(
        "period_amplitude_exponent: a free particle has no radial period");
  if (!(spec.k > 0.0 && spec.mass > 0.0))
    throw domain_error("period_amplitude_exponent: k, mass > 0");
  if (!(r0 > 0.0 && vt0 > 0.0))
    throw domain_error("period_amplitude_exponent: r0, vt0 > 0");
  if (n_amplitudes < 3)
    throw domain_error("period_amplitude_exponent: need >= 3 amplitudes");

  std::vector<double> la, lT;
  for (int j = 0; j < n_amplitudes; ++j) {
    double a = r0 * std::pow(2.0, double(j) / (n_amplitudes - 1));
    double vt = vt0 * std::pow(a / r0, -spec.n / 2.0);
    OrbitState s0{0.0, a, 0.0, 0.0, vt / a};
    double t_char = std::sqrt(spec.mass * std::pow(a, 2.0 + spec.n) / spec.k);
    StepControl ctl;
    ctl.rtol = 1e-11;
    ctl.atol = 1e-13;
    ctl.max_step = 1e30;
    Trajectory tr = integrate_orbit(spec, s0, 30.0 * t_char, ctl);
    if (tr.hit_center)
      throw numeric_error("period_amplitude_exponent: orbit fell to the center");
    auto times = same_direction_times(radial_crossings(tr));
    if (times.size() < 2)
      throw numeric_error(
          "period_amplitude_exponent: no full radial period resolved");
    la.push_back(std::log(a));
    lT.push_back(std::log((times.back() - times.front()) / (times.size() - 1)));
  }

  double ma = 0, mT = 0;
  for (int j = 0; j < n_amplitudes; ++j) {
    ma += la[j];
    mT += lT[j];
  }
  ma /= n_amplitudes;
  mT /= n_amplitudes;
  double num = 0, den = 0;
  for (int j = 0; j < n_amplitudes; ++j) {
    num += (la[j] - ma) * (lT[j] - mT);
    den += (la[j] - ma) * (la[j] - ma);
  }
  return num / den;
}

QuadratureArc orbit_quadrature(const PotentialSpec& spec, double E, double l,
                               double r_from, double r_to) {
  if (!(spec.mass > 0.0)) throw domain_error("orbit_quadrature: mass > 0");
  double lo = std::min(r_from, r_to), hi = std::max(r_from, r_to);
  if (!(lo > 0.0) || !(hi > lo))
    throw domain_error("orbit_quadrature: need 0 < r_from != r_to");
  const double m = spec.mass;
  auto p = [&](double r) {
    return 2.0 * (E - spec.V(r)) / m - l * l / (m * m * r * r);
  };

  double pmax = 0.0;
  bool nonpositive = false;
  for (int i = 1; i < 400; ++i) {
    double v = p(lo + (hi - lo) * i / 400.0);
    pmax = std::max(pmax, v);
    if (v <= 0.0) nonpositive = true;
  }
  if (nonpositive) {
    if (pmax <= 0.0)
      throw domain_error("orbit_quadrature: arc lies in a forbidden region");
    throw domain_error("orbit_quadrature: radicand vanishes inside the arc");
  }

  // r = anchor +/- s^2 regularizes a turning endpoint (radicand ~ s^2);
  // harmless when the endpoint is ordinary
  auto half = [&](double anchor, double sgn, double len, double& th,
                  double& tt) {
    auto base = [&](double s, bool angular) {
      double r = anchor + sgn * s * s;
      double v = p(r);
      if (v <= 0.0) return 0.0;  // roundoff sliver next to a turning point
      double g = 2.0 * s / std::sqrt(v);
      return angular ? g * l / (m * r * r) : g;
    };
    double smax = std::sqrt(len);
    th += integrate_adaptive([&](double s) { return base(s, true); }, 0.0, smax);
    tt += integrate_adaptive([&](double s) { return base(s, false); }, 0.0, smax);
  };
  double th = 0.0, tt = 0.0;
  double mid = 0.5 * (lo + hi);
  half(lo, +1.0, mid - lo, th, tt);
  half(hi, -1.0, hi - mid, th, tt);
  return {th, tt};
}

}  // namespace polylab

#pragma once
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/ode.hpp"

namespace polylab {

// Power-law central potential, exponent convention V ~ 1/r^n:
//   n > 0: V = -k/r^n (attractive for k > 0),
//   n < 0: V = +k r^|n| (confining for k > 0),
//   n = 0: free particle, V = 0.
struct PotentialSpec {
  double n;
  double k;
  double mass;

  double V(double r) const;
  double dV(double r) const;  // dV/dr
};

struct OrbitState {
  double t, r, theta, rdot, thetadot;
};

double orbit_energy(const PotentialSpec& spec, const OrbitState& s);
double orbit_ang_mom(const PotentialSpec& spec, const OrbitState& s);

struct Trajectory {
  PotentialSpec spec;
  OdeSolution<4> sol;  // state (r, theta, rdot, thetadot) over t
  double E0, l0;
  double max_E_drift;  // relative
  double max_l_drift;
  bool hit_center;  // stopped early on collision with the origin

  OrbitState state_at(double t) const;
};

Trajectory integrate_orbit(const PotentialSpec& spec, const OrbitState& s0,
                           double t_end, const StepControl& ctl = {
                               .rtol = 1e-12, .atol = 1e-14, .max_step = 1e30});

struct VirialReport {
  double K_avg, V_avg;
  double A_drift;  // (A(end) - A(start)) / span, A = m r rdot
  double radial_period;
  int periods_used;
};
// Time averages over an integer number of radial periods, detected from
// turning points of r; a circular orbit (no turning points) averages over
// the full span.
VirialReport virial_average(const Trajectory& traj);

// Log-log slope of radial period vs amplitude for the scaled orbit family
// r(0) = a, rdot(0) = 0, v_t(a) = vt0 (a/r0)^(-n/2). Expected 1 + n/2.
double period_amplitude_exponent(const PotentialSpec& spec, double r0,
                                 double vt0, int n_amplitudes = 6);

// theta(r) and t(r) along a radial arc by quadrature at fixed (E, l);
// endpoints may be turning points (handled by the substitution r = r_t + s^2),
// but the radicand must not vanish inside the arc.
struct QuadratureArc {
  double delta_theta, delta_t;
};
QuadratureArc orbit_quadrature(const PotentialSpec& spec, double E, double l,
                               double r_from, double r_to);

}  // namespace polylab

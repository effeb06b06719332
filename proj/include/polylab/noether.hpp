#pragma once
#include <vector>

#include "polylab/emden.hpp"

namespace polylab {

// The scaling Noether charge along a profile, in units of -H_c^2/G (only the
// dimensionless bracket is computed; the dimensional prefactor is a unit tag):
//   B(xi) = xi^3 (theta'^2/2 + theta^(n+1)/(n+1)) + (2/(n-1)) xi^2 theta theta'
// Undefined at n = 1 where the scaling weight diverges.
double noether_charge(const EmdenProfile& profile, double xi);

// Radial derivative of the bracket, simplified with the field equation:
//   dB/dxi = ((5-n)/(n-1)) xi^2 (theta'^2/2 - theta^(n+1)/(n+1)).
// (A quoted form carries the opposite prefactor sign because it attaches to
// the charge including its -H_c^2/G tag, and truncates theta'^2 to theta';
// differentiating B directly settles both.)
double noether_rhs(const EmdenProfile& profile, double xi);

// Same bracket value expressed through the homology invariants,
//   B = omega^2 xi^(1-2*omega_tilde) (1/2 + u/((n+1)v) - omega_tilde/v),
// used as an independent cross-check of noether_charge.
double noether_charge_invariant_form(const EmdenProfile& profile, double xi);

// Ratio of the internal term to the gravitational term inside the charge,
// 2 theta^(n+1) / ((n+1) theta'^2): runs from infinity at the center to 0 at
// the surface.
double energy_ratio(const EmdenProfile& profile, double xi);

struct ChargeSample {
  double xi;
  double G_value;
  double dG_dxi_numeric;
  double dG_dxi_analytic;
};

struct NonconservationReport {
  std::vector<ChargeSample> samples;
  double max_abs_diff;  // max |numeric - analytic|
  double max_abs_rhs;   // scale for the relative bound
};

// Finite-differences the charge along a dedicated fine profile and compares
// against noether_rhs. 4th-order central stencil, spacing h.
NonconservationReport check_nonconservation(const PolytropeIndex& n,
                                            double h = 0.01,
                                            int n_samples = 40);

}  // namespace polylab

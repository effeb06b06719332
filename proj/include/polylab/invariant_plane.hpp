#pragma once
#include <vector>

#include "polylab/emden.hpp"
#include "polylab/errors.hpp"
#include "polylab/ode.hpp"

namespace polylab {

// Regular branch of dw/du = w(u-1+w/n) / [u(3-u-w)], integrated in two
// charts so the small quantity is always the integration variable:
//   chart A: z = 3-u on [eps, 1/2]   (z small near the center),
//   chart B: s = log u, u from 5/2 down to u_min (u small near the surface).
// This avoids forming 3-z = u by subtraction where it underflows.
class InvariantCurve {
 public:
  struct Sample {
    double u, z, w;
  };

  PolytropeIndex index;
  std::vector<Sample> samples;  // ordered by increasing z

  // terminal divergence w ~ A u^(-1/n) (1 + b u^(1/n)) near u -> 0;
  // meaningful only for 0 < n < 5 (NaN otherwise)
  double div_amplitude = 0;   // A
  double div_correction = 0;  // b
  double divergence_exponent() const { return 1.0 / index.n; }

  double u_min() const;
  double z_max() const;
  // dense evaluation of w at z in [0, z_max]
  double w_at_z(double z) const;

  // chart solutions (A: t = z, B: t = log u), exposed for the quadratures
  const OdeSolution<1>& chart_a() const { return a_; }
  const OdeSolution<1>& chart_b() const { return b_; }
  double chart_split_z() const { return split_z_; }

  InvariantCurve(PolytropeIndex idx, OdeSolution<1> a, OdeSolution<1> b,
                 double split_z);
  // exact straight-line branches: w = 0 (n = 0) and w = (5/3) z (n = 5)
  InvariantCurve(PolytropeIndex idx, double u_min);

 private:
  OdeSolution<1> a_, b_;
  double split_z_;
};

// Right side of the first-order scale-invariant equation.
double rhs_wu(const PolytropeIndex& n, double u, double w);

InvariantCurve integrate_wu(const PolytropeIndex& n, double u_min = 1e-11,
                            double eps = 1e-6);

// Closed-form core-value insertion, w(z) = (5/J)[1 - (1-z/3)^J].
double picard_w(const PolytropeIndex& n, double z);

// Profile recovered from the invariant curve by quadrature.
struct ReconstructedProfile {
  std::vector<double> z, w, rho_frac, theta, m_frac, r_frac;
};
ReconstructedProfile reconstruct(const PolytropeIndex& n,
                                 const InvariantCurve& curve);

}  // namespace polylab

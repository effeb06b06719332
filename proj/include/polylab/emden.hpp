#pragma once
#include <optional>
#include <vector>

#include "polylab/errors.hpp"
#include "polylab/ode.hpp"

namespace polylab {

// Polytropic index n with its derived exponents and special-case flags.
//
// J is the exponent of the closed-form density-gradient approximation
// w(z) ~ (5/J)[1 - (1-z/3)^J]. J = (9n-10)/(7n) is fixed by two conditions:
// the approximation must be exact for n = 5 (J = 1, where w = (5/3)z solves
// the invariant-plane equation identically) and its z^2 coefficient
// -5(J-1)/18 must match the regular solution's exact z^2 coefficient
// 5(5-n)/(63n). Quoted forms with denominator (7-n) satisfy neither.
struct PolytropeIndex {
  double n;

  explicit PolytropeIndex(double n_) : n(n_) {
    if (!(n >= 0.0 && n <= 5.0))
      throw domain_error("PolytropeIndex: n must lie in [0, 5]");
  }

  double omega_tilde() const {  // scaling weight, undefined at n = 1
    if (is_n1()) throw domain_error("omega_tilde undefined at n = 1");
    return 2.0 / (n - 1.0);
  }
  double picard_N() const {  // exponent of (1 + xi^2/6N)^-N, undefined n = 5/3
    if (is_singular_N()) throw domain_error("Picard N undefined at n = 5/3");
    return 5.0 / (3.0 * n - 5.0);
  }
  double picard_J() const {  // z-plane exponent, undefined at n = 0
    if (is_singular_J()) throw domain_error("Picard J undefined at n = 0");
    return (9.0 * n - 10.0) / (7.0 * n);
  }
  bool is_n1() const { return n == 1.0; }
  bool is_n5() const { return n == 5.0; }
  bool is_singular_N() const { return 3.0 * n == 5.0; }
  bool is_singular_J() const { return n == 0.0; }
};

struct IntegratorOptions {
  double xi0 = 1e-3;  // series-start radius
  double rtol = 1e-10;
  double atol = 1e-14;
  double max_step = 0.05;
  double xi_max = 100.0;  // integration cutoff (reached only for n = 5)
};

struct HomologyInvariants {
  double u;      // -xi theta^n / theta'
  double v;      // -xi theta' / theta
  double w;      // n v
  double z;      // 3 - u
  double omega;  // -xi^(1+omega_tilde) theta' (NaN at n = 1)
};

struct SurfaceConstants {
  double xi1;                    // first zero of theta (inf for n = 5)
  double m1;                     // (-xi^2 theta') at xi1
  std::optional<double> omega0;  // surface invariant, undefined at n = 1
  double rho_ratio;              // rho_c / rho_bar(R) = xi1^3 / (3 m1)
  double xi_core;                // u(xi_core) = 2
  double r_core_frac;            // xi_core / xi1
  double m_core_frac;            // m(xi_core) / M
};

// Radial grid of (xi, theta, theta') for one index, immutable.
class EmdenProfile {
 public:
  EmdenProfile(PolytropeIndex idx, IntegratorOptions opts,
               OdeSolution<2> sol, bool bracketed)
      : idx_(idx), opts_(opts), sol_(std::move(sol)), bracketed_(bracketed) {}

  const PolytropeIndex& index() const { return idx_; }
  double n() const { return idx_.n; }
  const IntegratorOptions& options() const { return opts_; }
  const OdeSolution<2>& solution() const { return sol_; }
  bool surface_bracketed() const { return bracketed_; }

  double xi_begin() const { return sol_.t0(); }
  double xi_end() const { return sol_.t1(); }

  // theta/theta' anywhere in [0, xi_end]: series below the start radius,
  // cubic Hermite on the stored grid above it.
  double theta(double xi) const;
  double dtheta(double xi) const;

  struct Node {
    double xi, theta, dtheta;
  };
  // stored nodes with theta > 0 (the final bracketing node is internal)
  std::vector<Node> nodes() const;

 private:
  PolytropeIndex idx_;
  IntegratorOptions opts_;
  OdeSolution<2> sol_;
  bool bracketed_;
};

// General-n series start: theta = 1 - xi^2/6 + n xi^4/120 - n(8n-5) xi^6/15120.
// Validated for 0 <= xi <= 0.1.
struct SeriesValue {
  double theta, dtheta;
};
SeriesValue taylor_start(const PolytropeIndex& n, double xi);

EmdenProfile integrate_profile(const PolytropeIndex& n,
                               const IntegratorOptions& opts = {});

SurfaceConstants find_surface(const EmdenProfile& profile);

HomologyInvariants invariants_at(const EmdenProfile& profile, double xi);

struct CoreRadius {
  double xi_core, r_core_frac, m_core_frac;
};
CoreRadius core_radius(const EmdenProfile& profile);

struct PhysicalProfile {
  double K, rho_c;
  double alpha;  // length scale, cm
  double H_c;    // central specific enthalpy
  std::vector<double> r, rho, m, rho_bar, g;
};
PhysicalProfile dimensionalize(const EmdenProfile& profile, double K,
                               double rho_c);

enum class Given { mass, radius };
struct MassRadius {
  double M, R;
};
// Missing member of the (M, R) pair for a polytrope of constant K. Degenerate
// dispatch: n = 1 fixes R regardless of M (reject given radius); n = 3 fixes
// M regardless of R (reject given mass); n = 0 uses the unit-central-density
// convention (K drops out); n = 5 has R = inf.
MassRadius mass_radius(const PolytropeIndex& n, double K, Given which,
                       double value, const IntegratorOptions& opts = {});

}  // namespace polylab

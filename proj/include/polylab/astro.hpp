#pragma once

namespace polylab {

// Appendix-level n = 3 astrophysics in CGS. Every function that depends on
// the surface invariant of the n = 3 polytrope takes it (or the stellar mass
// unit M_star derived from it) as an argument, so table accuracy propagates.

// Relativistic-degeneracy polytropic constant,
// K_wd = (hc/8)(3/pi)^(1/3) (m_H mu_e)^(-4/3).
double k_wd(double mu_e);

// Stellar mass unit M_star = (3 sqrt(10) omega0_3 / pi^3) (hc/G)^(3/2) m_H^-2.
double m_star(double omega0_3);

// Limiting white-dwarf mass, closed form (pi^2 / (8 sqrt(15))) M_star / mu_e^2.
double chandrasekhar_mass(double mu_e, double omega0_3);

// Same mass through the n = 3 structural route, 4 pi omega0_3 (K_wd/pi G)^(3/2).
double chandrasekhar_mass_pipeline(double mu_e, double omega0_3);

struct WhiteDwarfModel {
  double mu_e;
  double K_wd;
  double M_ch;  // g
};
WhiteDwarfModel make_white_dwarf(double mu_e, double omega0_3);

// Gas-pressure fraction: unique root in (0, 1] of (1-beta)/beta^4 = (M mu^2
// / M_star)^2, bisection plus Newton polish to 1e-12.
double eddington_beta(double M, double mu, double m_star_val);
// Bisection-only root, kept as the correctness oracle.
double eddington_beta_bisect(double M, double mu, double m_star_val);

// K(M) = {[3(1-beta)/a] (R_gas/(mu beta))^4}^(1/3); beta = 1 is degenerate
// (no radiation pressure, K = 0 exactly there is rejected).
double k_zams(double beta, double mu);

struct ZamsModel {
  double M, mu, kappa_p;
  double beta;
  double K;
  double M_star;
  double L_edd;  // 4 pi c G M / kappa_p
  double L;      // L_edd (1 - beta)
};
ZamsModel make_zams(double M, double mu, double kappa_p, double omega0_3);

struct EntropyState {
  double T, rho, mu;
  double S_rad;           // 4 a T^3 / (3 rho)
  double S_gas;           // (R_gas/mu) log(T^(5/2)/P_gas)
  double pressure_ratio;  // P_rad/P_gas = (1-beta)/beta = a T^3 mu / (3 R_gas rho)
};
EntropyState entropies(double T, double rho, double mu);

struct EntropyGradient {
  double dS_dlogP;  // (R_gas/mu) (5/(2(n+1)) - 1)
  bool stable;      // against convection, iff n > 3/2
};
EntropyGradient gas_entropy_gradient(double n, double mu);

}  // namespace polylab

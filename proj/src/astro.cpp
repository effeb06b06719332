#include "polylab/astro.hpp"

#include <cmath>
#include <string>

#include "polylab/constants.hpp"
#include "polylab/errors.hpp"
#include "polylab/roots.hpp"

namespace polylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_pos(double v, const char* what) {
  if (!(v > 0.0)) throw domain_error(std::string(what) + " must be positive");
}

}  // namespace

double k_wd(double mu_e) {
  require_pos(mu_e, "k_wd: mu_e");
  const auto k = constants();
  return (k.h * k.c / 8.0) * std::cbrt(3.0 / kPi) *
         std::pow(k.m_H * mu_e, -4.0 / 3.0);
}

double m_star(double omega0_3) {
  require_pos(omega0_3, "m_star: omega0_3");
  const auto k = constants();
  return (3.0 * std::sqrt(10.0) * omega0_3 / (kPi * kPi * kPi)) *
         std::pow(k.h * k.c / k.G, 1.5) / (k.m_H * k.m_H);
}

double chandrasekhar_mass(double mu_e, double omega0_3) {
  require_pos(mu_e, "chandrasekhar_mass: mu_e");
  return (kPi * kPi / (8.0 * std::sqrt(15.0))) * m_star(omega0_3) /
         (mu_e * mu_e);
}

double chandrasekhar_mass_pipeline(double mu_e, double omega0_3) {
  require_pos(omega0_3, "chandrasekhar_mass_pipeline: omega0_3");
  const auto k = constants();
  return 4.0 * kPi * omega0_3 * std::pow(k_wd(mu_e) / (kPi * k.G), 1.5);
}

WhiteDwarfModel make_white_dwarf(double mu_e, double omega0_3) {
  return {mu_e, k_wd(mu_e), chandrasekhar_mass(mu_e, omega0_3)};
}

double eddington_beta_bisect(double M, double mu, double m_star_val) {
  require_pos(M, "eddington_beta: M");
  require_pos(mu, "eddington_beta: mu");
  require_pos(m_star_val, "eddington_beta: m_star_val");
  double x = M * mu * mu / m_star_val;
  auto g = [x](double b) { return (1.0 - b) - x * x * b * b * b * b; };
  return root_bisect(g, 0.0, 1.0, 1e-14);
}

double eddington_beta(double M, double mu, double m_star_val) {
  require_pos(M, "eddington_beta: M");
  require_pos(mu, "eddington_beta: mu");
  require_pos(m_star_val, "eddington_beta: m_star_val");
  double x = M * mu * mu / m_star_val;
  auto g = [x](double b) { return (1.0 - b) - x * x * b * b * b * b; };
  auto dg = [x](double b) { return -1.0 - 4.0 * x * x * b * b * b; };
  return root_bisect_newton(g, dg, 0.0, 1.0, 1e-13);
}

double k_zams(double beta, double mu) {
  require_pos(mu, "k_zams: mu");
  if (!(beta > 0.0 && beta < 1.0))
    throw domain_error("k_zams: need 0 < beta < 1");
  const auto k = constants();
  double q = k.R_gas / (mu * beta);
  return std::cbrt(3.0 * (1.0 - beta) / k.a_rad * q * q * q * q);
}

ZamsModel make_zams(double M, double mu, double kappa_p, double omega0_3) {
  require_pos(kappa_p, "make_zams: kappa_p");
  const auto k = constants();
  double Ms = m_star(omega0_3);
  double beta = eddington_beta(M, mu, Ms);
  double L_edd = 4.0 * kPi * k.c * k.G * M / kappa_p;
  return {M, mu, kappa_p, beta, k_zams(beta, mu), Ms, L_edd,
          L_edd * (1.0 - beta)};
}

EntropyState entropies(double T, double rho, double mu) {
  require_pos(T, "entropies: T");
  require_pos(rho, "entropies: rho");
  require_pos(mu, "entropies: mu");
  const auto k = constants();
  double P_gas = rho * k.R_gas * T / mu;
  double S_rad = 4.0 * k.a_rad * T * T * T / (3.0 * rho);
  double S_gas = (k.R_gas / mu) * std::log(std::pow(T, 2.5) / P_gas);
  double ratio = k.a_rad * T * T * T * mu / (3.0 * k.R_gas * rho);
  return {T, rho, mu, S_rad, S_gas, ratio};
}

EntropyGradient gas_entropy_gradient(double n, double mu) {
  require_pos(mu, "gas_entropy_gradient: mu");
  if (!(n >= 0.0)) throw domain_error("gas_entropy_gradient: need n >= 0");
  const auto k = constants();
  double d = (k.R_gas / mu) * (5.0 / (2.0 * (n + 1.0)) - 1.0);
  return {d, n > 1.5};
}

}  // namespace polylab

#include <cmath>

#include "doctest.h"
#include "polylab/astro.hpp"
#include "polylab/constants.hpp"
#include "polylab/emden.hpp"
#include "polylab/errors.hpp"

using namespace polylab;

namespace {

double omega0_3() {
  static double v = *find_surface(integrate_profile(PolytropeIndex(3.0))).omega0;
  return v;
}

}  // namespace

TEST_CASE("constants: radiation and gas constants") {
  const auto k = constants();
  CHECK(k.a_rad == doctest::Approx(7.56573325e-15).epsilon(1e-8));
  CHECK(k.R_gas == doctest::Approx(8.31446262e7).epsilon(1e-8));
  CHECK(k.R_gas * k.m_H == doctest::Approx(k.k_B).epsilon(1e-15));
}

TEST_CASE("k_wd: value and composition scaling") {
  CHECK(k_wd(2.0) == doctest::Approx(4.93482491e14).epsilon(1e-8));
  // K_wd mu_e^(4/3) is composition independent
  double c1 = k_wd(1.0), c2 = k_wd(2.0) * std::pow(2.0, 4.0 / 3.0);
  CHECK(c2 == doctest::Approx(c1).epsilon(1e-14));
  CHECK(c1 == doctest::Approx(1.24349796e15).epsilon(1e-8));
  CHECK_THROWS_AS(k_wd(0.0), domain_error);
  CHECK_THROWS_AS(k_wd(-2.0), domain_error);
}

TEST_CASE("m_star: anchor value, linear in the surface invariant") {
  double om = omega0_3();
  CHECK(om == doctest::Approx(2.0182359510).epsilon(1e-9));
  double Ms = m_star(om);
  CHECK(Ms == doctest::Approx(3.636234579251714e34).epsilon(1e-9));
  CHECK(Ms / constants().M_sun == doctest::Approx(18.281723).epsilon(1e-6));
  CHECK(m_star(2.0 * om) == doctest::Approx(2.0 * Ms).epsilon(1e-15));
  CHECK_THROWS_AS(m_star(0.0), domain_error);
}

TEST_CASE("chandrasekhar_mass: value, mu_e scaling, route identity") {
  double om = omega0_3();
  double mch2 = chandrasekhar_mass(2.0, om);
  CHECK(mch2 / constants().M_sun ==
        doctest::Approx(1.4558654742548365).epsilon(1e-9));
  CHECK(mch2 / constants().M_sun == doctest::Approx(1.456).epsilon(0.01));
  // scales as mu_e^-2
  CHECK(chandrasekhar_mass(1.0, om) == doctest::Approx(4.0 * mch2).epsilon(1e-14));
  // the structural route is the same number, not just close
  for (double mu_e : {1.0, 2.0, 2.15}) {
    CAPTURE(mu_e);
    CHECK(chandrasekhar_mass_pipeline(mu_e, om) ==
          doctest::Approx(chandrasekhar_mass(mu_e, om)).epsilon(1e-12));
  }
  auto wd = make_white_dwarf(2.0, om);
  CHECK(wd.mu_e == 2.0);
  CHECK(wd.K_wd == k_wd(2.0));
  CHECK(wd.M_ch == mch2);
}

TEST_CASE("eddington_beta: quartic root, asymptotes, oracle agreement") {
  double om = omega0_3();
  double Ms = m_star(om);
  const auto k = constants();

  // at M mu^2 = M_star the quartic is 1 - b = b^4
  double b1 = eddington_beta(Ms, 1.0, Ms);
  CHECK(b1 == doctest::Approx(0.724491959001).epsilon(1e-10));
  CHECK(1.0 - b1 == doctest::Approx(std::pow(b1, 4)).epsilon(1e-10));

  // small stars are gas pressure dominated: 1 - beta -> x^2
  double x_small = 1e-3;
  double bs = eddington_beta(x_small * Ms, 1.0, Ms);
  CHECK(1.0 - bs == doctest::Approx(x_small * x_small).epsilon(1e-2));
  // huge stars: beta -> 1/sqrt(x)
  double x_big = 1e6;
  double bb = eddington_beta(x_big * Ms, 1.0, Ms);
  CHECK(bb * std::sqrt(x_big) == doctest::Approx(1.0).epsilon(1e-3));

  for (double Msun : {0.1, 1.0, 10.0, 100.0, 1e4}) {
    CAPTURE(Msun);
    double M = Msun * k.M_sun;
    CHECK(std::fabs(eddington_beta(M, 0.61, Ms) -
                    eddington_beta_bisect(M, 0.61, Ms)) < 1e-10);
  }
  CHECK_THROWS_AS(eddington_beta(0.0, 0.61, Ms), domain_error);
  CHECK_THROWS_AS(eddington_beta(1e33, 0.0, Ms), domain_error);
  CHECK_THROWS_AS(eddington_beta(1e33, 0.61, 0.0), domain_error);
}

TEST_CASE("make_zams: solar anchor") {
  const auto k = constants();
  auto z = make_zams(k.M_sun, 0.61, 0.34, omega0_3());
  CHECK(z.beta == doctest::Approx(0.9995864133621443).epsilon(1e-10));
  CHECK(z.K == doctest::Approx(3.841707103229e14).epsilon(1e-9));
  CHECK(z.L_edd == doctest::Approx(1.47093051e38).epsilon(1e-7));
  CHECK(z.L / k.L_sun == doctest::Approx(15.892298).epsilon(1e-5));
  CHECK(z.L == doctest::Approx(z.L_edd * (1.0 - z.beta)).epsilon(1e-14));

  // K(beta, mu) inverts: a K^3 / 3 (1 - beta) = (R/(mu beta))^4
  double lhs = k.a_rad * z.K * z.K * z.K / (3.0 * (1.0 - z.beta));
  double q = k.R_gas / (0.61 * z.beta);
  CHECK(lhs == doctest::Approx(q * q * q * q).epsilon(1e-12));
  CHECK_THROWS_AS(k_zams(1.0, 0.61), domain_error);
  CHECK_THROWS_AS(k_zams(0.0, 0.61), domain_error);
  CHECK_THROWS_AS(make_zams(k.M_sun, 0.61, 0.0, omega0_3()), domain_error);
}

TEST_CASE("entropies: radiation-to-gas pressure bookkeeping") {
  const auto k = constants();
  auto e = entropies(1e7, 100.0, 0.61);
  CHECK(e.pressure_ratio == doctest::Approx(1.85025e-4).epsilon(1e-4));
  // S_rad = 4 (R/mu) P_rad/P_gas identically
  CHECK(e.S_rad ==
        doctest::Approx(4.0 * (k.R_gas / 0.61) * e.pressure_ratio)
            .epsilon(1e-14));
  CHECK(e.S_rad == doctest::Approx(4.0 * k.a_rad * 1e21 / 300.0).epsilon(1e-14));
  CHECK(e.S_gas > 0.0);
  // gas entropy grows with T at fixed density
  auto e2 = entropies(2e7, 100.0, 0.61);
  CHECK(e2.S_gas > e.S_gas);
  // and the ratio scales as T^3 / rho
  auto e3 = entropies(2e7, 200.0, 0.61);
  CHECK(e3.pressure_ratio == doctest::Approx(4.0 * e.pressure_ratio).epsilon(1e-12));
  CHECK_THROWS_AS(entropies(0.0, 1.0, 0.61), domain_error);
  CHECK_THROWS_AS(entropies(1e7, -1.0, 0.61), domain_error);
}

TEST_CASE("gas_entropy_gradient: sign decides convective stability") {
  const auto k = constants();
  auto g3 = gas_entropy_gradient(3.0, 0.61);
  CHECK(g3.dS_dlogP ==
        doctest::Approx(-0.375 * k.R_gas / 0.61).epsilon(1e-14));
  CHECK(g3.stable);
  auto g1 = gas_entropy_gradient(1.0, 0.61);
  CHECK(g1.dS_dlogP == doctest::Approx(0.25 * k.R_gas / 0.61).epsilon(1e-14));
  CHECK_FALSE(g1.stable);
  auto gm = gas_entropy_gradient(1.5, 1.0);
  CHECK(gm.dS_dlogP == doctest::Approx(0.0));
  CHECK_FALSE(gm.stable);
  CHECK(gas_entropy_gradient(4.0, 0.61).stable);
  CHECK_THROWS_AS(gas_entropy_gradient(-0.5, 0.61), domain_error);
  CHECK_THROWS_AS(gas_entropy_gradient(3.0, 0.0), domain_error);
}

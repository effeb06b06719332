#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polylab/constants.hpp"
#include "polylab/emden.hpp"
#include "polylab/rational.hpp"

using namespace polylab;
constexpr double pi = std::numbers::pi;

namespace {

// Frozen against an independent high-accuracy integration (rtol 1e-13)
// of the hydrostatic series-started initial value problem.
struct SurfaceOracle {
  double n, xi1, m1, rho_ratio, omega0;  // omega0 < 0 flags "undefined"
  double xi_core, r_core_frac, m_core_frac, theta_n_core;
};
constexpr SurfaceOracle kOracle[] = {
    {0.0, 2.4494897428, 4.8989794856, 1.0, 1.0 / 3.0,
     2.4494897428, 1.0, 1.0, 1.0},
    {1.0, 3.1415926536, 3.1415926536, 3.2898681337, -1.0,
     2.0815759778, 0.6625862126, 0.6015922316, 0.41908806},
    {1.5, 3.6537537362, 2.7140551201, 5.9907045163, 132.3842992564,
     1.8775227053, 0.5138613166, 0.4861480819, 0.39871414},
    {2.0, 4.3528745959, 2.4110460121, 11.4025428619, 10.4949809357,
     1.7209054043, 0.3953491805, 0.4090976931, 0.38707180},
    {3.0, 6.8968486194, 2.0182359510, 54.1824811073, 2.0182359510,
     1.4959991684, 0.2169105415, 0.3103945635, 0.37421568},
    {4.0, 14.9715463488, 1.7972299144, 622.4078822506, 0.7292023938,
     1.3403639686, 0.0895274234, 0.2460384259, 0.36725553},
    {4.5, 31.8364632447, 1.7377988677, 6189.4731249516, 0.3943563831,
     1.2786737264, 0.0401638121, 0.2194628339, 0.36484741},
};

EmdenProfile make_profile(double n) {
  return integrate_profile(PolytropeIndex(n));
}

}  // namespace

TEST_CASE("index guards and derived exponents") {
  CHECK_THROWS_AS(PolytropeIndex(-0.1), domain_error);
  CHECK_THROWS_AS(PolytropeIndex(5.1), domain_error);
  CHECK(PolytropeIndex(3.0).omega_tilde() == doctest::Approx(1.0));
  CHECK(PolytropeIndex(0.0).omega_tilde() == doctest::Approx(-2.0));
  CHECK_THROWS_AS(PolytropeIndex(1.0).omega_tilde(), domain_error);
  CHECK(PolytropeIndex(3.0).picard_N() == doctest::Approx(1.25));
  CHECK_THROWS_AS(PolytropeIndex(5.0 / 3.0).picard_N(), domain_error);
  CHECK(PolytropeIndex(5.0).picard_J() == doctest::Approx(1.0));
  CHECK(PolytropeIndex(3.0).picard_J() == doctest::Approx(17.0 / 21.0));
  CHECK_THROWS_AS(PolytropeIndex(0.0).picard_J(), domain_error);
}

TEST_CASE("series start matches the exact rational coefficients") {
  PolytropeIndex idx(2.5);
  auto c = emden_series(Rational(5, 2), 3);
  for (double xi : {0.01, 0.05, 0.1}) {
    auto sv = taylor_start(idx, xi);
    double x = xi * xi;
    double th = c[0].value() + x * (c[1].value() +
                x * (c[2].value() + x * c[3].value()));
    CHECK(sv.theta == doctest::Approx(th).epsilon(1e-13));
    double dth = 2 * xi * (c[1].value() + x * (2 * c[2].value() +
                 x * 1.5 * c[3].value() * 2));
    CHECK(sv.dtheta == doctest::Approx(dth).epsilon(1e-10));
  }
  CHECK(taylor_start(idx, 0.0).theta == 1.0);
  CHECK(taylor_start(idx, 0.0).dtheta == 0.0);
}

TEST_CASE("surface constants across the polytropic range") {
  for (const auto& o : kOracle) {
    CAPTURE(o.n);
    auto profile = make_profile(o.n);
    auto s = find_surface(profile);
    CHECK(s.xi1 == doctest::Approx(o.xi1).epsilon(1e-8));
    CHECK(s.m1 == doctest::Approx(o.m1).epsilon(1e-8));
    CHECK(s.rho_ratio == doctest::Approx(o.rho_ratio).epsilon(1e-8));
    if (o.omega0 < 0) {
      CHECK_FALSE(s.omega0.has_value());
    } else {
      REQUIRE(s.omega0.has_value());
      CHECK(*s.omega0 == doctest::Approx(o.omega0).epsilon(1e-8));
    }
    CHECK(s.xi_core == doctest::Approx(o.xi_core).epsilon(1e-8));
    CHECK(s.r_core_frac == doctest::Approx(o.r_core_frac).epsilon(1e-8));
    CHECK(s.m_core_frac == doctest::Approx(o.m_core_frac).epsilon(1e-8));
    double th = profile.theta(s.xi_core);
    double rho_core = o.n > 0 ? std::pow(th, o.n) : 1.0;
    CHECK(rho_core == doctest::Approx(o.theta_n_core).epsilon(1e-6));
  }
}

TEST_CASE("closed forms: incompressible, isothermal-like, and singular ends") {
  auto p0 = make_profile(0.0);
  for (double xi = 0.0; xi < 2.4; xi += 0.1)
    CHECK(std::fabs(p0.theta(xi) - (1.0 - xi * xi / 6.0)) < 1e-10);

  auto p1 = make_profile(1.0);
  for (double xi = 0.05; xi < 3.1; xi += 0.05)
    CHECK(std::fabs(p1.theta(xi) - std::sin(xi) / xi) < 1e-8);

  auto p5 = make_profile(5.0);
  CHECK_FALSE(p5.surface_bracketed());
  CHECK(p5.xi_end() == doctest::Approx(100.0));
  for (double xi = 0.1; xi < 99.0; xi *= 1.7)
    CHECK(std::fabs(p5.theta(xi) - 1.0 / std::sqrt(1.0 + xi * xi / 3.0)) <
          1e-8);
}

TEST_CASE("n = 5 surface constants are the analytic limits") {
  auto s = find_surface(make_profile(5.0));
  CHECK(std::isinf(s.xi1));
  CHECK(s.m1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
  REQUIRE(s.omega0.has_value());
  CHECK(*s.omega0 == 0.0);
  CHECK(std::isinf(s.rho_ratio));
  CHECK(s.xi_core == doctest::Approx(std::sqrt(1.5)).epsilon(1e-8));
  CHECK(s.r_core_frac == 0.0);
  CHECK(s.m_core_frac ==
        doctest::Approx(1.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-7));
}

TEST_CASE("profile evaluation domain") {
  auto p = make_profile(3.0);
  CHECK(p.theta(0.0) == 1.0);
  CHECK(p.dtheta(0.0) == 0.0);
  CHECK_THROWS_AS(p.theta(-0.1), domain_error);
  CHECK_THROWS_AS(p.theta(p.xi_end() + 1.0), domain_error);
  for (const auto& nd : p.nodes()) CHECK(nd.theta > 0.0);
}

TEST_CASE("homology invariants: identities along the profile") {
  auto p = make_profile(3.0);
  for (double xi : {0.5, 1.0, 2.0, 4.0, 6.0}) {
    auto inv = invariants_at(p, xi);
    double th = p.theta(xi);
    CHECK(inv.w == doctest::Approx(3.0 * inv.v).epsilon(1e-14));
    CHECK(inv.z == doctest::Approx(3.0 - inv.u).epsilon(1e-12));
    // u v = xi^2 theta^(n-1)
    CHECK(inv.u * inv.v ==
          doctest::Approx(xi * xi * th * th).epsilon(1e-9));
    // omega = -xi^(1+omega_tilde) theta' with omega_tilde = 1 at n = 3
    CHECK(inv.omega == doctest::Approx(-xi * xi * p.dtheta(xi)).epsilon(1e-12));
  }
}

TEST_CASE("homology invariants: center limits") {
  auto p3 = make_profile(3.0);
  auto c3 = invariants_at(p3, 0.0);
  CHECK(c3.u == 3.0);
  CHECK(c3.v == 0.0);
  CHECK(c3.w == 0.0);
  CHECK(c3.z == 0.0);
  CHECK(c3.omega == 0.0);
  auto c1 = invariants_at(make_profile(1.0), 0.0);
  CHECK(std::isnan(c1.omega));
  auto ch = invariants_at(make_profile(0.5), 0.0);
  CHECK(std::isinf(ch.omega));
  CHECK_THROWS_AS(invariants_at(p3, 6.95), domain_error);  // theta <= 0 there
}

TEST_CASE("log-derivative of u equals 3 - u - w") {
  auto p = make_profile(3.0);
  double h = 1e-3;
  for (double xi : {0.8, 1.5, 3.0, 5.0}) {
    std::vector<double> ts = {std::log(xi) - 2 * h, std::log(xi) - h,
                              std::log(xi), std::log(xi) + h,
                              std::log(xi) + 2 * h};
    auto wts = fd_weights(ts, std::log(xi), 1);
    double d = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      d += wts[i] * std::log(invariants_at(p, std::exp(ts[i])).u);
    auto inv = invariants_at(p, xi);
    CHECK(d == doctest::Approx(3.0 - inv.u - inv.w).epsilon(1e-6));
  }
}

TEST_CASE("core radius: u crosses 2 near 0.4 central density") {
  for (double n : {1.0, 1.5, 2.0, 3.0, 4.0, 4.5}) {
    CAPTURE(n);
    auto p = make_profile(n);
    auto cr = core_radius(p);
    CHECK(invariants_at(p, cr.xi_core).u == doctest::Approx(2.0).epsilon(1e-9));
    double rho = std::pow(p.theta(cr.xi_core), n);
    CHECK(rho > 0.35);
    CHECK(rho < 0.45);
  }
  auto cr0 = core_radius(make_profile(0.0));
  CHECK(cr0.r_core_frac == 1.0);
  CHECK(cr0.m_core_frac == 1.0);
}

TEST_CASE("dimensionalize: fields are mutually consistent") {
  auto p = make_profile(3.0);
  double K = 3.8e14, rho_c = 1e6;
  auto phys = dimensionalize(p, K, rho_c);
  const double G = constants().G;
  CHECK(phys.alpha > 0);
  CHECK(phys.H_c == doctest::Approx(4.0 * K * std::cbrt(rho_c)).epsilon(1e-12));
  CHECK(phys.rho.front() == doctest::Approx(rho_c).epsilon(1e-6));
  auto nodes = p.nodes();
  REQUIRE(phys.r.size() == nodes.size());
  for (std::size_t i = 20; i < phys.r.size(); i += 500) {
    // g = G m / r^2 (surface gravity of the enclosed mass)
    CHECK(phys.g[i] ==
          doctest::Approx(G * phys.m[i] / (phys.r[i] * phys.r[i]))
              .epsilon(1e-10));
    // mean density of the enclosed sphere
    double vol = 4.0 * pi * std::pow(phys.r[i], 3) / 3.0;
    CHECK(phys.rho_bar[i] == doctest::Approx(phys.m[i] / vol).epsilon(1e-10));
    CHECK(phys.m[i] >= phys.m[i - 1]);  // mass nondecreasing
  }
  // near the center, mean density obeys rho_bar = rho_c^(2/5) rho^(3/5)
  double xi = 0.2;
  std::size_t j = 0;
  while (nodes[j].xi < xi) ++j;
  double rho_bar_pred =
      std::pow(rho_c, 0.4) * std::pow(phys.rho[j], 0.6);
  CHECK(phys.rho_bar[j] == doctest::Approx(rho_bar_pred).epsilon(2e-4));
}

TEST_CASE("dimensionalize: total mass independent of central density at n=3") {
  auto p = make_profile(3.0);
  double K = 3.8e14;
  double m_lo = dimensionalize(p, K, 1e5).m.back();
  double m_hi = dimensionalize(p, K, 1e9).m.back();
  CHECK(m_lo == doctest::Approx(m_hi).epsilon(1e-6));
}

TEST_CASE("mass_radius: degenerate dispatch") {
  double K = 3.8e14;
  // n = 3: mass is fixed by K alone
  auto mr3 = mass_radius(PolytropeIndex(3.0), K, Given::radius, 1e9);
  CHECK(mr3.R == 1e9);
  CHECK(mr3.M > 0);
  CHECK_THROWS_AS(mass_radius(PolytropeIndex(3.0), K, Given::mass, 1e33),
                  domain_error);
  // the returned mass agrees with the dimensional pipeline at any rho_c
  auto p = make_profile(3.0);
  CHECK(mr3.M ==
        doctest::Approx(dimensionalize(p, K, 1e6).m.back()).epsilon(1e-5));

  // n = 1: radius is fixed by K alone
  auto mr1 = mass_radius(PolytropeIndex(1.0), 1e13, Given::mass, 2e33);
  double beta1 = std::sqrt(2.0 * 1e13 / (4.0 * pi * constants().G));
  CHECK(mr1.R == doctest::Approx(pi * beta1).epsilon(1e-12));
  CHECK_THROWS_AS(mass_radius(PolytropeIndex(1.0), 1e13, Given::radius, 1e9),
                  domain_error);

  // n = 5: infinite radius for any mass
  auto mr5 = mass_radius(PolytropeIndex(5.0), 1e13, Given::mass, 2e33);
  CHECK(std::isinf(mr5.R));
  CHECK_THROWS_AS(mass_radius(PolytropeIndex(5.0), 1e13, Given::radius, 1e9),
                  domain_error);

  CHECK_THROWS_AS(mass_radius(PolytropeIndex(2.0), -1.0, Given::mass, 2e33),
                  domain_error);
  CHECK_THROWS_AS(mass_radius(PolytropeIndex(2.0), K, Given::mass, -2e33),
                  domain_error);
}

TEST_CASE("mass_radius: generic index round-trips") {
  PolytropeIndex idx(2.0);
  double K = 4.2e13;
  auto a = mass_radius(idx, K, Given::mass, 3.0e33);
  CHECK(a.M == 3.0e33);
  auto b = mass_radius(idx, K, Given::radius, a.R);
  CHECK(b.M == doctest::Approx(3.0e33).epsilon(1e-7));

  // n = 0 keeps the unit-central-density convention: M = (4 pi/3) R^3
  auto u = mass_radius(PolytropeIndex(0.0), K, Given::mass, 4.0 * pi / 3.0);
  CHECK(u.R == doctest::Approx(1.0).epsilon(1e-10));
}

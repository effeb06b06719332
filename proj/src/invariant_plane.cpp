#include "polylab/invariant_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polylab/quadrature.hpp"

namespace polylab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// z^2 coefficient of the exact small-z expansion w = (5/3) z + a2 z^2 + ...
double w_series_a2(double n) { return 5.0 * (5.0 - n) / (63.0 * n); }

// pieces per accepted step so a chord stays within ~2e-7 of the dense
// solution relative to w (budget 1e-6 with safety margin); wpp is a secant
// estimate of d2w/dz2 on the step
int chord_pieces(double dz, double wpp, double wmin, double tol = 2e-7) {
  if (!(wmin > 0.0) || wpp == 0.0) return 1;
  double need = dz * std::sqrt(std::fabs(wpp) / (8.0 * tol * wmin));
  if (!(need > 1.0)) return 1;
  return int(std::min(std::ceil(need), 20000.0));
}

}  // namespace

InvariantCurve::InvariantCurve(PolytropeIndex idx, OdeSolution<1> a,
                               OdeSolution<1> b, double split_z)
    : index(idx), a_(std::move(a)), b_(std::move(b)), split_z_(split_z) {
  samples.push_back({3.0, 0.0, 0.0});

  // chart A: subdivide each accepted step in z
  for (std::size_t i = 0; i + 1 < a_.t.size(); ++i) {
    double z0 = a_.t[i], z1 = a_.t[i + 1];
    double dz = z1 - z0;
    double wpp = (a_.f[i + 1][0] - a_.f[i][0]) / dz;
    int m = chord_pieces(dz, wpp, std::min(a_.y[i][0], a_.y[i + 1][0]));
    for (int k = 0; k < m; ++k) {
      double z = z0 + dz * k / m;
      double w = (k == 0) ? a_.y[i][0] : a_.at(z)[0];
      samples.push_back({3.0 - z, z, w});
    }
  }
  samples.push_back({3.0 - a_.t1(), a_.t1(), a_.y.back()[0]});

  // chart B: subdivide in s = log u, with the piece count still set by the
  // z-space chord criterion (dz = u ds); u is kept as exp(s), never 3 - z
  for (std::size_t i = 0; i + 1 < b_.t.size(); ++i) {
    double s0 = b_.t[i], s1 = b_.t[i + 1];
    double u0 = std::exp(s0), u1 = std::exp(s1);
    double dz = u0 - u1;
    double g0 = -b_.f[i][0] / u0, g1 = -b_.f[i + 1][0] / u1;  // dw/dz
    double wpp = (g1 - g0) / dz;
    int m = chord_pieces(dz, wpp, std::min(b_.y[i][0], b_.y[i + 1][0]));
    for (int k = (i == 0 ? 1 : 0); k < m; ++k) {
      double s = s0 + (s1 - s0) * k / m;
      double u = std::exp(s);
      double w = (k == 0) ? b_.y[i][0] : b_.at(s)[0];
      samples.push_back({u, 3.0 - u, w});
    }
  }
  double um = std::exp(b_.t1());
  samples.push_back({um, 3.0 - um, b_.y.back()[0]});
}

InvariantCurve::InvariantCurve(PolytropeIndex idx, double u_min)
    : index(idx), split_z_(0.5) {
  // the two ends of the index range are exact straight lines: w = 0 at
  // n = 0 and w = (5/3) z at n = 5. The second one is an unstable
  // trajectory of the equation (neighbours separate like u^(-1/2) as
  // u -> 0), so it is built here rather than marched numerically.
  const double slope = idx.is_n5() ? 5.0 / 3.0 : 0.0;
  const int m = 3000;
  samples.reserve(m + 1);
  for (int k = 0; k <= m; ++k) {
    double f = double(k) / m;
    double u = 3.0 * (1.0 - f) + u_min * f;  // no 3 - z cancellation
    double z = 3.0 - u;
    samples.push_back({u, z, slope * z});
  }
  div_amplitude = kNan;
  div_correction = kNan;
}

double InvariantCurve::u_min() const { return samples.back().u; }
double InvariantCurve::z_max() const { return samples.back().z; }

double InvariantCurve::w_at_z(double z) const {
  if (!(z >= 0.0 && z <= z_max()))
    throw domain_error("w_at_z: z outside [0, z_max]");
  auto it = std::lower_bound(
      samples.begin(), samples.end(), z,
      [](const Sample& s, double val) { return s.z < val; });
  if (it == samples.begin()) return it->w;
  if (it == samples.end()) return samples.back().w;
  auto i0 = it - 1;
  double f = (z - i0->z) / (it->z - i0->z);
  return i0->w + f * (it->w - i0->w);
}

double rhs_wu(const PolytropeIndex& n, double u, double w) {
  if (w == 0.0) return 0.0;  // the z axis (and all of n = 0) is invariant
  double den = u * (3.0 - u - w);
  if (den == 0.0) throw domain_error("rhs_wu: singular denominator");
  return w * (u - 1.0 + w / n.n) / den;
}

InvariantCurve integrate_wu(const PolytropeIndex& n, double u_min,
                            double eps) {
  if (!(u_min > 0.0 && u_min < 1.0))
    throw domain_error("integrate_wu: need 0 < u_min < 1");
  if (!(eps > 0.0 && eps <= 0.01))
    throw domain_error("integrate_wu: need 0 < eps <= 0.01");
  if (n.n == 0.0 || n.is_n5()) return InvariantCurve(n, u_min);

  const double nn = n.n;
  const double a2 = w_series_a2(nn);

  auto rhs_a = [nn](double z, const std::array<double, 1>& y,
                    std::array<double, 1>& f) {
    double w = y[0];
    f[0] = w * (2.0 - z + w / nn) / ((3.0 - z) * (w - z));
  };
  StepControl ctl_a;
  ctl_a.rtol = 1e-12;
  ctl_a.atol = 1e-16;
  ctl_a.max_step = 0.01;
  ctl_a.first_step = 1e-7;
  double w0 = (5.0 / 3.0) * eps + a2 * eps * eps;
  auto a = integrate_ode<1>(rhs_a, eps, 0.5, {w0}, ctl_a);

  auto rhs_b = [nn](double s, const std::array<double, 1>& y,
                    std::array<double, 1>& f) {
    double u = std::exp(s), w = y[0];
    f[0] = w * (u - 1.0 + w / nn) / (3.0 - u - w);
  };
  StepControl ctl_b;
  ctl_b.rtol = 1e-12;
  ctl_b.atol = 1e-14;
  ctl_b.max_step = 0.02;  // dense output an order under the chord budget
  auto b = integrate_ode<1>(rhs_b, std::log(3.0 - 0.5), std::log(u_min),
                            {a.y.back()[0]}, ctl_b);

  InvariantCurve curve(n, std::move(a), std::move(b), 0.5);

  // two-point fit of the terminal form w = A u^(-1/n) (1 + b u^(1/n))
  double u1 = curve.u_min();
  double u2 = std::min(1e4 * u1, 1.0);
  double p1 = std::pow(u1, 1.0 / nn), p2 = std::pow(u2, 1.0 / nn);
  double y1 = curve.chart_b().at(std::log(u1))[0] * p1;
  double y2 = curve.chart_b().at(std::log(u2))[0] * p2;
  double Ab = (y2 - y1) / (p2 - p1);
  curve.div_amplitude = y1 - Ab * p1;
  curve.div_correction = Ab / curve.div_amplitude;
  return curve;
}

double picard_w(const PolytropeIndex& n, double z) {
  if (!(z >= 0.0 && z <= 3.0)) throw domain_error("picard_w: need 0 <= z <= 3");
  if (n.n == 0.0) return 0.0;
  double J = n.picard_J();
  double L = std::log1p(-z / 3.0);
  if (J == 0.0) return -5.0 * L;
  return -(5.0 / J) * std::expm1(J * L);
}

ReconstructedProfile reconstruct(const PolytropeIndex& n,
                                 const InvariantCurve& curve) {
  const double nn = n.n;
  if (!(nn > 0.0) || n.is_n5())
    throw domain_error("reconstruct: defined for 0 < n < 5");
  if (nn != curve.index.n)
    throw domain_error("reconstruct: index does not match the curve");
  if (!std::isfinite(curve.div_amplitude))
    throw domain_error("reconstruct: curve lacks a terminal-divergence fit");
  if (curve.u_min() > 1e-8)
    throw domain_error(
        "reconstruct: curve truncated before the surface (need u_min <= 1e-8)");

  const auto& S = curve.samples;
  const std::size_t N = S.size();
  const double a2 = w_series_a2(nn);
  const double split = curve.chart_split_z();
  const auto& ca = curve.chart_a();
  const auto& cb = curve.chart_b();

  // d log(rho/rho_c) = -g_rho dz ; log corrections to the mass and radius
  // factors (z/3)^(3/2), (z/3)^(1/2) accumulate h_m, h_r. The 5z - 3w forms
  // remove the cancellation of the leading (5/3) z terms; below z_series the
  // expansions take over entirely.
  const double z_series = 1e-4;
  auto g_rho_a = [&](double z) {
    if (z < z_series) return (5.0 / 6.0) * (1.0 + (1.0 / 3.0 - 0.9 * a2) * z);
    double w = ca.at(z)[0];
    return w / ((w - z) * (3.0 - z));
  };
  auto h_m_a = [&](double z) {
    if (z < z_series) return -2.25 * a2;
    double w = ca.at(z)[0];
    return (5.0 * z - 3.0 * w) / (2.0 * z * (w - z));
  };
  auto h_r_a = [&](double z) {
    if (z < z_series) return 1.0 / 6.0 - 0.75 * a2;
    double w = ca.at(z)[0];
    return (5.0 * z - 3.0 * w) / (2.0 * z * (3.0 - z) * (w - z)) +
           0.5 / (3.0 - z);
  };
  // chart B works in s = log u with dz = u ds already folded in
  auto g_rho_b = [&](double s) {
    double u = std::exp(s), w = cb.at(s)[0];
    return w / (w - 3.0 + u);
  };
  auto h_m_b = [&](double s) {
    double u = std::exp(s), w = cb.at(s)[0];
    return u / (w - 3.0 + u) - 1.5 * u / (3.0 - u);
  };
  auto h_r_b = [&](double s) {
    double u = std::exp(s), w = cb.at(s)[0];
    return 1.0 / (w - 3.0 + u) - 0.5 * u / (3.0 - u);
  };

  std::vector<double> dI(N - 1), dSm(N - 1), dSr(N - 1);
  const double eps = S[1].z;
  dI[0] = (5.0 / 6.0) * eps * (1.0 + (1.0 / 3.0 - 0.9 * a2) * eps / 2.0);
  dSm[0] = -2.25 * a2 * eps;
  dSr[0] = (1.0 / 6.0 - 0.75 * a2) * eps;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    if (S[i + 1].z <= split) {
      dI[i] = gk15(g_rho_a, S[i].z, S[i + 1].z).value;
      dSm[i] = gk15(h_m_a, S[i].z, S[i + 1].z).value;
      dSr[i] = gk15(h_r_a, S[i].z, S[i + 1].z).value;
    } else {
      double s_hi = std::log(S[i].u), s_lo = std::log(S[i + 1].u);
      dI[i] = gk15(g_rho_b, s_lo, s_hi).value;
      dSm[i] = gk15(h_m_b, s_lo, s_hi).value;
      dSr[i] = gk15(h_r_b, s_lo, s_hi).value;
    }
  }

  std::vector<double> I(N), Sm(N), Sr(N);
  I[0] = 0.0;
  for (std::size_t i = 0; i + 1 < N; ++i) I[i + 1] = I[i] + dI[i];
  Sm[N - 1] = Sr[N - 1] = 0.0;
  for (std::size_t i = N - 1; i-- > 0;) {
    Sm[i] = Sm[i + 1] + dSm[i];
    Sr[i] = Sr[i + 1] + dSr[i];
  }

  // tail beyond u_min from the terminal divergence fit
  const double A = curve.div_amplitude, b = curve.div_correction;
  const double um = S.back().u;
  const double p = std::pow(um, 1.0 / nn);
  const double Tm =
      0.5 * um + um * um / 12.0 - nn * um * p / ((nn + 1.0) * A);
  const double Tr = -nn * p / A + (nn * (b - 3.0 / A) / (2.0 * A)) * p * p +
                    um / 6.0 + um * um / 36.0;

  ReconstructedProfile out;
  out.z.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    double z = S[i].z;
    out.z.push_back(z);
    out.w.push_back(S[i].w);
    out.rho_frac.push_back(std::exp(-I[i]));
    out.theta.push_back(std::exp(-I[i] / nn));
    out.m_frac.push_back(std::pow(z / 3.0, 1.5) * std::exp(Tm - Sm[i]));
    out.r_frac.push_back(std::sqrt(z / 3.0) * std::exp(Tr - Sr[i]));
  }
  return out;
}

}  // namespace polylab

#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "polylab/errors.hpp"

namespace polylab {

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-14;
  double max_step = 0.05;
  double first_step = 1e-6;
  long max_steps = 4'000'000;
};

// Accepted nodes (t_i, y_i, f_i) of an adaptive integration plus cubic Hermite
// evaluation between them. f_i = rhs(t_i, y_i) is stored exactly, so node
// derivatives carry no interpolation error.
template <int N>
struct OdeSolution {
  std::vector<double> t;
  std::vector<std::array<double, N>> y;
  std::vector<std::array<double, N>> f;

  bool forward() const { return t.back() >= t.front(); }
  double t0() const { return t.front(); }
  double t1() const { return t.back(); }
  std::size_t steps() const { return t.size() - 1; }

  std::size_t segment(double x) const {
    // index i with x between t[i], t[i+1]
    if (forward()) {
      auto it = std::upper_bound(t.begin(), t.end(), x);
      std::size_t i = (it == t.begin()) ? 0 : std::size_t(it - t.begin()) - 1;
      return std::min(i, t.size() - 2);
    }
    auto it = std::upper_bound(t.begin(), t.end(), x, std::greater<double>());
    std::size_t i = (it == t.begin()) ? 0 : std::size_t(it - t.begin()) - 1;
    return std::min(i, t.size() - 2);
  }

  std::array<double, N> at(double x) const {
    std::size_t i = segment(x);
    double h = t[i + 1] - t[i];
    double s = (x - t[i]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    std::array<double, N> out{};
    for (int k = 0; k < N; ++k)
      out[k] = h00 * y[i][k] + h10 * h * f[i][k] + h01 * y[i + 1][k] +
               h11 * h * f[i + 1][k];
    return out;
  }

  std::array<double, N> deriv_at(double x) const {
    std::size_t i = segment(x);
    double h = t[i + 1] - t[i];
    double s = (x - t[i]) / h;
    double d00 = 6 * s * (s - 1) / h;
    double d10 = (1 - s) * (1 - 3 * s);
    double d01 = -d00;
    double d11 = s * (3 * s - 2);
    std::array<double, N> out{};
    for (int k = 0; k < N; ++k)
      out[k] = d00 * y[i][k] + d10 * f[i][k] + d01 * y[i + 1][k] +
               d11 * f[i + 1][k];
    return out;
  }
};

// Dormand-Prince 5(4). rhs(t, y, dydt); stop(t, y) checked after each accepted
// step -- integration halts with that step included. Integrates toward t1 in
// either direction.
template <int N, class RHS, class Stop>
OdeSolution<N> integrate_ode(RHS&& rhs, double t0, double t1,
                             std::array<double, N> y0, const StepControl& ctl,
                             Stop&& stop) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat (error weights)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  OdeSolution<N> out;
  std::array<double, N> y = y0, fy{};
  double t = t0;
  rhs(t, y, fy);
  out.t.push_back(t);
  out.y.push_back(y);
  out.f.push_back(fy);

  double h = dir * std::min(ctl.first_step, ctl.max_step);
  std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, y5;

  for (long it = 0; it < ctl.max_steps; ++it) {
    if (dir * (t - t1) >= 0) return out;
    if (dir * (t + h - t1) > 0) h = t1 - t;

    k1 = fy;
    for (int i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (int i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (int i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (int i = 0; i < N; ++i)
      ytmp[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (int i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (int i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    rhs(t + h, y5, k7);

    double err = 0;
    for (int i = 0; i < N; ++i) {
      double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                       e6 * k6[i] + e7 * k7[i]);
      double sc =
          ctl.atol + ctl.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) err = 1e12;  // reject and back off hard

    if (err <= 1.0) {
      t += h;
      y = y5;
      fy = k7;
      out.t.push_back(t);
      out.y.push_back(y);
      out.f.push_back(fy);
      if (stop(t, y)) return out;
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    if (std::fabs(h) > ctl.max_step) h = dir * ctl.max_step;
    if (!(std::fabs(h) > 0) || t + h == t)
      throw numeric_error("integrate_ode: step size underflow");
  }
  throw numeric_error("integrate_ode: step budget exhausted");
}

template <int N, class RHS>
OdeSolution<N> integrate_ode(RHS&& rhs, double t0, double t1,
                             std::array<double, N> y0, const StepControl& ctl) {
  return integrate_ode<N>(std::forward<RHS>(rhs), t0, t1, y0, ctl,
                          [](double, const std::array<double, N>&) {
                            return false;
                          });
}

// Finite-difference weights on arbitrary nodes (Fornberg). Returns w such that
// sum_i w[i] f(x[i]) approximates the m-th derivative at x0.
inline std::vector<double> fd_weights(const std::vector<double>& x, double x0,
                                      int m) {
  const int n = int(x.size()) - 1;
  std::vector<std::vector<std::vector<double>>> d(
      std::size_t(m + 1),
      std::vector<std::vector<double>>(x.size(),
                                       std::vector<double>(x.size(), 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      for (int k = std::min(i, m); k >= 0; --k) {
        double prev = (k > 0) ? d[k - 1][i - 1][j] : 0.0;
        d[k][i][j] = ((x[i] - x0) * d[k][i - 1][j] - k * prev) / c3;
      }
    }
    for (int k = std::min(i, m); k >= 0; --k) {
      double prev = (k > 0) ? d[k - 1][i - 1][i - 1] : 0.0;
      d[k][i][i] = c1 / c2 * (k * prev - (x[i - 1] - x0) * d[k][i - 1][i - 1]);
    }
    c1 = c2;
  }
  std::vector<double> w(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) w[j] = d[m][n][j];
  return w;
}

}  // namespace polylab

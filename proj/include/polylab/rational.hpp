#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "polylab/errors.hpp"

namespace polylab {

// Exact rational arithmetic on 128-bit integers. Enough headroom for the
// series coefficients used in tests (denominators up to ~1e10 and their
// products); overflow throws rather than wrapping.
struct Rational {
  using i128 = __int128;
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

  static i128 gcd(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den == 0) throw domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
      throw numeric_error("Rational: overflow");
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    i128 g = gcd(a.den, b.den);
    i128 bd = b.den / g;
    i128 n = checked_mul(a.num, bd) + checked_mul(b.num, a.den / g);
    return Rational(n, checked_mul(a.den, bd));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
  }
  friend Rational operator-(const Rational& a) {
    return Rational(-a.num, a.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    i128 g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
    return Rational(checked_mul(a.num / g1, b.num / g2),
                    checked_mul(a.den / g2, b.den / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw domain_error("Rational: division by zero");
    return a * Rational(b.den, b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  double value() const { return double(num) / double(den); }

  std::string str() const {
    auto dec = [](i128 v) {
      bool neg = v < 0;
      if (neg) v = -v;
      std::string s;
      do {
        s.insert(s.begin(), char('0' + int(v % 10)));
        v /= 10;
      } while (v);
      return neg ? "-" + s : s;
    };
    return den == 1 ? dec(num) : dec(num) + "/" + dec(den);
  }
};

// Generalized binomial coefficient C(r, k) for rational r.
inline Rational binomial(const Rational& r, int k) {
  Rational c(1);
  for (int j = 0; j < k; ++j)
    c = c * (r - Rational(j)) / Rational(j + 1);
  return c;
}

// a(x)^r for a power series with a[0] = 1, via the Miller recurrence
//   k p_k = sum_{j=1..k} ((r+1) j - k) a_j p_{k-j}.
inline std::vector<Rational> series_pow(const std::vector<Rational>& a,
                                        const Rational& r) {
  if (!(a[0] == Rational(1)))
    throw domain_error("series_pow: leading coefficient must be 1");
  std::vector<Rational> p(a.size());
  p[0] = Rational(1);
  for (std::size_t k = 1; k < a.size(); ++k) {
    Rational s(0);
    for (std::size_t j = 1; j <= k; ++j)
      s = s + ((r + Rational(1)) * Rational((long long)j) -
               Rational((long long)k)) *
                  a[j] * p[k - j];
    p[k] = s / Rational((long long)k);
  }
  return p;
}

// Exact coefficients c_k of the pressure-function series
//   theta(xi) = sum_k c_k xi^(2k)
// for rational index n, from 2k(2k+1) c_k = -[theta^n]_{k-1}.
inline std::vector<Rational> emden_series(const Rational& n, int kmax) {
  std::vector<Rational> c(std::size_t(kmax) + 1);
  c[0] = Rational(1);
  for (int k = 1; k <= kmax; ++k) {
    std::vector<Rational> head(c.begin(), c.begin() + k);
    std::vector<Rational> tn = series_pow(head, n);
    c[std::size_t(k)] =
        -tn[std::size_t(k - 1)] / Rational(2LL * k * (2LL * k + 1));
  }
  return c;
}

}  // namespace polylab

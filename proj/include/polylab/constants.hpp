#pragma once
#include <numbers>

namespace polylab {

// CGS throughout. CODATA 2018 (h, c, k_B exact by SI definition; G, m_u CODATA
// recommended); M_sun is the common round value, L_sun the IAU nominal one.
struct PhysicalConstants {
  double G;      // cm^3 g^-1 s^-2
  double c;      // cm/s
  double h;      // erg s
  double k_B;    // erg/K
  double m_H;    // g (atomic mass unit)
  double a_rad;  // erg cm^-3 K^-4
  double R_gas;  // erg g^-1 K^-1 per unit mean molecular weight (k_B/m_H)
  double M_sun;  // g
  double L_sun;  // erg/s
};

constexpr PhysicalConstants constants() {
  constexpr double h = 6.62607015e-27;
  constexpr double c = 2.99792458e10;
  constexpr double k_B = 1.380649e-16;
  constexpr double m_H = 1.66053906660e-24;
  constexpr double pi = std::numbers::pi;
  constexpr double a_rad =
      8.0 * pi * pi * pi * pi * pi * (k_B * k_B * k_B * k_B) /
      (15.0 * (h * h * h) * (c * c * c));
  return PhysicalConstants{
      6.67430e-8, c, h, k_B, m_H, a_rad, k_B / m_H, 1.989e33, 3.828e33,
  };
}

}  // namespace polylab

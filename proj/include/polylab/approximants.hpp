#pragma once
#include <optional>

#include "polylab/emden.hpp"

namespace polylab {

enum class ApproxKind { taylor, picard, pade3, poly10_3 };

// A closed-form stand-in for theta_n(xi), valid on [0, xi_max_valid].
struct Approximant {
  ApproxKind kind;
  PolytropeIndex n;
  int order;            // truncation order for taylor/poly10, else 0
  double xi_max_valid;  // positivity/usability bound (inf if none)
  double operator()(double xi) const;
};

// (1 + xi^2/6N)^(-N), N = 5/(3n-5). Exact for n = 0 and n = 5.
double picard_theta(const PolytropeIndex& n, double xi);

// Truncated series 1 - xi^2/6 + n xi^4/120 - ...; order in {2,4,6} for
// general n, {2,...,10} for n = 3 where the xi^8 and xi^10 coefficients
// are 619/1088640 and -2743/39916800. The xi^10 value is the benchmark
// polynomial's quoted top coefficient, kept verbatim so the reference
// curve is reproduced; the exact series recurrence gives -17117/199584000
// there (the tests pin both numbers and their difference).
double taylor_theta(const PolytropeIndex& n, double xi, int order);

// Rational approximation to theta_3:
// (1 - xi^2/108 - 11 xi^4/45360) / (1 + 17 xi^2/108 + xi^4/1008).
double pade_theta3(double xi);

Approximant make_taylor(const PolytropeIndex& n, int order);
Approximant make_picard(const PolytropeIndex& n);
Approximant make_pade3();
Approximant make_poly10();

struct ErrorReport {
  double max_rel_err, xi_at_max_rel;
  double max_abs_err, xi_at_max_abs;
  std::optional<double> zero_approx, zero_exact;  // first zeros in range
};
ErrorReport compare(const Approximant& approx, const EmdenProfile& exact,
                    double xi_lo, double xi_hi);

}  // namespace polylab

// Independent reference values for the test suite. Nothing here calls into
// the library under test.
#ifndef ETCONS_TESTS_ORACLE_HPP
#define ETCONS_TESTS_ORACLE_HPP

#include <cmath>
#include <functional>

namespace oracle {

// Derivatives of the four reference costs, written out from the cost
// definitions rather than copied from the library.
inline double df1(double s) { return s - 2.0; }

inline double df2(double s) {
  // d/ds [s^2 ln(1+s^2)] = 2 s ln(1+s^2) + s^2 * 2s/(1+s^2)
  return 2.0 * s * std::log(1.0 + s * s) + (2.0 * s * s * s) / (1.0 + s * s) + 2.0 * (s + 1.0);
}

inline double df3(double s) {
  const double a = std::exp(-0.1 * s);
  const double b = std::exp(0.3 * s);
  return (-0.1 * a + 0.3 * b) / (a + b) + 2.0 * s;
}

inline double df4(double s) {
  // g(s) = s^2 (s^2+1)^{-1/2} / 25
  const double r = std::sqrt(s * s + 1.0);
  const double dg = (2.0 * s / r - s * s * s / (r * r * r)) / 25.0;
  return dg + 2.0 * (s - 3.0);
}

inline double global_gradient(double s) { return df1(s) + df2(s) + df3(s) + df4(s); }

inline double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  double glo = g(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimiser of f1 + f2 + f3 + f4.
inline double reference_optimum() { return bisect(global_gradient, -10.0, 10.0, 1e-12); }

// Frozen value of the same optimum from an offline high-precision run.
inline constexpr double kFrozenOptimum = 0.6920630678382464;

// Central finite difference.
inline double derivative(const std::function<double(double)>& f, double s, double h = 1e-5) {
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

}  // namespace oracle

#endif  // ETCONS_TESTS_ORACLE_HPP

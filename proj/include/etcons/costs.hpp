#ifndef ETCONS_COSTS_HPP
#define ETCONS_COSTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etcons/error.hpp"

namespace etcons {

struct Interval {
  double lo = -50.0;
  double hi = 50.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr Interval kDefaultWorkingInterval{-50.0, 50.0};
inline constexpr std::size_t kDefaultCurvatureGrid = 2001;

using ScalarFn = std::function<double(double)>;
using CostParams = std::map<std::string, double>;

/// Scalar local cost with analytic first and second derivatives.
///
/// `h_lo`/`h_hi` are curvature bounds valid on the working interval the cost
/// was built for; they are exact for quadratics and grid estimates otherwise.
struct CostFunction {
  std::string label;
  CostParams params;
  ScalarFn value;
  ScalarFn gradient;
  ScalarFn hessian;
  double h_lo = 0.0;
  double h_hi = 0.0;
};

struct CurvatureBounds {
  double h_lo = 0.0;
  double h_hi = 0.0;
  bool strongly_convex = false;  // h_lo > 0 on the sampled grid
};

inline CurvatureBounds estimate_curvature_bounds(const ScalarFn& hessian, Interval interval,
                                                 std::size_t grid = kDefaultCurvatureGrid) {
  if (!(interval.lo < interval.hi)) throw std::invalid_argument("estimate_curvature_bounds: empty interval");
  if (grid < 2) throw std::invalid_argument("estimate_curvature_bounds: grid must have at least 2 points");
  CurvatureBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), false};
  const double width = interval.hi - interval.lo;
  for (std::size_t k = 0; k < grid; ++k) {
    const double s = interval.lo + width * static_cast<double>(k) / static_cast<double>(grid - 1);
    const double h = hessian(s);
    if (!std::isfinite(h)) throw NumericError("estimate_curvature_bounds: non-finite Hessian at s=" + std::to_string(s));
    b.h_lo = std::min(b.h_lo, h);
    b.h_hi = std::max(b.h_hi, h);
  }
  b.strongly_convex = b.h_lo > 0.0;
  return b;
}

inline CurvatureBounds estimate_curvature_bounds(const CostFunction& c, Interval interval,
                                                 std::size_t grid = kDefaultCurvatureGrid) {
  return estimate_curvature_bounds(c.hessian, interval, grid);
}

namespace detail {

inline double param(const CostParams& p, const std::string& cost, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) throw ConfigError("cost '" + cost + "': missing parameter '" + key + "'");
  return it->second;
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace detail

/// Names understood by builtin_cost.
inline const std::vector<std::string>& builtin_cost_names() {
  static const std::vector<std::string> names{"quadratic", "example_f1", "example_f2", "example_f3", "example_f4"};
  return names;
}

/// Builds a named cost. `quadratic` is a/2 (s-b)^2; `example_f1`..`example_f4` are
/// the four costs of the reference four-agent network:
///   f1(s) = (s-2)^2 / 2
///   f2(s) = s^2 ln(1+s^2) + (s+1)^2
///   f3(s) = ln(exp(-0.1 s) + exp(0.3 s)) + s^2
///   f4(s) = s^2 / (25 sqrt(s^2+1)) + (s-3)^2
inline CostFunction builtin_cost(const std::string& name, const CostParams& params = {},
                                 Interval working = kDefaultWorkingInterval) {
  CostFunction c;
  c.label = name;
  c.params = params;
  bool exact_bounds = false;

  if (name == "quadratic") {
    const double a = detail::param(params, name, "a");
    const double b = detail::param(params, name, "b");
    if (!(a > 0.0)) throw ConfigError("cost 'quadratic': curvature a must be positive");
    c.value = [a, b](double s) { return 0.5 * a * (s - b) * (s - b); };
    c.gradient = [a, b](double s) { return a * (s - b); };
    c.hessian = [a](double) { return a; };
    c.h_lo = c.h_hi = a;
    exact_bounds = true;
  } else if (name == "example_f1") {
    c.value = [](double s) { return 0.5 * (s - 2.0) * (s - 2.0); };
    c.gradient = [](double s) { return s - 2.0; };
    c.hessian = [](double) { return 1.0; };
    c.h_lo = c.h_hi = 1.0;
    exact_bounds = true;
  } else if (name == "example_f2") {
    c.value = [](double s) { return s * s * std::log1p(s * s) + (s + 1.0) * (s + 1.0); };
    c.gradient = [](double s) {
      const double q = 1.0 + s * s;
      return 2.0 * s * std::log1p(s * s) + 2.0 * s * s * s / q + 2.0 * (s + 1.0);
    };
    c.hessian = [](double s) {
      const double s2 = s * s;
      const double q = 1.0 + s2;
      return 2.0 * std::log1p(s2) + 4.0 * s2 / q + (6.0 * s2 + 2.0 * s2 * s2) / (q * q) + 2.0;
    };
  } else if (name == "example_f3") {
    c.value = [](double s) {
      const double a = -0.1 * s;
      const double b = 0.3 * s;
      const double m = std::max(a, b);
      return m + std::log(std::exp(a - m) + std::exp(b - m)) + s * s;
    };
    // d/ds ln(e^{-0.1s} + e^{0.3s}) = -0.1 + 0.4 * sigmoid(0.4 s)
    c.gradient = [](double s) { return -0.1 + 0.4 * detail::sigmoid(0.4 * s) + 2.0 * s; };
    c.hessian = [](double s) {
      const double p = detail::sigmoid(0.4 * s);
      return 0.16 * p * (1.0 - p) + 2.0;
    };
  } else if (name == "example_f4") {
    c.value = [](double s) { return s * s / (25.0 * std::sqrt(s * s + 1.0)) + (s - 3.0) * (s - 3.0); };
    c.gradient = [](double s) {
      const double q = s * s + 1.0;
      return (s * s * s + 2.0 * s) / (25.0 * q * std::sqrt(q)) + 2.0 * (s - 3.0);
    };
    c.hessian = [](double s) {
      const double q = s * s + 1.0;
      return (2.0 - s * s) / (25.0 * q * q * std::sqrt(q)) + 2.0;
    };
  } else {
    throw ConfigError("unknown cost function '" + name + "'");
  }

  if (!exact_bounds) {
    const auto b = estimate_curvature_bounds(c.hessian, working);
    c.h_lo = b.h_lo;
    c.h_hi = b.h_hi;
  }
  return c;
}

/// The local costs of all agents plus the aggregate curvature bounds.
class CostEnsemble {
 public:
  CostEnsemble() = default;

  explicit CostEnsemble(std::vector<CostFunction> costs, Interval working = kDefaultWorkingInterval)
      : costs_(std::move(costs)), working_(working) {
    if (costs_.empty()) throw ConfigError("costs: at least one cost function is required");
    h_lo_min_ = std::numeric_limits<double>::infinity();
    h_hi_max_ = -std::numeric_limits<double>::infinity();
    for (const auto& c : costs_) {
      h_lo_min_ = std::min(h_lo_min_, c.h_lo);
      h_hi_max_ = std::max(h_hi_max_, c.h_hi);
    }
  }

  std::size_t size() const { return costs_.size(); }
  const CostFunction& operator[](std::size_t i) const { return costs_[i]; }
  const std::vector<CostFunction>& costs() const { return costs_; }
  Interval working_interval() const { return working_; }
  double h_lo_min() const { return h_lo_min_; }
  double h_hi_max() const { return h_hi_max_; }

 private:
  std::vector<CostFunction> costs_;
  Interval working_ = kDefaultWorkingInterval;
  double h_lo_min_ = 0.0;
  double h_hi_max_ = 0.0;
};

inline double global_value(const CostEnsemble& e, double s) {
  double sum = 0.0;
  for (const auto& c : e.costs()) sum += c.value(s);
  return sum;
}

inline double global_gradient(const CostEnsemble& e, double s) {
  double sum = 0.0;
  for (const auto& c : e.costs()) sum += c.gradient(s);
  return sum;
}

inline double global_hessian(const CostEnsemble& e, double s) {
  double sum = 0.0;
  for (const auto& c : e.costs()) sum += c.hessian(s);
  return sum;
}

inline constexpr double kBracketLimit = 1e6;

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Expands [-w, w] by doubling from w = 1 until the global gradient changes
/// sign.
inline Bracket bracket_optimum(const CostEnsemble& e) {
  for (double w = 1.0; w <= kBracketLimit; w *= 2.0) {
    const double glo = global_gradient(e, -w);
    const double ghi = global_gradient(e, w);
    if (!std::isfinite(glo) || !std::isfinite(ghi)) break;
    if (glo <= 0.0 && ghi >= 0.0) return {-w, w};
  }
  throw NumericError("solve_optimum: global gradient does not change sign within +/-1e6");
}

/// Plain bisection on f'. Slow but needs no curvature information.
inline double bisect_optimum(const CostEnsemble& e, double tol, Bracket br) {
  double lo = br.lo;
  double hi = br.hi;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = global_gradient(e, mid);
    if (std::abs(g) < tol || mid == lo || mid == hi) return mid;
    (g > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double bisect_optimum(const CostEnsemble& e, double tol) { return bisect_optimum(e, tol, bracket_optimum(e)); }

/// Minimiser of f = sum_i f_i: Newton on f' kept inside a shrinking sign
/// bracket, falling back to bisection whenever the Newton iterate leaves it.
inline double solve_optimum(const CostEnsemble& e, double tol, Bracket br) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_optimum: tolerance must be positive");
  double lo = br.lo;
  double hi = br.hi;
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double g = global_gradient(e, s);
    if (std::abs(g) < tol) return s;
    (g > 0.0 ? hi : lo) = s;
    const double h = global_hessian(e, s);
    double next = (h > 0.0 && std::isfinite(h)) ? s - g / h : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s) return s;
    s = next;
  }
  throw NumericError("solve_optimum: no convergence to |f'| < " + std::to_string(tol));
}

inline double solve_optimum(const CostEnsemble& e, double tol) { return solve_optimum(e, tol, bracket_optimum(e)); }

}  // namespace etcons

#endif  // ETCONS_COSTS_HPP

#ifndef ETCONS_ANALYSIS_HPP
#define ETCONS_ANALYSIS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "etcons/engine.hpp"
#include "etcons/error.hpp"
#include "etcons/generator.hpp"
#include "etcons/graph.hpp"
#include "etcons/trigger.hpp"

namespace etcons {

/// Smallest gap between successive events of one (agent, kind), counting only
/// events at or after `after`. Empty when fewer than two such events exist.
inline std::optional<double> min_inter_event(const EventLog& log, std::size_t agent, EventKind kind,
                                             double after = -std::numeric_limits<double>::infinity()) {
  std::optional<double> prev;
  std::optional<double> best;
  for (const auto& e : log) {
    if (e.agent != agent || e.kind != kind || e.time < after) continue;
    if (prev) {
      const double gap = e.time - *prev;
      if (!best || gap < *best) best = gap;
    }
    prev = e.time;
  }
  return best;
}

inline std::size_t event_count(const EventLog& log, std::size_t agent, EventKind kind) {
  return static_cast<std::size_t>(
      std::count_if(log.begin(), log.end(), [&](const Event& e) { return e.agent == agent && e.kind == kind; }));
}

/// Event counts in windows [s, s + width) for s = 0, stride, 2 stride, ...
/// as long as the window ends by `t_end`.
inline std::vector<std::size_t> windowed_event_counts(const EventLog& log, std::size_t agent, EventKind kind,
                                                      double t_end, double width, double stride) {
  if (!(width > 0.0) || !(stride > 0.0)) throw std::invalid_argument("windowed_event_counts: width and stride must be positive");
  const auto times = event_times(log, agent, kind);
  std::vector<std::size_t> counts;
  for (std::size_t k = 0;; ++k) {
    const double start = static_cast<double>(k) * stride;
    if (start + width > t_end + 1e-9) break;
    counts.push_back(static_cast<std::size_t>(
        std::count_if(times.begin(), times.end(), [&](double t) { return t >= start && t < start + width; })));
  }
  return counts;
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(xs.begin(), xs.end());
  const auto m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

/// Event-rate growth check: the last window must not exceed `factor` times
/// the median window.
struct RateGrowth {
  double last = 0.0;
  double median = 0.0;
  bool non_accelerating = false;
};

inline RateGrowth rate_growth(const std::vector<std::size_t>& counts, double factor = 2.0) {
  RateGrowth r;
  if (counts.empty()) {
    r.non_accelerating = true;
    return r;
  }
  std::vector<double> xs(counts.begin(), counts.end());
  r.last = xs.back();
  r.median = median(xs);
  r.non_accelerating = r.last <= factor * r.median;
  return r;
}

/// max_i |s_i(t_k) - y*| for every sample row k.
inline std::vector<double> max_abs_error(const Eigen::MatrixXd& series, double y_star) {
  std::vector<double> out(static_cast<std::size_t>(series.rows()));
  for (Eigen::Index k = 0; k < series.rows(); ++k)
    out[static_cast<std::size_t>(k)] = (series.row(k).array() - y_star).abs().maxCoeff();
  return out;
}

/// max over agents and over t in [t_final - window, t_final] of |y_i - y*|.
inline double tail_radius(const Trace& tr, double y_star, double window) {
  if (tr.samples() == 0) throw std::invalid_argument("tail_radius: empty trace");
  const double t_end = tr.times.back();
  double r = 0.0;
  for (std::size_t k = 0; k < tr.samples(); ++k) {
    if (tr.times[k] < t_end - window - 1e-12) continue;
    r = std::max(r, (tr.y.row(static_cast<Eigen::Index>(k)).array() - y_star).abs().maxCoeff());
  }
  return r;
}

struct ExponentialFit {
  double rate = 0.0;       // slope of log(error) against t
  double intercept = 0.0;  // log(error) at t = 0
  double r_squared = 0.0;
  std::size_t samples = 0;
};

/// Least-squares line through (t, log e) on [t_lo, t_hi]; nonpositive or
/// non-finite errors are skipped.
inline ExponentialFit fit_exponential_rate(const std::vector<double>& times, const std::vector<double>& errors,
                                           double t_lo, double t_hi) {
  if (times.size() != errors.size()) throw std::invalid_argument("fit_exponential_rate: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double e = errors[k];
    if (t < t_lo || t > t_hi || !(e > 0.0) || !std::isfinite(e)) continue;
    const double ly = std::log(e);
    sx += t;
    sy += ly;
    sxx += t * t;
    sxy += t * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 3) throw NumericError("fit_exponential_rate: fewer than 3 usable samples");
  const double dn = static_cast<double>(n);
  const double cov = sxy - sx * sy / dn;
  const double var_t = sxx - sx * sx / dn;
  const double var_y = syy - sy * sy / dn;
  ExponentialFit f;
  f.samples = n;
  f.rate = cov / var_t;
  f.intercept = (sy - f.rate * sx) / dn;
  // A perfectly flat log-error is fitted exactly.
  f.r_squared = var_y <= 0.0 ? 1.0 : (cov * cov) / (var_t * var_y);
  return f;
}

inline ExponentialFit fit_exponential_rate(const Trace& tr, double y_star, double t_lo, double t_hi) {
  return fit_exponential_rate(tr.times, max_abs_error(tr.y, y_star), t_lo, t_hi);
}

/// Generator error coordinates about (z*, v*) and the quadratic Lyapunov
/// function W0 = |z_hat|^2 / 2 + |v_hat2|^2 / alpha^3.
struct DiagnosticFrame {
  double z_hat1 = 0.0;
  Eigen::VectorXd z_hat2;
  Eigen::VectorXd v_hat2;
  double W0 = 0.0;
};

inline DiagnosticFrame lyapunov_W0(const Eigen::VectorXd& z, const Eigen::VectorXd& v, double alpha,
                                   const ComplementBasis& basis, const GeneratorEquilibrium& eq) {
  const Eigen::VectorXd dz = z - eq.z_star;
  const Eigen::VectorXd dw = (v + alpha * z) - (eq.v_star + alpha * eq.z_star);
  DiagnosticFrame f;
  f.z_hat1 = basis.m1.dot(dz);
  f.z_hat2 = basis.m2.transpose() * dz;
  f.v_hat2 = basis.m2.transpose() * dw;
  f.W0 = 0.5 * (f.z_hat1 * f.z_hat1 + f.z_hat2.squaredNorm()) + f.v_hat2.squaredNorm() / (alpha * alpha * alpha);
  return f;
}

inline std::vector<double> lyapunov_W0_series(const Trace& tr, double alpha, const ComplementBasis& basis,
                                              const GeneratorEquilibrium& eq) {
  std::vector<double> out;
  out.reserve(tr.samples());
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(tr.samples()); ++k)
    out.push_back(lyapunov_W0(tr.z.row(k).transpose(), tr.v.row(k).transpose(), alpha, basis, eq).W0);
  return out;
}

struct AgentEventStats {
  std::size_t control_events = 0;
  std::size_t comm_events = 0;
  std::optional<double> min_control_interval;
  std::optional<double> min_comm_interval;
};

struct RunSummary {
  double y_star = 0.0;
  double tail_window = 0.0;
  double tail_radius = 0.0;
  double final_error = 0.0;
  double initial_error = 0.0;
  double sum_v_drift = 0.0;
  std::vector<AgentEventStats> agents;
};

inline RunSummary summarize(const Trace& tr, double y_star, double tail_window) {
  RunSummary s;
  s.y_star = y_star;
  s.tail_window = tail_window;
  s.tail_radius = tail_radius(tr, y_star, tail_window);
  const auto err = max_abs_error(tr.y, y_star);
  s.initial_error = err.front();
  s.final_error = err.back();
  const double v0 = tr.v.row(0).sum();
  for (Eigen::Index k = 0; k < tr.v.rows(); ++k) s.sum_v_drift = std::max(s.sum_v_drift, std::abs(tr.v.row(k).sum() - v0));
  for (std::size_t i = 0; i < tr.agents(); ++i) {
    AgentEventStats a;
    a.control_events = event_count(tr.events, i, EventKind::control);
    a.comm_events = event_count(tr.events, i, EventKind::comm);
    a.min_control_interval = min_inter_event(tr.events, i, EventKind::control);
    a.min_comm_interval = min_inter_event(tr.events, i, EventKind::comm);
    s.agents.push_back(a);
  }
  return s;
}

}  // namespace etcons

#endif  // ETCONS_ANALYSIS_HPP

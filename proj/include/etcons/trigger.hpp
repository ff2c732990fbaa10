#ifndef ETCONS_TRIGGER_HPP
#define ETCONS_TRIGGER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etcons/error.hpp"
#include "etcons/generator.hpp"

namespace etcons {

enum class EventKind { control, comm };

inline std::string_view to_string(EventKind k) { return k == EventKind::control ? "control" : "comm"; }

inline EventKind event_kind_from_string(std::string_view s) {
  if (s == "control") return EventKind::control;
  if (s == "comm") return EventKind::comm;
  throw ConfigError("unknown event kind '" + std::string(s) + "'");
}

/// Time-decaying threshold c0 + c1 exp(-gamma t).
struct TriggerRule {
  double c0 = 0.0;
  double c1 = 1.0;
  double gamma = 0.1;
  EventKind kind = EventKind::control;

  void validate() const {
    const std::string who = "trigger." + std::string(to_string(kind));
    if (!(c0 >= 0.0) || !(c1 >= 0.0)) throw ConfigError(who + ": c0 and c1 must be nonnegative");
    if (!(c0 + c1 > 0.0)) throw ConfigError(who + ": c0 + c1 must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError(who + ": gamma must be positive");
  }

  friend bool operator==(const TriggerRule&, const TriggerRule&) = default;
};

inline double threshold(const TriggerRule& rule, double t) { return rule.c0 + rule.c1 * std::exp(-rule.gamma * t); }

/// |u - u~| reached the control threshold.
inline bool control_event(double u_bar, const TriggerRule& rule, double t) {
  return std::abs(u_bar) >= threshold(rule, t);
}

/// ||(z - z_held, v - v_held)|| reached the broadcast threshold.
inline bool comm_event(double z_bar, double v_bar, const TriggerRule& rule, double t) {
  return std::hypot(z_bar, v_bar) >= threshold(rule, t);
}

struct Event {
  std::size_t agent = 0;  // 0-based
  EventKind kind = EventKind::control;
  double time = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

using EventLog = std::vector<Event>;

inline std::vector<double> event_times(const EventLog& log, std::size_t agent, EventKind kind) {
  std::vector<double> out;
  for (const auto& e : log)
    if (e.agent == agent && e.kind == kind) out.push_back(e.time);
  return out;
}

struct ParameterCondition {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ConditionReport {
  std::vector<ParameterCondition> conditions;

  bool all_hold() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.holds; });
  }

  const ParameterCondition* find(std::string_view name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }

  bool holds(std::string_view name) const {
    const auto* c = find(name);
    return c != nullptr && c->holds;
  }
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace detail

/// Checks the sufficient parameter conditions for the combined
/// event-triggered controller. Violations are reported, never thrown.
/// `bounds` is the recommended (alpha, beta) lower bound; omit it to skip
/// those two checks.
inline ConditionReport check_trigger_conditions(const GeneratorParams& params, const TriggerRule& control,
                                        const TriggerRule& comm, const std::vector<double>& lambda_P,
                                        std::optional<ParameterBounds> bounds = std::nullopt) {
  using detail::num;
  ConditionReport r;
  auto add = [&r](std::string name, bool holds, std::string detail) {
    r.conditions.push_back({std::move(name), holds, std::move(detail)});
  };
  const double lambda_p_max = lambda_P.empty() ? 0.0 : *std::max_element(lambda_P.begin(), lambda_P.end());
  const double comm_gamma_cap = std::min(1.0, params.eta / 2.0);

  add("comm_c_nonneg", comm.c0 >= 0.0 && comm.c1 >= 0.0, "c~0=" + num(comm.c0) + ", c~1=" + num(comm.c1));
  add("comm_c_positive", comm.c0 + comm.c1 > 0.0, "c~0+c~1=" + num(comm.c0 + comm.c1));
  add("comm_gamma_range", comm.gamma > 0.0 && comm.gamma < comm_gamma_cap,
      "0 < gamma~=" + num(comm.gamma) + " < min{1, eta/2}=" + num(comm_gamma_cap));
  add("control_c0_dominates", control.c0 >= comm.c0, "c0=" + num(control.c0) + " >= c~0=" + num(comm.c0));
  add("control_c_nonneg", control.c1 >= 0.0 && control.c0 >= 0.0, "c0=" + num(control.c0) + ", c1=" + num(control.c1));
  add("control_c_positive", control.c0 + control.c1 > 0.0, "c0+c1=" + num(control.c0 + control.c1));
  add("control_gamma_below_one", control.gamma > 0.0 && control.gamma < 1.0, "gamma=" + num(control.gamma) + " < 1");
  if (!lambda_P.empty()) {
    const double cap = 1.0 / (2.0 * lambda_p_max);
    add("control_gamma_below_lyapunov", control.gamma < cap,
        "gamma=" + num(control.gamma) + " < 1/(2 max lambda_P)=" + num(cap));
  }
  add("control_gamma_below_comm_gamma", control.gamma < comm.gamma,
      "gamma=" + num(control.gamma) + " < gamma~=" + num(comm.gamma));
  if (bounds) {
    add("alpha_bound", params.alpha >= bounds->alpha_min,
        "alpha=" + num(params.alpha) + " >= " + num(bounds->alpha_min));
    add("beta_bound", params.beta >= bounds->beta_min, "beta=" + num(params.beta) + " >= " + num(bounds->beta_min));
  }
  return r;
}

/// Conditions for event-triggered control with continuous communication:
/// 0 < gamma < min{1, 1/(2 max lambda_P), eta}.
inline ConditionReport check_control_only_conditions(const GeneratorParams& params, const TriggerRule& control,
                                          const std::vector<double>& lambda_P,
                                          std::optional<ParameterBounds> bounds = std::nullopt) {
  using detail::num;
  ConditionReport r;
  const double lambda_p_max = lambda_P.empty() ? 0.0 : *std::max_element(lambda_P.begin(), lambda_P.end());
  double cap = std::min(1.0, params.eta);
  if (!lambda_P.empty()) cap = std::min(cap, 1.0 / (2.0 * lambda_p_max));
  r.conditions.push_back({"control_c_positive", control.c0 >= 0.0 && control.c1 >= 0.0 && control.c0 + control.c1 > 0.0,
                          "c0=" + num(control.c0) + ", c1=" + num(control.c1)});
  r.conditions.push_back({"control_gamma_range", control.gamma > 0.0 && control.gamma < cap,
                          "0 < gamma=" + num(control.gamma) + " < " + num(cap)});
  if (bounds) {
    r.conditions.push_back({"alpha_bound", params.alpha >= bounds->alpha_min,
                            "alpha=" + num(params.alpha) + " >= " + num(bounds->alpha_min)});
    r.conditions.push_back({"beta_bound", params.beta >= bounds->beta_min,
                            "beta=" + num(params.beta) + " >= " + num(bounds->beta_min)});
  }
  return r;
}

}  // namespace etcons

#endif  // ETCONS_TRIGGER_HPP

#ifndef ETCONS_CONFIG_HPP
#define ETCONS_CONFIG_HPP

// Scenario files are JSON (comments allowed). See docs/scenario-format.md for
// the grammar. Node indices in files are 1-based.

#include <Eigen/Dense>
#include <json.hpp>

#include <complex>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "etcons/costs.hpp"
#include "etcons/engine.hpp"
#include "etcons/error.hpp"
#include "etcons/generator.hpp"
#include "etcons/graph.hpp"
#include "etcons/plant.hpp"
#include "etcons/trigger.hpp"

namespace etcons {

using json = nlohmann::ordered_json;

enum class CheckType { tail_radius_below, error_reduction, min_inter_event_above, no_events };

inline std::string_view to_string(CheckType t) {
  switch (t) {
    case CheckType::tail_radius_below: return "tail_radius_below";
    case CheckType::error_reduction: return "error_reduction";
    case CheckType::min_inter_event_above: return "min_inter_event_above";
    case CheckType::no_events: return "no_events";
  }
  return "";
}

/// A post-run assertion attached to a scenario.
///   tail_radius_below      tail_radius(window) < value
///   error_reduction        tail_radius(window) <= factor * initial error
///   min_inter_event_above  every agent's min gap of `kind` events after `after` > value
///   no_events              the run logged no events
struct Check {
  CheckType type = CheckType::tail_radius_below;
  double window = 5.0;
  double value = 0.0;
  double factor = 1.0;
  double after = 0.0;
  EventKind kind = EventKind::control;

  friend bool operator==(const Check&, const Check&) = default;
};

struct AgentDiagnostics {
  bool controllable = false;
  bool observable = false;
  bool no_zero_at_origin = false;
};

/// Everything computed while loading: assumption checks, spectra, curvature
/// and parameter conditions. Warnings never stop a run.
struct LoadReport {
  SpectralReport spectrum;
  std::vector<AgentDiagnostics> agents;
  double h_lo = 0.0;
  double h_hi = 0.0;
  std::optional<ParameterBounds> bounds;
  ConditionReport conditions;
  ConditionReport control_only_conditions;
  std::vector<std::string> warnings;
};

struct Scenario {
  SimConfig config;
  std::vector<Check> checks;
  LoadReport report;
};

namespace detail {

inline std::string path_join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

inline const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_number(j.at(key), path_join(where, key));
}

/// Accepts a number (1x1) or a list of rows.
inline Eigen::MatrixXd as_matrix(const json& j, const std::string& where) {
  if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty list of rows");
  if (!j.front().is_array()) {
    Eigen::MatrixXd m(1, static_cast<Eigen::Index>(j.size()));
    for (std::size_t c = 0; c < j.size(); ++c)
      m(0, static_cast<Eigen::Index>(c)) = as_number(j[c], where + "[" + std::to_string(c) + "]");
    return m;
  }
  const auto rows = j.size();
  const auto cols = j.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(where + ": rows must all have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          as_number(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

/// Flattens a matrix that must be a single row or a single column.
inline Eigen::VectorXd as_vector(const json& j, const std::string& where) {
  const Eigen::MatrixXd m = as_matrix(j, where);
  if (m.rows() != 1 && m.cols() != 1) throw ConfigError(where + ": expected a vector");
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

inline json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

inline TriggerRule parse_rule(const json& j, EventKind kind, const std::string& where) {
  TriggerRule r;
  r.kind = kind;
  r.c0 = as_number(require(j, "c0", where), where + ".c0");
  r.c1 = as_number(require(j, "c1", where), where + ".c1");
  r.gamma = as_number(require(j, "gamma", where), where + ".gamma");
  return r;
}

inline json rule_to_json(const TriggerRule& r) { return json{{"c0", r.c0}, {"c1", r.c1}, {"gamma", r.gamma}}; }

inline Check parse_check(const json& j, const std::string& where) {
  Check c;
  const auto& type = require(j, "type", where);
  if (!type.is_string()) throw ConfigError(where + ".type: expected a string");
  const auto t = type.get<std::string>();
  if (t == "tail_radius_below") {
    c.type = CheckType::tail_radius_below;
    c.window = number_or(j, "window", 5.0, where);
    c.value = as_number(require(j, "value", where), where + ".value");
  } else if (t == "error_reduction") {
    c.type = CheckType::error_reduction;
    c.window = number_or(j, "window", 5.0, where);
    c.factor = as_number(require(j, "factor", where), where + ".factor");
  } else if (t == "min_inter_event_above") {
    c.type = CheckType::min_inter_event_above;
    const auto& k = require(j, "kind", where);
    if (!k.is_string()) throw ConfigError(where + ".kind: expected a string");
    c.kind = event_kind_from_string(k.get<std::string>());
    c.after = number_or(j, "after", 0.0, where);
    c.value = as_number(require(j, "value", where), where + ".value");
  } else if (t == "no_events") {
    c.type = CheckType::no_events;
  } else {
    throw ConfigError(where + ".type: unknown check '" + t + "'");
  }
  return c;
}

inline json check_to_json(const Check& c) {
  json j{{"type", std::string(to_string(c.type))}};
  switch (c.type) {
    case CheckType::tail_radius_below:
      j["window"] = c.window;
      j["value"] = c.value;
      break;
    case CheckType::error_reduction:
      j["window"] = c.window;
      j["factor"] = c.factor;
      break;
    case CheckType::min_inter_event_above:
      j["kind"] = std::string(to_string(c.kind));
      j["after"] = c.after;
      j["value"] = c.value;
      break;
    case CheckType::no_events: break;
  }
  return j;
}

}  // namespace detail

/// Fills in the derived quantities and collects warnings. Throws ConfigError
/// only for fatal problems (enforced parameter bounds).
inline LoadReport analyze(SimConfig& cfg) {
  LoadReport r;
  r.spectrum = spectral_report(cfg.graph);
  if (!r.spectrum.strongly_connected) r.warnings.push_back("graph is not strongly connected");
  if (!r.spectrum.weight_balanced) r.warnings.push_back("graph is not weight-balanced");
  if (r.spectrum.sym_eigs.minCoeff() < -kEigenNonnegTol) r.warnings.push_back("Sym(L) has a negative eigenvalue");

  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    const auto& p = cfg.agents[i].plant;
    const auto m = check_minimality(p);
    AgentDiagnostics d{m.controllable, m.observable, check_transmission_zero_origin(p)};
    if (!m.minimal()) r.warnings.push_back("agents[" + std::to_string(i + 1) + "]: (C, A, B) is not minimal");
    r.agents.push_back(d);
  }

  r.h_lo = cfg.costs.h_lo_min();
  r.h_hi = cfg.costs.h_hi_max();
  if (!(r.h_lo > 0.0))
    r.warnings.push_back("a cost is not strongly convex on the working interval (min Hessian " + detail::num(r.h_lo) + ")");

  const bool spectral_ok = r.spectrum.lambda2 > kEigenNonnegTol && cfg.graph.size() >= 2;
  if (!cfg.eta_given) {
    if (spectral_ok && r.h_lo > 0.0) {
      cfg.generator.eta = implied_eta(cfg.generator.alpha, r.h_lo, r.spectrum.lambda2);
      r.warnings.push_back("generator.eta not given; using alpha * min{h_lo, lambda2} / 2 = " + detail::num(cfg.generator.eta));
    } else {
      throw ConfigError("generator.eta is required when it cannot be derived from the graph and costs");
    }
  }
  if (spectral_ok && r.h_lo > 0.0)
    r.bounds = recommended_parameters(r.h_lo, r.h_hi, r.spectrum.lambda2, r.spectrum.lambdaN, cfg.generator.eta);

  r.conditions = check_trigger_conditions(cfg.generator, cfg.control, cfg.comm, cfg.lambda_P(), r.bounds);
  r.control_only_conditions = check_control_only_conditions(cfg.generator, cfg.control, cfg.lambda_P(), r.bounds);
  const auto& active = cfg.mode == RunMode::control_only ? r.control_only_conditions : r.conditions;
  if (cfg.mode != RunMode::continuous) {
    for (const auto& c : active.conditions) {
      if (c.holds) continue;
      if ((c.name == "alpha_bound" || c.name == "beta_bound") && cfg.enforce_bounds)
        throw ConfigError("generator parameters violate the convergence bound: " + c.detail);
      r.warnings.push_back("parameter condition '" + c.name + "' violated: " + c.detail);
    }
  }
  return r;
}

/// Parses and validates a scenario document; assumption failures that make
/// synthesis impossible are fatal.
inline Scenario parse_scenario(const json& root) {
  if (!root.is_object()) throw ConfigError("scenario: top level must be an object");
  static const std::set<std::string> known{"name", "graph", "agents", "costs", "generator", "trigger", "simulation", "checks"};
  std::vector<std::string> unknown;
  for (const auto& [key, _] : root.items())
    if (!known.count(key)) unknown.push_back(key);

  Scenario sc;
  auto& cfg = sc.config;
  if (root.contains("name")) cfg.name = root.at("name").get<std::string>();

  // graph
  const auto& g = detail::require(root, "graph", "scenario");
  const auto n_json = detail::require(g, "n", "graph");
  if (!n_json.is_number_integer() || n_json.get<long long>() <= 0) throw ConfigError("graph.n: expected a positive integer");
  const auto n = n_json.get<std::size_t>();
  std::vector<Edge> edges;
  if (g.contains("edges")) {
    const auto& ej = g.at("edges");
    if (!ej.is_array()) throw ConfigError("graph.edges: expected a list of [from, to, weight]");
    for (std::size_t k = 0; k < ej.size(); ++k) {
      const auto where = "graph.edges[" + std::to_string(k) + "]";
      const auto& e = ej[k];
      if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ConfigError(where + ": expected [from, to, weight] with 1-based integer nodes");
      const auto from = e[0].get<long long>();
      const auto to = e[1].get<long long>();
      if (from < 1 || to < 1) throw ConfigError(where + ": node indices start at 1");
      const double w = e.size() == 3 ? detail::as_number(e[2], where + "[2]") : 1.0;
      edges.push_back({static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1), w});
    }
  }
  cfg.graph = WeightedDigraph(n, std::move(edges));

  // simulation (mode first: it decides whether plants are needed)
  if (root.contains("simulation")) {
    const auto& s = root.at("simulation");
    if (s.contains("mode")) cfg.mode = run_mode_from_string(s.at("mode").get<std::string>());
    cfg.t_final = detail::number_or(s, "t_final", cfg.t_final, "simulation");
    cfg.step = detail::number_or(s, "step", cfg.step, "simulation");
    if (s.contains("record_every")) {
      const auto& re = s.at("record_every");
      if (!re.is_number_integer() || re.get<long long>() <= 0) throw ConfigError("simulation.record_every: expected a positive integer");
      cfg.record_every = re.get<std::size_t>();
    }
    if (s.contains("init")) {
      const auto& in = s.at("init");
      if (in.contains("z") || in.contains("v") || in.contains("x")) {
        ExplicitInit ex;
        ex.z = detail::as_vector(detail::require(in, "z", "simulation.init"), "simulation.init.z");
        ex.v = detail::as_vector(detail::require(in, "v", "simulation.init"), "simulation.init.v");
        if (in.contains("x")) {
          const auto& xs = in.at("x");
          if (!xs.is_array()) throw ConfigError("simulation.init.x: expected one list per agent");
          for (std::size_t i = 0; i < xs.size(); ++i)
            ex.x.push_back(detail::as_vector(xs[i], "simulation.init.x[" + std::to_string(i + 1) + "]"));
        }
        cfg.init = std::move(ex);
      } else {
        RandomInit ri;
        if (in.contains("seed")) {
          if (!in.at("seed").is_number_unsigned()) throw ConfigError("simulation.init.seed: expected a nonnegative integer");
          ri.seed = in.at("seed").get<std::uint64_t>();
        }
        if (in.contains("range")) {
          const auto r = detail::as_vector(in.at("range"), "simulation.init.range");
          if (r.size() != 2) throw ConfigError("simulation.init.range: expected [lo, hi]");
          ri.range = {r(0), r(1)};
        }
        cfg.init = ri;
      }
    }
  }

  // agents
  if (root.contains("agents")) {
    const auto& aj = root.at("agents");
    if (!aj.is_array()) throw ConfigError("agents: expected a list");
    for (std::size_t i = 0; i < aj.size(); ++i) {
      const auto who = "agents[" + std::to_string(i + 1) + "]";
      const auto& a = aj[i];
      AgentConfig ac;
      ac.plant.A = detail::as_matrix(detail::require(a, "A", who), who + ".A");
      ac.plant.B = detail::as_vector(detail::require(a, "B", who), who + ".B");
      ac.plant.C = detail::as_vector(detail::require(a, "C", who), who + ".C").transpose();
      ac.plant.validate(who);
      if (a.contains("K1") && a.contains("poles")) throw ConfigError(who + ": give either K1 or poles, not both");
      if (a.contains("K1")) {
        ac.gain = UserGain{detail::as_vector(a.at("K1"), who + ".K1").transpose()};
      } else if (a.contains("poles")) {
        PolePlacement pp;
        for (const auto& pj : a.at("poles")) {
          if (pj.is_number()) {
            pp.poles.emplace_back(pj.get<double>(), 0.0);
          } else if (pj.is_array() && pj.size() == 2) {
            pp.poles.emplace_back(detail::as_number(pj[0], who + ".poles"), detail::as_number(pj[1], who + ".poles"));
          } else {
            throw ConfigError(who + ".poles: expected numbers or [re, im] pairs");
          }
        }
        ac.gain = std::move(pp);
      } else {
        throw ConfigError(who + ": needs K1 or poles");
      }
      try {
        ac.controller = synthesize(ac.plant, ac.gain);
      } catch (const AssumptionError& e) {
        throw ConfigError(who + ": " + e.what());
      } catch (const NumericError& e) {
        throw ConfigError(who + ": " + e.what());
      } catch (const ConfigError& e) {
        throw ConfigError(who + ": " + e.what());
      }
      cfg.agents.push_back(std::move(ac));
    }
  } else if (uses_plants(cfg.mode)) {
    throw ConfigError("scenario: missing key 'agents'");
  }

  // costs
  {
    const auto& cj = detail::require(root, "costs", "scenario");
    Interval working = kDefaultWorkingInterval;
    const json* list = &cj;
    if (cj.is_object()) {
      if (cj.contains("working_interval")) {
        const auto w = detail::as_vector(cj.at("working_interval"), "costs.working_interval");
        if (w.size() != 2 || !(w(0) < w(1))) throw ConfigError("costs.working_interval: expected [lo, hi] with lo < hi");
        working = {w(0), w(1)};
      }
      list = &detail::require(cj, "functions", "costs");
    }
    if (!list->is_array()) throw ConfigError("costs: expected a list of cost functions");
    std::vector<CostFunction> fns;
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto where = "costs[" + std::to_string(i + 1) + "]";
      const auto& f = (*list)[i];
      const auto& name = detail::require(f, "name", where);
      if (!name.is_string()) throw ConfigError(where + ".name: expected a string");
      CostParams params;
      for (const auto& [key, val] : f.items())
        if (key != "name") params[key] = detail::as_number(val, where + "." + key);
      try {
        fns.push_back(builtin_cost(name.get<std::string>(), params, working));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    cfg.costs = CostEnsemble(std::move(fns), working);
  }

  // generator
  {
    const auto& gj = detail::require(root, "generator", "scenario");
    cfg.generator.alpha = detail::as_number(detail::require(gj, "alpha", "generator"), "generator.alpha");
    cfg.generator.beta = detail::as_number(detail::require(gj, "beta", "generator"), "generator.beta");
    cfg.eta_given = gj.contains("eta");
    if (cfg.eta_given) cfg.generator.eta = detail::as_number(gj.at("eta"), "generator.eta");
    if (gj.contains("enforce_bounds")) {
      if (!gj.at("enforce_bounds").is_boolean()) throw ConfigError("generator.enforce_bounds: expected true or false");
      cfg.enforce_bounds = gj.at("enforce_bounds").get<bool>();
    }
  }

  // trigger
  {
    const auto& tj = detail::require(root, "trigger", "scenario");
    cfg.control = detail::parse_rule(detail::require(tj, "control", "trigger"), EventKind::control, "trigger.control");
    cfg.comm = detail::parse_rule(detail::require(tj, "comm", "trigger"), EventKind::comm, "trigger.comm");
  }

  if (root.contains("checks")) {
    const auto& ch = root.at("checks");
    if (!ch.is_array()) throw ConfigError("checks: expected a list");
    for (std::size_t k = 0; k < ch.size(); ++k) sc.checks.push_back(detail::parse_check(ch[k], "checks[" + std::to_string(k) + "]"));
  }

  validate(cfg);
  sc.report = analyze(cfg);
  for (const auto& key : unknown) sc.report.warnings.push_back("ignoring unknown top-level key '" + key + "'");
  return sc;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

inline Scenario parse_scenario_text(const std::string& text, const std::string& source = "<string>") {
  const auto root = parse_json_text(text, source);
  try {
    return parse_scenario(root);
  } catch (const json::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

/// Serialises a scenario; parse_scenario(emit_scenario(s)) reproduces s.
inline json emit_scenario(const Scenario& sc) {
  const auto& cfg = sc.config;
  json root;
  root["name"] = cfg.name;

  json edges = json::array();
  for (const auto& e : cfg.graph.edges()) edges.push_back(json::array({e.from + 1, e.to + 1, e.weight}));
  root["graph"] = json{{"n", cfg.graph.size()}, {"edges", edges}};

  json agents = json::array();
  for (const auto& a : cfg.agents) {
    json aj{{"A", detail::matrix_to_json(a.plant.A)},
            {"B", detail::vector_to_json(a.plant.B)},
            {"C", detail::vector_to_json(a.plant.C.transpose())}};
    if (const auto* user = std::get_if<UserGain>(&a.gain)) {
      aj["K1"] = detail::vector_to_json(user->K1.transpose());
    } else {
      json poles = json::array();
      for (const auto& p : std::get<PolePlacement>(a.gain).poles) {
        if (p.imag() == 0.0) poles.push_back(p.real());
        else poles.push_back(json::array({p.real(), p.imag()}));
      }
      aj["poles"] = poles;
    }
    agents.push_back(std::move(aj));
  }
  if (!cfg.agents.empty()) root["agents"] = agents;

  json fns = json::array();
  for (const auto& c : cfg.costs.costs()) {
    json f{{"name", c.label}};
    for (const auto& [k, v] : c.params) f[k] = v;
    fns.push_back(std::move(f));
  }
  const auto w = cfg.costs.working_interval();
  root["costs"] = json{{"working_interval", json::array({w.lo, w.hi})}, {"functions", fns}};

  json gen{{"alpha", cfg.generator.alpha}, {"beta", cfg.generator.beta}};
  if (cfg.eta_given) gen["eta"] = cfg.generator.eta;
  gen["enforce_bounds"] = cfg.enforce_bounds;
  root["generator"] = gen;

  root["trigger"] = json{{"control", detail::rule_to_json(cfg.control)}, {"comm", detail::rule_to_json(cfg.comm)}};

  json sim{{"mode", std::string(to_string(cfg.mode))},
           {"t_final", cfg.t_final},
           {"step", cfg.step},
           {"record_every", cfg.record_every}};
  if (const auto* r = std::get_if<RandomInit>(&cfg.init)) {
    sim["init"] = json{{"seed", r->seed}, {"range", json::array({r->range.lo, r->range.hi})}};
  } else {
    const auto& ex = std::get<ExplicitInit>(cfg.init);
    json xs = json::array();
    for (const auto& x : ex.x) xs.push_back(detail::vector_to_json(x));
    sim["init"] = json{{"x", xs}, {"z", detail::vector_to_json(ex.z)}, {"v", detail::vector_to_json(ex.v)}};
  }
  root["simulation"] = sim;

  if (!sc.checks.empty()) {
    json checks = json::array();
    for (const auto& c : sc.checks) checks.push_back(detail::check_to_json(c));
    root["checks"] = checks;
  }
  return root;
}

/// The four-agent reference network: plants, gains, costs, generator and
/// triggering parameters. The third agent uses B = [0 0 1]^T and C = [1 0 0];
/// its K1 is the LQR gain for Q = I, R = 1 and K2 = U - K1 X follows from the
/// regulator equations.
inline constexpr const char* kFourAgentScenario = R"json({
  "name": "four_agent",
  "graph": {
    "n": 4,
    "edges": [[1, 2, 1.0], [2, 3, 1.0], [3, 1, 1.0], [3, 4, 1.0], [4, 3, 1.0]]
  },
  "agents": [
    {"A": [[1.0]], "B": [1.0], "C": [1.0], "K1": [-2.4142]},
    {"A": [[0.0, 1.0], [-1.0, 0.0]], "B": [0.0, 1.0], "C": [1.0, 0.0], "K1": [-0.4142, -1.3522]},
    {"A": [[0.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [2.0, 0.0, 1.0]], "B": [0.0, 0.0, 1.0], "C": [1.0, 0.0, 0.0],
     "K1": [-2.7331, -2.3372, -3.5835]},
    {"A": [[0.0, 1.0], [0.0, 0.0]], "B": [0.0, 1.0], "C": [1.0, 0.0], "K1": [-1.0, -1.7321]}
  ],
  "costs": {
    "working_interval": [-50.0, 50.0],
    "functions": [{"name": "example_f1"}, {"name": "example_f2"}, {"name": "example_f3"}, {"name": "example_f4"}]
  },
  "generator": {"alpha": 1.0, "beta": 10.0, "enforce_bounds": false},
  "trigger": {
    "control": {"c0": 0.0, "c1": 5.0, "gamma": 0.5},
    "comm": {"c0": 0.0, "c1": 5.0, "gamma": 0.1}
  },
  "simulation": {
    "mode": "full",
    "t_final": 20.0,
    "step": 0.001,
    "record_every": 1,
    "init": {"seed": 1, "range": [-5.0, 5.0]}
  },
  "checks": [
    {"type": "error_reduction", "window": 5.0, "factor": 0.5}
  ]
})json";

inline std::optional<std::string> builtin_scenario_text(const std::string& name) {
  if (name == "four_agent") return std::string(kFourAgentScenario);
  return std::nullopt;
}

/// Loads a scenario from a file path, or a bundled scenario by name when no
/// such file exists.
inline Scenario load_config(const std::string& path_or_name) {
  namespace fs = std::filesystem;
  if (!fs::exists(path_or_name)) {
    if (auto text = builtin_scenario_text(path_or_name)) return parse_scenario_text(*text, path_or_name);
    throw ConfigError("no such scenario file or bundled scenario: '" + path_or_name + "'");
  }
  std::ifstream in(path_or_name);
  if (!in) throw ConfigError("cannot open '" + path_or_name + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path_or_name);
}

}  // namespace etcons

#endif  // ETCONS_CONFIG_HPP

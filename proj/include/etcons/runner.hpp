#ifndef ETCONS_RUNNER_HPP
#define ETCONS_RUNNER_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "etcons/analysis.hpp"
#include "etcons/config.hpp"
#include "etcons/costs.hpp"
#include "etcons/engine.hpp"
#include "etcons/error.hpp"
#include "etcons/io.hpp"

namespace etcons {

inline constexpr double kOracleTol = 1e-10;
inline constexpr double kDefaultTailWindow = 5.0;

/// Ground-truth optimum used for every run report (bisection on f').
inline double oracle_optimum(const CostEnsemble& costs) { return bisect_optimum(costs, kOracleTol); }

struct RunOverrides {
  std::optional<RunMode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_final;
  std::optional<double> step;
};

/// Applies command-line overrides and refreshes the load report.
inline void apply_overrides(Scenario& sc, const RunOverrides& o) {
  auto& cfg = sc.config;
  if (o.mode) cfg.mode = *o.mode;
  if (o.t_final) cfg.t_final = *o.t_final;
  if (o.step) cfg.step = *o.step;
  if (o.seed) {
    auto* r = std::get_if<RandomInit>(&cfg.init);
    if (r == nullptr) throw ConfigError("--seed given but the scenario uses explicit initial conditions");
    r->seed = *o.seed;
  }
  validate(cfg);
  sc.report = analyze(cfg);
}

struct CheckResult {
  Check check;
  bool passed = false;
  double measured = 0.0;
};

inline std::vector<CheckResult> evaluate_checks(const std::vector<Check>& checks, const Trace& tr, double y_star) {
  std::vector<CheckResult> out;
  const double t_end = tr.times.back();
  for (const auto& c : checks) {
    CheckResult r{c, false, 0.0};
    switch (c.type) {
      case CheckType::tail_radius_below:
        r.measured = tail_radius(tr, y_star, std::min(c.window, t_end));
        r.passed = r.measured < c.value;
        break;
      case CheckType::error_reduction: {
        const double initial = max_abs_error(tr.y.topRows(1), y_star).front();
        r.measured = tail_radius(tr, y_star, std::min(c.window, t_end));
        r.passed = r.measured <= c.factor * initial;
        break;
      }
      case CheckType::min_inter_event_above: {
        r.measured = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tr.agents(); ++i)
          if (auto gap = min_inter_event(tr.events, i, c.kind, c.after)) r.measured = std::min(r.measured, *gap);
        r.passed = r.measured > c.value;
        break;
      }
      case CheckType::no_events:
        r.measured = static_cast<double>(tr.events.size());
        r.passed = tr.events.empty();
        break;
    }
    out.push_back(r);
  }
  return out;
}

struct RunResult {
  Trace trace;
  RunSummary summary;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

inline void write_summary(std::ostream& os, const Scenario& sc, const RunResult& res) {
  const auto& cfg = sc.config;
  const auto& rep = sc.report;
  auto kv = [&os](const std::string& k, const std::string& v) { os << k << '=' << v << '\n'; };
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };

  kv("scenario", cfg.name);
  kv("mode", std::string(to_string(cfg.mode)));
  if (const auto* r = std::get_if<RandomInit>(&cfg.init)) {
    kv("init", "random");
    kv("seed", std::to_string(r->seed));
    kv("init_range", format_double(r->range.lo) + "," + format_double(r->range.hi));
  } else {
    kv("init", "explicit");
  }
  kv("t_final", format_double(cfg.t_final));
  kv("step", format_double(cfg.step));
  kv("record_every", std::to_string(cfg.record_every));
  kv("agents", std::to_string(cfg.size()));
  kv("generator.alpha", format_double(cfg.generator.alpha));
  kv("generator.beta", format_double(cfg.generator.beta));
  kv("generator.eta", format_double(cfg.generator.eta));
  kv("generator.eta_given", b(cfg.eta_given));
  for (const auto* rule : {&cfg.control, &cfg.comm}) {
    const std::string p = "trigger." + std::string(to_string(rule->kind)) + ".";
    kv(p + "c0", format_double(rule->c0));
    kv(p + "c1", format_double(rule->c1));
    kv(p + "gamma", format_double(rule->gamma));
  }
  kv("graph.strongly_connected", b(rep.spectrum.strongly_connected));
  kv("graph.weight_balanced", b(rep.spectrum.weight_balanced));
  kv("graph.lambda2", format_double(rep.spectrum.lambda2));
  kv("graph.lambdaN", format_double(rep.spectrum.lambdaN));
  kv("costs.h_lo", format_double(rep.h_lo));
  kv("costs.h_hi", format_double(rep.h_hi));
  if (rep.bounds) {
    kv("bounds.alpha_min", format_double(rep.bounds->alpha_min));
    kv("bounds.beta_min", format_double(rep.bounds->beta_min));
  }
  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    const auto p = "agent" + std::to_string(i + 1) + ".";
    kv(p + "K2", format_double(cfg.agents[i].controller.K2));
    kv(p + "lambda_P", format_double(cfg.agents[i].controller.lambda_P));
  }
  for (const auto& c : rep.conditions.conditions) kv("condition." + c.name, b(c.holds));
  for (std::size_t k = 0; k < rep.warnings.size(); ++k) kv("warning." + std::to_string(k + 1), rep.warnings[k]);

  const auto& s = res.summary;
  kv("y_star", format_double(s.y_star));
  kv("tail_window", format_double(s.tail_window));
  kv("tail_radius", format_double(s.tail_radius));
  kv("initial_error", format_double(s.initial_error));
  kv("final_error", format_double(s.final_error));
  kv("sum_v_drift", format_double(s.sum_v_drift));
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const auto p = "agent" + std::to_string(i + 1) + ".";
    kv(p + "control_events", std::to_string(s.agents[i].control_events));
    kv(p + "comm_events", std::to_string(s.agents[i].comm_events));
    kv(p + "min_control_interval", format_optional(s.agents[i].min_control_interval));
    kv(p + "min_comm_interval", format_optional(s.agents[i].min_comm_interval));
  }
  for (std::size_t k = 0; k < res.checks.size(); ++k) {
    const auto p = "check." + std::to_string(k + 1) + ".";
    kv(p + "type", std::string(to_string(res.checks[k].check.type)));
    kv(p + "measured", format_double(res.checks[k].measured));
    kv(p + "passed", b(res.checks[k].passed));
  }
  kv("status", res.all_passed() ? "ok" : "check_failed");
}

struct OutputOptions {
  bool long_csv = false;
};

/// Simulates, evaluates the scenario checks and, when `out_dir` is given,
/// writes trace.csv, events.csv and summary.txt there.
inline RunResult run_scenario(const Scenario& sc, const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                              OutputOptions opts = {}) {
  RunResult res;
  res.trace = simulate(sc.config);
  const double y_star = oracle_optimum(sc.config.costs);
  const double window = std::min(kDefaultTailWindow, sc.config.t_final);
  res.summary = summarize(res.trace, y_star, window);
  res.checks = evaluate_checks(sc.checks, res.trace, y_star);

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    auto open = [&](const char* name) {
      std::ofstream f(*out_dir / name);
      if (!f) throw Error("cannot write " + (*out_dir / name).string());
      return f;
    };
    {
      auto f = open("trace.csv");
      write_trace_csv(f, res.trace);
    }
    {
      auto f = open("events.csv");
      write_events_csv(f, res.trace.events);
    }
    {
      auto f = open("summary.txt");
      write_summary(f, sc, res);
    }
    if (opts.long_csv) {
      auto f = open("trace_long.csv");
      write_long_csv(f, res.trace);
    }
  }
  return res;
}

inline SweepRow sweep_row(double value, const RunResult& res) {
  SweepRow row;
  row.c0 = row.c_comm0 = value;
  row.tail_radius = res.summary.tail_radius;
  for (const auto& a : res.summary.agents) {
    row.events_ctrl += a.control_events;
    row.events_comm += a.comm_events;
    if (a.min_control_interval && (!row.min_interval_ctrl || *a.min_control_interval < *row.min_interval_ctrl))
      row.min_interval_ctrl = a.min_control_interval;
    if (a.min_comm_interval && (!row.min_interval_comm || *a.min_comm_interval < *row.min_interval_comm))
      row.min_interval_comm = a.min_comm_interval;
  }
  return row;
}

/// One run per value with c0 = c~0 = value. Runs execute concurrently and
/// write to `<out_dir>/c0_<value>/`; rows come back in input order.
inline std::vector<SweepRow> run_sweep(const Scenario& base, const std::vector<double>& values,
                                       const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  if (values.empty()) throw ConfigError("sweep: at least one c0 value is required");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] >= 0.0)) throw ConfigError("sweep: c0 values must be nonnegative");
    if (k > 0 && !(values[k] > values[k - 1])) throw ConfigError("sweep: c0 values must be strictly ascending");
  }
  std::vector<std::future<SweepRow>> jobs;
  for (double value : values) {
    Scenario sc = base;
    sc.config.control.c0 = value;
    sc.config.comm.c0 = value;
    validate(sc.config);
    sc.report = analyze(sc.config);
    std::optional<std::filesystem::path> dir;
    if (out_dir) dir = *out_dir / ("c0_" + format_double(value));
    jobs.push_back(std::async(std::launch::async, [sc = std::move(sc), dir, value] {
      return sweep_row(value, run_scenario(sc, dir));
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream f(*out_dir / "sweep.csv");
    if (!f) throw Error("cannot write " + (*out_dir / "sweep.csv").string());
    write_sweep_csv(f, rows);
  }
  return rows;
}

struct ModeRow {
  RunMode mode = RunMode::full;
  double tail_radius = 0.0;
  double final_error = 0.0;
  std::size_t events_ctrl = 0;
  std::size_t events_comm = 0;
};

inline void write_mode_csv(std::ostream& os, const std::vector<ModeRow>& rows) {
  os << "mode,tail_radius,final_error,events_ctrl,events_comm\n";
  for (const auto& r : rows)
    os << to_string(r.mode) << ',' << format_double(r.tail_radius) << ',' << format_double(r.final_error) << ','
       << r.events_ctrl << ',' << r.events_comm << '\n';
}

/// Runs the scenario once in every mode, concurrently, each writing to
/// `<out_dir>/<mode>/`; rows follow the RunMode declaration order.
inline std::vector<ModeRow> run_modes(const Scenario& base,
                                      const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  std::vector<std::future<ModeRow>> jobs;
  for (auto mode : {RunMode::full, RunMode::control_only, RunMode::generator_only, RunMode::continuous}) {
    Scenario sc = base;
    apply_overrides(sc, {mode, std::nullopt, std::nullopt, std::nullopt});
    std::optional<std::filesystem::path> dir;
    if (out_dir) dir = *out_dir / std::string(to_string(mode));
    jobs.push_back(std::async(std::launch::async, [sc = std::move(sc), dir, mode] {
      const auto res = run_scenario(sc, dir);
      ModeRow row{mode, res.summary.tail_radius, res.summary.final_error, 0, 0};
      for (const auto& a : res.summary.agents) {
        row.events_ctrl += a.control_events;
        row.events_comm += a.comm_events;
      }
      return row;
    }));
  }
  std::vector<ModeRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream f(*out_dir / "modes.csv");
    if (!f) throw Error("cannot write " + (*out_dir / "modes.csv").string());
    write_mode_csv(f, rows);
  }
  return rows;
}

}  // namespace etcons

#endif  // ETCONS_RUNNER_HPP

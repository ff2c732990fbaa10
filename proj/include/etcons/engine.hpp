#ifndef ETCONS_ENGINE_HPP
#define ETCONS_ENGINE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "etcons/costs.hpp"
#include "etcons/error.hpp"
#include "etcons/generator.hpp"
#include "etcons/graph.hpp"
#include "etcons/plant.hpp"
#include "etcons/trigger.hpp"

namespace etcons {

/// What is event-triggered in a run.
///   full           - controller updates and broadcasts both event-triggered
///   control_only   - event-triggered controller, continuous communication
///   generator_only - event-triggered generator alone, no plants
///   continuous     - u = K1 x + K2 z and the generator evaluated continuously
enum class RunMode { full, control_only, generator_only, continuous };

inline std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::full: return "full";
    case RunMode::control_only: return "control_only";
    case RunMode::generator_only: return "generator_only";
    case RunMode::continuous: return "continuous";
  }
  return "full";
}

inline RunMode run_mode_from_string(std::string_view s) {
  if (s == "full") return RunMode::full;
  if (s == "control_only") return RunMode::control_only;
  if (s == "generator_only") return RunMode::generator_only;
  if (s == "continuous") return RunMode::continuous;
  throw ConfigError("unknown run mode '" + std::string(s) + "'");
}

inline bool uses_plants(RunMode m) { return m != RunMode::generator_only; }
inline bool control_triggered(RunMode m) { return m == RunMode::full || m == RunMode::control_only; }
inline bool comm_triggered(RunMode m) { return m == RunMode::full || m == RunMode::generator_only; }

struct AgentConfig {
  LinearPlant plant;
  GainSpec gain;
  SynthesizedController controller;
};

struct RandomInit {
  std::uint64_t seed = 1;
  Interval range{-5.0, 5.0};
};

struct ExplicitInit {
  std::vector<Eigen::VectorXd> x;
  Eigen::VectorXd z;
  Eigen::VectorXd v;
};

using InitSpec = std::variant<RandomInit, ExplicitInit>;

struct SimConfig {
  std::string name = "scenario";
  WeightedDigraph graph;
  std::vector<AgentConfig> agents;
  CostEnsemble costs;
  GeneratorParams generator;
  bool enforce_bounds = false;
  bool eta_given = true;
  TriggerRule control{0.0, 5.0, 0.5, EventKind::control};
  TriggerRule comm{0.0, 5.0, 0.1, EventKind::comm};
  RunMode mode = RunMode::full;
  double t_final = 20.0;
  double step = 1e-3;
  std::size_t record_every = 1;
  InitSpec init = RandomInit{};

  std::size_t size() const { return graph.size(); }

  std::vector<double> lambda_P() const {
    std::vector<double> out;
    for (const auto& a : agents) out.push_back(a.controller.lambda_P);
    return out;
  }
};

/// Structural validation; every problem found is listed in one error.
inline void validate(const SimConfig& cfg) {
  std::vector<std::string> problems;
  const auto n = cfg.graph.size();
  if (n == 0) problems.push_back("graph has no nodes");
  if (cfg.costs.size() != n)
    problems.push_back("expected " + std::to_string(n) + " cost functions, got " + std::to_string(cfg.costs.size()));
  if (uses_plants(cfg.mode) && cfg.agents.size() != n)
    problems.push_back("expected " + std::to_string(n) + " agents, got " + std::to_string(cfg.agents.size()));
  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    const auto& a = cfg.agents[i];
    const auto who = "agents[" + std::to_string(i + 1) + "]";
    try {
      a.plant.validate(who);
    } catch (const ConfigError& e) {
      problems.emplace_back(e.what());
      continue;
    }
    const auto d = a.plant.dim();
    if (a.controller.K1.size() != d || a.controller.X.size() != d)
      problems.push_back(who + ": controller has not been synthesized for this plant");
  }
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) problems.push_back("simulation.step must be positive");
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) problems.push_back("simulation.t_final must be nonnegative");
  if (cfg.record_every == 0) problems.push_back("simulation.record_every must be positive");
  if (!(cfg.generator.alpha > 0.0) || !(cfg.generator.beta > 0.0))
    problems.push_back("generator.alpha and generator.beta must be positive");
  if (!(cfg.generator.eta > 0.0)) problems.push_back("generator.eta must be positive");
  for (const auto* rule : {&cfg.control, &cfg.comm}) {
    try {
      rule->validate();
    } catch (const ConfigError& e) {
      problems.emplace_back(e.what());
    }
  }
  if (const auto* ex = std::get_if<ExplicitInit>(&cfg.init)) {
    if (ex->z.size() != static_cast<Eigen::Index>(n) || ex->v.size() != static_cast<Eigen::Index>(n))
      problems.push_back("init.z and init.v must have " + std::to_string(n) + " entries");
    if (uses_plants(cfg.mode)) {
      if (ex->x.size() != cfg.agents.size()) {
        problems.push_back("init.x must list one state per agent");
      } else {
        for (std::size_t i = 0; i < ex->x.size(); ++i)
          if (i < cfg.agents.size() && ex->x[i].size() != cfg.agents[i].plant.dim())
            problems.push_back("init.x[" + std::to_string(i + 1) + "] has the wrong dimension");
      }
    }
  } else {
    const auto& r = std::get<RandomInit>(cfg.init);
    if (!(r.range.lo <= r.range.hi)) problems.push_back("init.range must satisfy lo <= hi");
  }
  if (problems.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw ConfigError(msg);
}

/// Initial values in draw order x_1, ..., x_N, z, v for random initialisation.
inline ExplicitInit resolve_initial_state(const SimConfig& cfg) {
  if (const auto* ex = std::get_if<ExplicitInit>(&cfg.init)) return *ex;
  const auto& r = std::get<RandomInit>(cfg.init);
  std::mt19937_64 rng(r.seed);
  std::uniform_real_distribution<double> dist(r.range.lo, r.range.hi);
  ExplicitInit out;
  if (uses_plants(cfg.mode)) {
    for (const auto& a : cfg.agents) {
      Eigen::VectorXd x(a.plant.dim());
      for (auto& xi : x) xi = dist(rng);
      out.x.push_back(std::move(x));
    }
  }
  const auto n = static_cast<Eigen::Index>(cfg.size());
  out.z.resize(n);
  out.v.resize(n);
  for (auto& zi : out.z) zi = dist(rng);
  for (auto& vi : out.v) vi = dist(rng);
  return out;
}

/// One classical fourth-order Runge-Kutta step of y' = f(t, y).
template <class Field>
Eigen::VectorXd rk4_step(Field&& f, const Eigen::VectorXd& y, double t, double h) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + 0.5 * h, (y + 0.5 * h * k1).eval());
  const Eigen::VectorXd k3 = f(t + 0.5 * h, (y + 0.5 * h * k2).eval());
  const Eigen::VectorXd k4 = f(t + h, (y + h * k3).eval());
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct SimState {
  double t = 0.0;
  std::vector<Eigen::VectorXd> x;
  GeneratorState gen;
  Eigen::VectorXd u_held;
};

/// Fixed-step closed-loop simulator. Owns all mutable run state; not shared
/// between threads.
class Simulator {
 public:
  explicit Simulator(SimConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_);
    lap_ = laplacian(cfg_.graph);
    n_ = cfg_.size();
    const auto init = resolve_initial_state(cfg_);
    state_.gen = GeneratorState::fresh(init.z, init.v);
    state_.u_held = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    if (uses_plants(cfg_.mode)) {
      state_.x = init.x;
      offsets_.push_back(0);
      for (const auto& a : cfg_.agents) offsets_.push_back(offsets_.back() + a.plant.dim());
      for (std::size_t i = 0; i < n_; ++i) state_.u_held(idx(i)) = command(i, state_.x[i], state_.gen.z(idx(i)));
    } else {
      offsets_.push_back(0);
    }
    // t = 0 is the first controller update and the first broadcast.
    for (std::size_t i = 0; i < n_; ++i) {
      if (comm_triggered(cfg_.mode)) log_.push_back({i, EventKind::comm, 0.0});
      if (control_triggered(cfg_.mode)) log_.push_back({i, EventKind::control, 0.0});
    }
    steps_total_ = cfg_.t_final > 0.0 ? static_cast<std::size_t>(std::ceil(cfg_.t_final / cfg_.step - 1e-9)) : 0;
  }

  const SimConfig& config() const { return cfg_; }
  const SimState& state() const { return state_; }
  const EventLog& events() const { return log_; }
  double time() const { return state_.t; }
  std::size_t steps_taken() const { return steps_; }
  std::size_t steps_total() const { return steps_total_; }
  bool done() const { return steps_ >= steps_total_; }

  /// Current output of agent i (z_i when there are no plants).
  double output(std::size_t i) const {
    if (!uses_plants(cfg_.mode)) return state_.gen.z(idx(i));
    return cfg_.agents[i].plant.C.dot(state_.x[i]);
  }

  /// u~_i = K1 x_i + K2 z_i at the current state.
  double command(std::size_t i) const {
    if (!uses_plants(cfg_.mode)) return 0.0;
    return command(i, state_.x[i], state_.gen.z(idx(i)));
  }

  /// Input currently applied to agent i.
  double applied_input(std::size_t i) const {
    if (!uses_plants(cfg_.mode)) return 0.0;
    if (cfg_.mode == RunMode::continuous) return command(i);
    return state_.u_held(idx(i));
  }

  /// Integrates one step with held values frozen, then evaluates broadcasts
  /// and controller updates (in that order, agents by index) at the new time.
  void step() {
    if (done()) return;
    const double t0 = state_.t;
    const double h = std::min(cfg_.step, cfg_.t_final - t0);
    const Eigen::VectorXd y0 = pack();
    const Eigen::VectorXd y1 = rk4_step([this](double, const Eigen::VectorXd& y) { return field(y); }, y0, t0, h);
    ++steps_;
    const double t1 = steps_ == steps_total_ ? cfg_.t_final : static_cast<double>(steps_) * cfg_.step;
    unpack(y1);
    state_.t = t1;
    check_finite();

    if (comm_triggered(cfg_.mode)) {
      auto& g = state_.gen;
      for (std::size_t i = 0; i < n_; ++i) {
        const auto k = idx(i);
        if (comm_event(g.z(k) - g.z_held(k), g.v(k) - g.v_held(k), cfg_.comm, t1)) {
          g.z_held(k) = g.z(k);
          g.v_held(k) = g.v(k);
          log_.push_back({i, EventKind::comm, t1});
        }
      }
    }
    if (control_triggered(cfg_.mode)) {
      for (std::size_t i = 0; i < n_; ++i) {
        const double target = command(i);
        if (control_event(state_.u_held(idx(i)) - target, cfg_.control, t1)) {
          state_.u_held(idx(i)) = target;
          log_.push_back({i, EventKind::control, t1});
        }
      }
    }
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  double command(std::size_t i, const Eigen::VectorXd& x, double z) const {
    return cfg_.agents[i].controller.command(x, z);
  }

  Eigen::Index plant_size() const { return offsets_.back(); }

  Eigen::VectorXd pack() const {
    const auto n = idx(n_);
    Eigen::VectorXd y(plant_size() + 2 * n);
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      y.segment(offsets_[i], offsets_[i + 1] - offsets_[i]) = state_.x[i];
    y.segment(plant_size(), n) = state_.gen.z;
    y.segment(plant_size() + n, n) = state_.gen.v;
    return y;
  }

  void unpack(const Eigen::VectorXd& y) {
    const auto n = idx(n_);
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      state_.x[i] = y.segment(offsets_[i], offsets_[i + 1] - offsets_[i]);
    state_.gen.z = y.segment(plant_size(), n);
    state_.gen.v = y.segment(plant_size() + n, n);
  }

  Eigen::VectorXd field(const Eigen::VectorXd& y) const {
    const auto n = idx(n_);
    const Eigen::VectorXd z = y.segment(plant_size(), n);
    const Eigen::VectorXd v = y.segment(plant_size() + n, n);
    Eigen::VectorXd dy(y.size());

    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
      const auto& a = cfg_.agents[i];
      const auto len = offsets_[i + 1] - offsets_[i];
      const Eigen::VectorXd x = y.segment(offsets_[i], len);
      const double u = cfg_.mode == RunMode::continuous ? command(i, x, z(idx(i))) : state_.u_held(idx(i));
      dy.segment(offsets_[i], len) = a.plant.A * x + a.plant.B * u;
    }

    const bool held = comm_triggered(cfg_.mode);
    const auto rates = held ? generator_field(z, state_.gen.z_held, state_.gen.v_held, cfg_.generator, lap_, cfg_.costs)
                            : generator_field(z, z, v, cfg_.generator, lap_, cfg_.costs);
    dy.segment(plant_size(), n) = rates.dz;
    dy.segment(plant_size() + n, n) = rates.dv;
    return dy;
  }

  void check_finite() const {
    for (std::size_t i = 0; i < state_.x.size(); ++i)
      if (!state_.x[i].allFinite())
        throw SimulationAbort("non-finite plant state of agent " + std::to_string(i + 1) + " at t=" +
                              std::to_string(state_.t));
    if (!state_.gen.z.allFinite() || !state_.gen.v.allFinite())
      throw SimulationAbort("non-finite generator state at t=" + std::to_string(state_.t));
  }

  SimConfig cfg_;
  Eigen::MatrixXd lap_;
  std::size_t n_ = 0;
  std::vector<Eigen::Index> offsets_;
  SimState state_;
  EventLog log_;
  std::size_t steps_ = 0;
  std::size_t steps_total_ = 0;
};

/// Sampled trajectories. Every matrix has one row per sample and one column
/// per agent.
struct Trace {
  RunMode mode = RunMode::full;
  double step = 0.0;
  std::optional<std::uint64_t> seed;
  std::vector<double> times;
  Eigen::MatrixXd y, z, v, u, u_tilde, z_held, v_held;
  std::vector<Eigen::MatrixXd> x;  // per agent: samples x n_i
  EventLog events;

  std::size_t samples() const { return times.size(); }
  std::size_t agents() const { return static_cast<std::size_t>(y.cols()); }
};

namespace detail {

inline void record(Trace& tr, const Simulator& sim, Eigen::Index row) {
  const auto& s = sim.state();
  tr.times.push_back(s.t);
  for (std::size_t i = 0; i < tr.agents(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    tr.y(row, c) = sim.output(i);
    tr.u(row, c) = sim.applied_input(i);
    tr.u_tilde(row, c) = sim.command(i);
    if (i < tr.x.size()) tr.x[i].row(row) = s.x[i].transpose();
  }
  tr.z.row(row) = s.gen.z.transpose();
  tr.v.row(row) = s.gen.v.transpose();
  tr.z_held.row(row) = s.gen.z_held.transpose();
  tr.v_held.row(row) = s.gen.v_held.transpose();
}

}  // namespace detail

/// Runs a configuration over [0, t_final], sampling every `record_every`
/// steps plus the final instant.
inline Trace simulate(const SimConfig& cfg) {
  Simulator sim(cfg);
  Trace tr;
  tr.mode = cfg.mode;
  tr.step = cfg.step;
  if (const auto* r = std::get_if<RandomInit>(&cfg.init)) tr.seed = r->seed;

  const auto n = static_cast<Eigen::Index>(cfg.size());
  const auto capacity = static_cast<Eigen::Index>(sim.steps_total() / cfg.record_every + 2);
  for (auto* m : {&tr.y, &tr.z, &tr.v, &tr.u, &tr.u_tilde, &tr.z_held, &tr.v_held}) m->resize(capacity, n);
  if (uses_plants(cfg.mode))
    for (const auto& a : cfg.agents) tr.x.emplace_back(capacity, a.plant.dim());
  tr.times.reserve(static_cast<std::size_t>(capacity));

  Eigen::Index row = 0;
  detail::record(tr, sim, row++);
  while (!sim.done()) {
    sim.step();
    if (sim.steps_taken() % cfg.record_every == 0 || sim.done()) detail::record(tr, sim, row++);
  }
  for (auto* m : {&tr.y, &tr.z, &tr.v, &tr.u, &tr.u_tilde, &tr.z_held, &tr.v_held}) m->conservativeResize(row, n);
  for (auto& m : tr.x) m.conservativeResize(row, m.cols());
  tr.events = sim.events();
  return tr;
}

}  // namespace etcons

#endif  // ETCONS_ENGINE_HPP

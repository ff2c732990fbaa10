#include <catch_amalgamated.hpp>

#include <cmath>

#include "etcons/analysis.hpp"
#include "etcons/engine.hpp"
#include "support/scenarios.hpp"

using namespace etcons;
using Catch::Matchers::WithinAbs;

TEST_CASE("rk4 matches the exponential to fifth order", "[engine]") {
  const Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
  const auto f = [](double, const Eigen::VectorXd& y) { return Eigen::VectorXd(-y); };
  const double h = 0.01;
  const double err = std::abs(rk4_step(f, y0, 0.0, h)(0) - std::exp(-h));
  CHECK(err < 1e-11);
  const double err_half = std::abs(rk4_step(f, y0, 0.0, h / 2)(0) - std::exp(-h / 2));
  CHECK(err / err_half > 25.0);  // local error O(h^5)
}

TEST_CASE("zero dynamics keep the plant state", "[engine]") {
  auto sc = scenarios::cycle("full", 0.5);
  for (auto& a : sc.config.agents) {
    a.plant.A.setZero();
    a.plant.B.setZero();
  }
  const auto tr = simulate(sc.config);
  for (std::size_t i = 0; i < tr.x.size(); ++i) CHECK(tr.x[i].row(0) == tr.x[i].row(tr.x[i].rows() - 1));
}

TEST_CASE("t_final = 0 gives only the initial sample", "[engine]") {
  auto sc = scenarios::cycle("full", 0.0);
  const auto tr = simulate(sc.config);
  CHECK(tr.samples() == 1);
  CHECK(tr.times.front() == 0.0);
}

TEST_CASE("initial state follows the documented draw order", "[engine]") {
  const auto sc = scenarios::cycle("full", 0.0);
  const auto init = resolve_initial_state(sc.config);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(init.x[i](0) == dist(rng));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(init.z(i) == dist(rng));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(init.v(i) == dist(rng));
}

TEST_CASE("runs are deterministic", "[engine]") {
  const auto sc = scenarios::cycle("full", 2.0);
  const auto a = simulate(sc.config);
  const auto b = simulate(sc.config);
  CHECK(a.y == b.y);
  CHECK(a.v == b.v);
  CHECK(a.events == b.events);
}

TEST_CASE("held values and applied inputs match the event log", "[engine]") {
  const auto sc = scenarios::cycle("full", 3.0);
  const auto tr = simulate(sc.config);
  REQUIRE(tr.samples() == 3001);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    const auto ctrl = event_times(tr.events, i, EventKind::control);
    const auto comm = event_times(tr.events, i, EventKind::comm);
    REQUIRE(!ctrl.empty());
    REQUIRE(!comm.empty());
    CHECK(ctrl.front() == 0.0);
    CHECK(comm.front() == 0.0);
    for (Eigen::Index k = 1; k < tr.y.rows(); ++k) {
      const double t = tr.times[static_cast<std::size_t>(k)];
      const bool ctrl_event = std::find(ctrl.begin(), ctrl.end(), t) != ctrl.end();
      const bool comm_event = std::find(comm.begin(), comm.end(), t) != comm.end();
      if (ctrl_event) {
        CHECK(tr.u(k, c) == tr.u_tilde(k, c));
      } else {
        CHECK(tr.u(k, c) == tr.u(k - 1, c));
      }
      if (comm_event) {
        CHECK(tr.z_held(k, c) == tr.z(k, c));
        CHECK(tr.v_held(k, c) == tr.v(k, c));
      } else {
        CHECK(tr.z_held(k, c) == tr.z_held(k - 1, c));
      }
    }
  }
}

TEST_CASE("continuous mode logs no events", "[engine]") {
  const auto sc = scenarios::cycle("continuous", 1.0);
  const auto tr = simulate(sc.config);
  CHECK(tr.events.empty());
  for (Eigen::Index k = 0; k < tr.u.rows(); ++k) CHECK(tr.u.row(k) == tr.u_tilde.row(k));
}

TEST_CASE("continuous mode converges on a small quadratic network", "[engine]") {
  const auto sc = scenarios::cycle("continuous", 20.0);
  const auto tr = simulate(sc.config);
  CHECK(tail_radius(tr, scenarios::kCycleOptimum, 1.0) < 1e-4);
}

TEST_CASE("generator-only mode has no plants and y = z", "[engine]") {
  const auto sc = scenarios::cycle("generator_only", 1.0);
  const auto tr = simulate(sc.config);
  CHECK(tr.x.empty());
  CHECK(tr.y == tr.z);
  CHECK(tr.u.norm() == 0.0);
  for (const auto& e : tr.events) CHECK(e.kind == EventKind::comm);
}

TEST_CASE("control-only mode broadcasts continuously", "[engine]") {
  const auto sc = scenarios::cycle("control_only", 1.0);
  const auto tr = simulate(sc.config);
  for (const auto& e : tr.events) CHECK(e.kind == EventKind::control);
}

TEST_CASE("sum of v is conserved", "[engine]") {
  for (const char* mode : {"full", "control_only", "generator_only", "continuous"}) {
    INFO(mode);
    const auto tr = simulate(scenarios::cycle(mode, 5.0).config);
    const double v0 = tr.v.row(0).sum();
    for (Eigen::Index k = 0; k < tr.v.rows(); ++k) CHECK(std::abs(tr.v.row(k).sum() - v0) < 1e-8);
  }
}

TEST_CASE("recording stride keeps the final instant", "[engine]") {
  auto sc = scenarios::cycle("full", 1.0);
  sc.config.record_every = 300;
  const auto tr = simulate(sc.config);
  REQUIRE(tr.samples() == 5);
  CHECK(tr.times[1] == Catch::Approx(0.3));
  CHECK(tr.times.back() == 1.0);
}

TEST_CASE("horizon that is not a multiple of the step ends exactly", "[engine]") {
  auto sc = scenarios::cycle("full", 0.0105);
  const auto tr = simulate(sc.config);
  CHECK(tr.samples() == 12);
  CHECK(tr.times.back() == 0.0105);
}

TEST_CASE("divergent runs abort", "[engine]") {
  auto sc = scenarios::cycle("continuous", 50.0, 0.5);
  sc.config.generator.beta = 1e4;
  CHECK_THROWS_AS(simulate(sc.config), SimulationAbort);
}

TEST_CASE("validation collects every problem", "[engine]") {
  auto sc = scenarios::cycle("full", 1.0);
  sc.config.step = -1.0;
  sc.config.record_every = 0;
  try {
    validate(sc.config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("step") != std::string::npos);
    CHECK(msg.find("record_every") != std::string::npos);
  }
}

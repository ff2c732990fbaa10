#include <catch_amalgamated.hpp>

#include <cmath>

#include "etcons/analysis.hpp"
#include "support/scenarios.hpp"

using namespace etcons;
using Catch::Matchers::WithinAbs;

namespace {

Trace constant_trace(double value, std::size_t agents, std::size_t samples, double dt) {
  Trace tr;
  const auto n = static_cast<Eigen::Index>(agents);
  const auto m = static_cast<Eigen::Index>(samples);
  tr.y = Eigen::MatrixXd::Constant(m, n, value);
  tr.z = tr.y;
  tr.v = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t k = 0; k < samples; ++k) tr.times.push_back(static_cast<double>(k) * dt);
  return tr;
}

}  // namespace

TEST_CASE("minimum inter-event time", "[analysis]") {
  const EventLog log{{0, EventKind::control, 0.0}, {1, EventKind::control, 0.05}, {0, EventKind::comm, 0.02},
                     {0, EventKind::control, 0.1}, {0, EventKind::control, 0.35}};
  CHECK_THAT(*min_inter_event(log, 0, EventKind::control), WithinAbs(0.1, 1e-15));
  CHECK_FALSE(min_inter_event(log, 1, EventKind::control));
  CHECK_FALSE(min_inter_event(log, 0, EventKind::comm));
  CHECK_THAT(*min_inter_event(log, 0, EventKind::control, 0.05), WithinAbs(0.25, 1e-15));
  CHECK(event_count(log, 0, EventKind::control) == 3);
}

TEST_CASE("windowed event counts and rate growth", "[analysis]") {
  EventLog log;
  for (int k = 0; k < 10; ++k) log.push_back({0, EventKind::comm, 0.5 * k});
  const auto counts = windowed_event_counts(log, 0, EventKind::comm, 5.0, 1.0, 1.0);
  CHECK(counts == std::vector<std::size_t>{2, 2, 2, 2, 2});
  CHECK(rate_growth(counts).non_accelerating);
  CHECK_FALSE(rate_growth({1, 1, 1, 5}).non_accelerating);
  CHECK(median({3.0, 1.0, 2.0, 10.0}) == 2.5);
}

TEST_CASE("tail radius", "[analysis]") {
  CHECK(tail_radius(constant_trace(1.5, 3, 11, 0.1), 1.5, 0.5) == 0.0);
  CHECK_THAT(tail_radius(constant_trace(1.8, 3, 11, 0.1), 1.5, 0.5), WithinAbs(0.3, 1e-15));

  auto tr = constant_trace(0.0, 2, 11, 0.1);
  tr.y(3, 1) = 2.0;  // t = 0.3
  CHECK(tail_radius(tr, 0.0, 0.5) == 0.0);
  CHECK(tail_radius(tr, 0.0, 0.7) == 2.0);
  CHECK(tail_radius(tr, 0.0, 0.4) <= tail_radius(tr, 0.0, 1.0));
}

TEST_CASE("exponential fits", "[analysis]") {
  std::vector<double> t, e, c;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(0.05 * k);
    e.push_back(3.0 * std::exp(-2.0 * t.back()));
    c.push_back(0.7);
  }
  const auto f = fit_exponential_rate(t, e, 0.0, 5.0);
  CHECK_THAT(f.rate, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(f.intercept, WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(f.r_squared, WithinAbs(1.0, 1e-12));
  CHECK(f.samples == 101);

  const auto g = fit_exponential_rate(t, c, 0.0, 5.0);
  CHECK_THAT(g.rate, WithinAbs(0.0, 1e-12));

  std::vector<double> zeros(t.size(), 0.0);
  CHECK_THROWS_AS(fit_exponential_rate(t, zeros, 0.0, 5.0), NumericError);
}

TEST_CASE("Lyapunov diagnostic W0", "[analysis]") {
  const auto sc = scenarios::cycle("continuous", 0.0);
  const auto& cfg = sc.config;
  const auto lap = laplacian(cfg.graph);
  const double alpha = cfg.generator.alpha;
  const auto eq = generator_equilibrium(lap, cfg.costs, alpha, scenarios::kCycleOptimum);
  const auto basis = complement_basis(3);

  CHECK(lyapunov_W0(eq.z_star, eq.v_star, alpha, basis, eq).W0 < 1e-20);

  // A consensus offset only moves z_hat1.
  const double delta = 0.4;
  const Eigen::VectorXd z = eq.z_star.array() + delta;
  const auto f = lyapunov_W0(z, eq.v_star, alpha, basis, eq);
  CHECK(f.z_hat2.norm() < 1e-12);
  CHECK(f.v_hat2.norm() < 1e-12);
  CHECK_THAT(f.W0, WithinAbs(0.5 * 3.0 * delta * delta, 1e-12));

  // W0 does not depend on the choice of complement basis.
  ComplementBasis other = basis;
  const double th = 0.7;
  Eigen::Matrix2d rot;
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  other.m2 = -basis.m2 * rot;
  Eigen::VectorXd zz(3), vv(3);
  zz << 1.0, -2.0, 0.3;
  vv << 0.4, 0.1, -0.9;
  CHECK_THAT(lyapunov_W0(zz, vv, alpha, other, eq).W0, WithinAbs(lyapunov_W0(zz, vv, alpha, basis, eq).W0, 1e-10));
  CHECK(lyapunov_W0(zz, vv, alpha, basis, eq).W0 > 0.0);
}

TEST_CASE("run summary", "[analysis]") {
  const auto sc = scenarios::cycle("full", 2.0);
  const auto tr = simulate(sc.config);
  const auto s = summarize(tr, scenarios::kCycleOptimum, 0.5);
  REQUIRE(s.agents.size() == 3);
  CHECK(s.sum_v_drift < 1e-8);
  CHECK(s.initial_error == max_abs_error(tr.y, scenarios::kCycleOptimum).front());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.agents[i].control_events == event_count(tr.events, i, EventKind::control));
    if (s.agents[i].min_control_interval) CHECK(*s.agents[i].min_control_interval >= tr.step - 1e-12);
  }
}

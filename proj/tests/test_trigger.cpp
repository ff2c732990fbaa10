#include <catch_amalgamated.hpp>

#include <cmath>

#include "etcons/trigger.hpp"

using namespace etcons;
using Catch::Matchers::WithinAbs;

TEST_CASE("threshold", "[trigger]") {
  const TriggerRule r{0.0, 5.0, 0.5, EventKind::control};
  CHECK(threshold(r, 0.0) == 5.0);
  CHECK_THAT(threshold(r, 2.0), WithinAbs(1.83940, 1e-5));
  CHECK(threshold({1.0, 0.0, 3.0, EventKind::comm}, 17.0) == 1.0);
}

TEST_CASE("control events", "[trigger]") {
  const TriggerRule r{0.0, 5.0, 0.5, EventKind::control};
  CHECK_FALSE(control_event(0.0, r, 100.0));
  CHECK(control_event(6.0, r, 0.0));
  CHECK(control_event(-6.0, r, 0.0));
  CHECK(control_event(1.84, r, 2.0));
  CHECK_FALSE(control_event(1.83, r, 2.0));
}

TEST_CASE("communication events", "[trigger]") {
  const TriggerRule r{0.0, 5.0, 0.1, EventKind::comm};
  CHECK_FALSE(comm_event(0.0, 0.0, r, 1000.0));
  CHECK(comm_event(3.0, 4.0, r, 0.0));
  CHECK_FALSE(comm_event(0.1, 0.0, r, 0.0));
  CHECK(comm_event(0.1, 0.0, r, 40.0));  // 5 e^{-4} < 0.1
}

TEST_CASE("rule validation", "[trigger]") {
  CHECK_NOTHROW(TriggerRule{0.0, 5.0, 0.5, EventKind::control}.validate());
  CHECK_THROWS_AS((TriggerRule{0.0, 0.0, 0.5, EventKind::control}.validate()), ConfigError);
  CHECK_THROWS_AS((TriggerRule{-1.0, 5.0, 0.5, EventKind::control}.validate()), ConfigError);
  CHECK_THROWS_AS((TriggerRule{0.0, 5.0, 0.0, EventKind::comm}.validate()), ConfigError);
  CHECK(event_kind_from_string("comm") == EventKind::comm);
  CHECK_THROWS_AS(event_kind_from_string("broadcast"), ConfigError);
}

TEST_CASE("parameter conditions for the reference settings", "[trigger]") {
  const GeneratorParams p{1.0, 10.0, 0.5 * std::min(1.0, 0.719223594)};
  const TriggerRule control{0.0, 5.0, 0.5, EventKind::control};
  const TriggerRule comm{0.0, 5.0, 0.1, EventKind::comm};
  const std::vector<double> lambda_p{0.70711356, 3.02520198, 5.50144137, 3.34360950};
  const auto r = check_trigger_conditions(p, control, comm, lambda_p);
  CHECK(r.holds("control_c0_dominates"));
  CHECK_FALSE(r.holds("control_gamma_below_comm_gamma"));
  CHECK_FALSE(r.holds("control_gamma_below_lyapunov"));
  CHECK(r.holds("control_gamma_below_one"));
  CHECK_FALSE(r.all_hold());
  CHECK(r.find("alpha_bound") == nullptr);
}

TEST_CASE("parameter condition examples", "[trigger]") {
  const GeneratorParams p{1.0, 10.0, 1.0};
  const auto r = check_trigger_conditions(p, {0.1, 1.0, 0.05, EventKind::control}, {0.2, 1.0, 0.4, EventKind::comm}, {});
  CHECK(r.holds("comm_gamma_range"));
  CHECK_FALSE(r.holds("control_c0_dominates"));

  const auto bounds = ParameterBounds{6.0, 252.0};
  const auto rb = check_trigger_conditions({6.0, 100.0, 0.5}, {0.0, 1.0, 0.05, EventKind::control},
                                           {0.0, 1.0, 0.1, EventKind::comm}, {1.0}, bounds);
  CHECK(rb.holds("alpha_bound"));
  CHECK_FALSE(rb.holds("beta_bound"));

  const auto c = check_control_only_conditions({1.0, 10.0, 0.2}, {0.0, 5.0, 0.1, EventKind::control}, {1.0});
  CHECK(c.all_hold());
  const auto c2 = check_control_only_conditions({1.0, 10.0, 0.05}, {0.0, 5.0, 0.1, EventKind::control}, {1.0});
  CHECK_FALSE(c2.holds("control_gamma_range"));
}

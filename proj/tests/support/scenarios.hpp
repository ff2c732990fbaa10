// Small scenario builders shared by the unit and acceptance tests.
#ifndef ETCONS_TESTS_SCENARIOS_HPP
#define ETCONS_TESTS_SCENARIOS_HPP

#include <string>

#include "etcons/config.hpp"

namespace scenarios {

inline etcons::Scenario four_agent() { return etcons::load_config("four_agent"); }

// Three agents on the unit directed cycle 1->2->3->1 with quadratic costs
// (s - b_i)^2 / 2, b = (1, 2, 4). h_lo = h_hi = 1, lambda2 = lambdaN = 1.5,
// so eta = 0.5 gives alpha_min = 4, beta_min = 112.
inline std::string cycle_json(const std::string& mode, double t_final, double step = 1e-3) {
  return R"({
    "name": "cycle3",
    "graph": {"n": 3, "edges": [[1, 2], [2, 3], [3, 1]]},
    "agents": [
      {"A": [[-1.0]], "B": [1.0], "C": [1.0], "K1": [-1.0]},
      {"A": [[-1.0]], "B": [1.0], "C": [1.0], "K1": [-1.0]},
      {"A": [[-1.0]], "B": [1.0], "C": [1.0], "K1": [-1.0]}
    ],
    "costs": [
      {"name": "quadratic", "a": 1.0, "b": 1.0},
      {"name": "quadratic", "a": 1.0, "b": 2.0},
      {"name": "quadratic", "a": 1.0, "b": 4.0}
    ],
    "generator": {"alpha": 4.0, "beta": 112.0, "eta": 0.5},
    "trigger": {"control": {"c0": 0.0, "c1": 1.0, "gamma": 0.05}, "comm": {"c0": 0.0, "c1": 1.0, "gamma": 0.1}},
    "simulation": {"mode": ")" + mode + R"(", "t_final": )" + std::to_string(t_final) + R"(, "step": )" +
         std::to_string(step) + R"(, "init": {"seed": 3, "range": [-5.0, 5.0]}}
  })";
}

inline constexpr double kCycleOptimum = 7.0 / 3.0;

inline etcons::Scenario cycle(const std::string& mode, double t_final, double step = 1e-3) {
  return etcons::parse_scenario_text(cycle_json(mode, t_final, step), "cycle3");
}

}  // namespace scenarios

#endif  // ETCONS_TESTS_SCENARIOS_HPP

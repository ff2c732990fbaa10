#include <catch_amalgamated.hpp>

#include <cmath>

#include "etcons/costs.hpp"
#include "etcons/generator.hpp"
#include "etcons/graph.hpp"

using namespace etcons;
using Catch::Matchers::WithinAbs;

namespace {

CostEnsemble four_costs() {
  return CostEnsemble({builtin_cost("example_f1"), builtin_cost("example_f2"), builtin_cost("example_f3"),
                       builtin_cost("example_f4")});
}

WeightedDigraph four_agent_graph() {
  return WeightedDigraph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {2, 3, 1.0}, {3, 2, 1.0}});
}

}  // namespace

TEST_CASE("recommended generator parameters", "[generator]") {
  const auto a = recommended_parameters(1.0, 1.0, 1.0, 2.0, 0.5);
  CHECK(a.alpha_min == 6.0);
  CHECK(a.beta_min == 1008.0);

  const auto b = recommended_parameters(1.0, 1.0, 1.0, 1.0, 0.5);
  CHECK(b.alpha_min == 6.0);
  CHECK(b.beta_min == 252.0);

  CHECK(recommended_parameters(1.0, 1.0, 1.0, 1.0, 1e-9).alpha_min == 6.0);
  // A large eta makes the rate term dominate.
  CHECK(recommended_parameters(1.0, 1.0, 1.0, 1.0, 10.0).alpha_min == 20.0);

  CHECK_THROWS_AS(recommended_parameters(0.0, 1.0, 1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(recommended_parameters(1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK(implied_eta(2.0, 1.0, 0.5) == 0.5);
}

TEST_CASE("single agent reduces to gradient flow", "[generator]") {
  const CostEnsemble one({builtin_cost("quadratic", {{"a", 2.0}, {"b", 1.0}})});
  const WeightedDigraph g(1, {});
  const auto s = GeneratorState::fresh(Eigen::VectorXd::Constant(1, 3.0), Eigen::VectorXd::Constant(1, -4.0));
  const auto r = generator_field(s, {1.5, 10.0, 0.5}, g, one, Diffusion::continuous);
  CHECK_THAT(r.dz(0), WithinAbs(-1.5 * 2.0 * (3.0 - 1.0), 1e-15));
  CHECK(r.dv(0) == 0.0);
}

TEST_CASE("field on a two-agent graph by hand", "[generator]") {
  const CostEnsemble q({builtin_cost("quadratic", {{"a", 1.0}, {"b", 0.0}}),
                        builtin_cost("quadratic", {{"a", 1.0}, {"b", 0.0}})});
  const WeightedDigraph g(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  Eigen::VectorXd z(2), v(2);
  z << 1.0, 2.0;
  v << 0.5, -0.5;
  const GeneratorParams p{2.0, 3.0, 0.5};
  const auto r = generator_field(GeneratorState::fresh(z, v), p, g, q, Diffusion::continuous);
  // (L z) = [-1, 1], (L v) = [1, -1]
  CHECK_THAT(r.dz(0), WithinAbs(-2.0 * 1.0 - 3.0 * -1.0 - 1.0, 1e-15));
  CHECK_THAT(r.dz(1), WithinAbs(-2.0 * 2.0 - 3.0 * 1.0 + 1.0, 1e-15));
  CHECK_THAT(r.dv(0), WithinAbs(6.0 * -1.0, 1e-15));
  CHECK_THAT(r.dv(1), WithinAbs(6.0 * 1.0, 1e-15));
}

TEST_CASE("held diffusion uses broadcast values, gradient uses true z", "[generator]") {
  const CostEnsemble q({builtin_cost("quadratic", {{"a", 1.0}, {"b", 0.0}}),
                        builtin_cost("quadratic", {{"a", 1.0}, {"b", 0.0}})});
  const WeightedDigraph g(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  GeneratorState s;
  s.z = Eigen::Vector2d(1.0, 2.0);
  s.v = Eigen::Vector2d(0.0, 0.0);
  s.z_held = Eigen::Vector2d(0.0, 0.0);
  s.v_held = Eigen::Vector2d(0.0, 0.0);
  const auto r = generator_field(s, {1.0, 1.0, 0.5}, g, q, Diffusion::held);
  CHECK(r.dz(0) == -1.0);
  CHECK(r.dz(1) == -2.0);
  CHECK(r.dv.norm() == 0.0);

  // With held == true values both modes agree exactly.
  const auto fresh = GeneratorState::fresh(s.z, s.v);
  const auto a = generator_field(fresh, {1.0, 1.0, 0.5}, g, q, Diffusion::held);
  const auto b = generator_field(fresh, {1.0, 1.0, 0.5}, g, q, Diffusion::continuous);
  CHECK(a.dz == b.dz);
  CHECK(a.dv == b.dv);
}

TEST_CASE("equilibrium is a zero of the field", "[generator]") {
  const auto costs = four_costs();
  const auto g = four_agent_graph();
  const auto lap = laplacian(g);
  const double y = solve_optimum(costs, 1e-13);
  for (double alpha : {1.0, 2.5}) {
    const auto eq = generator_equilibrium(lap, costs, alpha, y);
    CHECK(std::abs(eq.v_star.sum()) < 1e-10);
    const auto r = generator_field(GeneratorState::fresh(eq.z_star, eq.v_star), {alpha, 10.0, 0.5}, lap, costs,
                                   Diffusion::continuous);
    CHECK(r.dz.norm() < 1e-9);
    CHECK(r.dv.norm() < 1e-9);
  }
}

TEST_CASE("sum of v rates vanishes on a balanced graph", "[generator]") {
  const auto costs = four_costs();
  const auto g = four_agent_graph();
  Eigen::VectorXd z(4), v(4), zh(4), vh(4);
  z << 1.0, -2.0, 0.5, 3.0;
  v << 0.1, 0.2, -0.3, 4.0;
  zh << 0.9, -2.1, 0.6, 2.0;
  vh << 0.0, 0.0, 0.0, 0.0;
  const auto r = generator_field(GeneratorState{z, v, zh, vh}, {1.0, 10.0, 0.5}, g, costs, Diffusion::held);
  CHECK(std::abs(r.dv.sum()) < 1e-12);
}

TEST_CASE("field rejects mismatched sizes", "[generator]") {
  const auto costs = four_costs();
  const WeightedDigraph g(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  const auto s = GeneratorState::fresh(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2));
  CHECK_THROWS_AS(generator_field(s, {}, g, costs, Diffusion::continuous), std::invalid_argument);
}

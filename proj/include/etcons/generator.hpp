#ifndef ETCONS_GENERATOR_HPP
#define ETCONS_GENERATOR_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "etcons/costs.hpp"
#include "etcons/graph.hpp"

namespace etcons {

struct GeneratorParams {
  double alpha = 1.0;
  double beta = 1.0;
  double eta = 0.5;  // target exponential rate

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct ParameterBounds {
  double alpha_min = 1.0;
  double beta_min = 1.0;
};

/// Lower bounds on (alpha, beta) that guarantee exponential convergence of the
/// continuous-communication generator at rate eta:
///   alpha >= max{1, 2 eta / min{h_lo, lambda2}, 6 h_hi^2 / (h_lo lambda2)}
///   beta  >= max{1, 7 alpha^2 lambdaN^2 / lambda2^2}
/// The beta bound is evaluated at alpha = alpha_min.
inline ParameterBounds recommended_parameters(double h_lo, double h_hi, double lambda2, double lambdaN, double eta) {
  if (!(h_lo > 0.0 && h_hi > 0.0 && lambda2 > 0.0 && lambdaN > 0.0 && eta > 0.0))
    throw std::invalid_argument("recommended_parameters: all inputs must be strictly positive");
  ParameterBounds b;
  b.alpha_min = std::max({1.0, 2.0 * eta / std::min(h_lo, lambda2), 6.0 * h_hi * h_hi / (h_lo * lambda2)});
  b.beta_min = std::max(1.0, 7.0 * b.alpha_min * b.alpha_min * lambdaN * lambdaN / (lambda2 * lambda2));
  return b;
}

/// The largest eta for which a given alpha still meets the first alpha bound
/// term 2 eta / min{h_lo, lambda2} <= alpha.
inline double implied_eta(double alpha, double h_lo, double lambda2) { return 0.5 * alpha * std::min(h_lo, lambda2); }

/// z_i, v_i and the values each agent last broadcast.
struct GeneratorState {
  Eigen::VectorXd z;
  Eigen::VectorXd v;
  Eigen::VectorXd z_held;
  Eigen::VectorXd v_held;

  static GeneratorState fresh(const Eigen::VectorXd& z0, const Eigen::VectorXd& v0) { return {z0, v0, z0, v0}; }
};

enum class Diffusion {
  continuous,  // neighbours' current values
  held,        // last broadcast values
};

struct GeneratorRates {
  Eigen::VectorXd dz;
  Eigen::VectorXd dv;
};

/// z_i' = -alpha grad f_i(z_i) - beta sum_j a_ij (zs_i - zs_j) - sum_j a_ij (vs_i - vs_j)
/// v_i' = alpha beta sum_j a_ij (zs_i - zs_j)
/// where (zs, vs) are the true values or the held ones. The gradient always
/// sees the true local z_i.
inline GeneratorRates generator_field(const Eigen::VectorXd& z, const Eigen::VectorXd& z_diff,
                                      const Eigen::VectorXd& v_diff, const GeneratorParams& params,
                                      const Eigen::MatrixXd& lap, const CostEnsemble& costs) {
  const auto n = z.size();
  Eigen::VectorXd grad(n);
  for (Eigen::Index i = 0; i < n; ++i) grad(i) = costs[static_cast<std::size_t>(i)].gradient(z(i));
  const Eigen::VectorXd lz = lap * z_diff;
  const Eigen::VectorXd lv = lap * v_diff;
  return {-params.alpha * grad - params.beta * lz - lv, params.alpha * params.beta * lz};
}

inline GeneratorRates generator_field(const GeneratorState& s, const GeneratorParams& params, const Eigen::MatrixXd& lap,
                                      const CostEnsemble& costs, Diffusion mode) {
  if (s.z.size() != lap.rows() || s.v.size() != lap.rows() || static_cast<std::size_t>(lap.rows()) != costs.size())
    throw std::invalid_argument("generator_field: state, graph and costs disagree on N");
  if (mode == Diffusion::continuous) return generator_field(s.z, s.z, s.v, params, lap, costs);
  return generator_field(s.z, s.z_held, s.v_held, params, lap, costs);
}

inline GeneratorRates generator_field(const GeneratorState& s, const GeneratorParams& params, const WeightedDigraph& g,
                                      const CostEnsemble& costs, Diffusion mode) {
  return generator_field(s, params, laplacian(g), costs, mode);
}

struct GeneratorEquilibrium {
  Eigen::VectorXd z_star;  // 1 y*
  Eigen::VectorXd v_star;  // minimal-norm solution of L v = -alpha grad f(1 y*)
};

inline GeneratorEquilibrium generator_equilibrium(const Eigen::MatrixXd& lap, const CostEnsemble& costs, double alpha,
                                                  double y_star) {
  const auto n = lap.rows();
  GeneratorEquilibrium eq;
  eq.z_star = Eigen::VectorXd::Constant(n, y_star);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = -alpha * costs[static_cast<std::size_t>(i)].gradient(y_star);
  eq.v_star = lap.completeOrthogonalDecomposition().solve(rhs);
  return eq;
}

}  // namespace etcons

#endif  // ETCONS_GENERATOR_HPP

#ifndef ETCONS_PLANT_HPP
#define ETCONS_PLANT_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "etcons/error.hpp"

namespace etcons {

inline constexpr double kRankTol = 1e-8;

/// SISO agent x' = A x + B u, y = C x.
struct LinearPlant {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;

  Eigen::Index dim() const { return A.rows(); }

  void validate(const std::string& who = "plant") const {
    if (A.rows() == 0 || A.rows() != A.cols()) throw ConfigError(who + ": A must be square and non-empty");
    if (B.size() != A.rows()) throw ConfigError(who + ": B must have " + std::to_string(A.rows()) + " entries");
    if (C.size() != A.rows()) throw ConfigError(who + ": C must have " + std::to_string(A.rows()) + " entries");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite()) throw ConfigError(who + ": non-finite matrix entry");
  }
};

/// Numerical rank with singular values below `rel_tol * sigma_max` treated as zero.
inline Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double rel_tol = kRankTol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<Eigen::Index>((s.array() > rel_tol * s(0)).count());
}

inline Eigen::MatrixXd controllability_matrix(const LinearPlant& p) {
  const auto n = p.dim();
  Eigen::MatrixXd c(n, n);
  Eigen::VectorXd col = p.B;
  for (Eigen::Index k = 0; k < n; ++k) {
    c.col(k) = col;
    col = p.A * col;
  }
  return c;
}

inline Eigen::MatrixXd observability_matrix(const LinearPlant& p) {
  const auto n = p.dim();
  Eigen::MatrixXd o(n, n);
  Eigen::RowVectorXd row = p.C;
  for (Eigen::Index k = 0; k < n; ++k) {
    o.row(k) = row;
    row = row * p.A;
  }
  return o;
}

struct MinimalityReport {
  bool controllable = false;
  bool observable = false;
  bool minimal() const { return controllable && observable; }
};

inline MinimalityReport check_minimality(const LinearPlant& p) {
  return {numerical_rank(controllability_matrix(p)) == p.dim(), numerical_rank(observability_matrix(p)) == p.dim()};
}

/// [[A, B], [C, 0]]
inline Eigen::MatrixXd rosenbrock_at_origin(const LinearPlant& p) {
  const auto n = p.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = p.A;
  m.topRightCorner(n, 1) = p.B;
  m.bottomLeftCorner(1, n) = p.C;
  return m;
}

/// True iff the plant has no transmission zero at s = 0.
inline bool check_transmission_zero_origin(const LinearPlant& p) {
  return numerical_rank(rosenbrock_at_origin(p)) == p.dim() + 1;
}

struct RegulatorSolution {
  Eigen::VectorXd X;
  double U = 0.0;
};

/// Solves A X + B U = 0, C X = 1.
inline RegulatorSolution solve_regulator(const LinearPlant& p) {
  if (!check_transmission_zero_origin(p))
    throw AssumptionError("regulator equations are singular: the plant has a transmission zero at the origin");
  const auto n = p.dim();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXd sol = rosenbrock_at_origin(p).fullPivLu().solve(rhs);
  return {sol.head(n), sol(n)};
}

inline Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
  return es.eigenvalues();
}

inline double spectral_abscissa(const Eigen::MatrixXd& m) { return eigenvalues(m).real().maxCoeff(); }

inline bool is_hurwitz(const Eigen::MatrixXd& m) { return spectral_abscissa(m) < 0.0; }

inline Eigen::MatrixXd closed_loop(const LinearPlant& p, const Eigen::RowVectorXd& k1) { return p.A + p.B * k1; }

/// Monic characteristic polynomial coefficients [1, c_1, ..., c_n] of `m`
/// via Faddeev-LeVerrier (exact enough for the small n used here).
inline Eigen::VectorXd characteristic_polynomial(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  Eigen::VectorXd c(n + 1);
  c(0) = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c(k - 1) * id;
    c(k) = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

/// Monic polynomial with the given roots; complex roots must come in
/// conjugate pairs.
inline Eigen::VectorXd polynomial_from_roots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= r * c[k];
    }
    c = std::move(next);
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k].imag()) > 1e-9 * (1.0 + std::abs(c[k].real())))
      throw ConfigError("pole placement: complex poles must appear in conjugate pairs");
    out(static_cast<Eigen::Index>(k)) = c[k].real();
  }
  return out;
}

/// Ackermann's formula for u = K1 x placing the spectrum of A + B K1.
inline Eigen::RowVectorXd place_poles(const LinearPlant& p, const std::vector<std::complex<double>>& poles) {
  const auto n = p.dim();
  if (static_cast<Eigen::Index>(poles.size()) != n)
    throw ConfigError("pole placement: need exactly " + std::to_string(n) + " poles");
  for (const auto& s : poles)
    if (!(s.real() < 0.0)) throw ConfigError("pole placement: requested pole is not in the open left half plane");
  const Eigen::MatrixXd ctrb = controllability_matrix(p);
  if (numerical_rank(ctrb) < n) throw AssumptionError("pole placement: (A, B) has an uncontrollable mode");
  const Eigen::VectorXd coeff = polynomial_from_roots(poles);
  // phi(A) by Horner.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) phi = phi * p.A + coeff(k) * Eigen::MatrixXd::Identity(n, n);
  Eigen::RowVectorXd last = Eigen::RowVectorXd::Zero(n);
  last(n - 1) = 1.0;
  const Eigen::RowVectorXd row = ctrb.transpose().fullPivLu().solve(last.transpose()).transpose();
  const Eigen::RowVectorXd k1 = -row * phi;

  const Eigen::VectorXd got = characteristic_polynomial(closed_loop(p, k1));
  if (((got - coeff).array().abs() > 1e-6 * (1.0 + coeff.array().abs())).any())
    throw NumericError("pole placement: closed-loop characteristic polynomial misses the target");
  return k1;
}

struct UserGain {
  Eigen::RowVectorXd K1;
};

struct PolePlacement {
  std::vector<std::complex<double>> poles;
};

using GainSpec = std::variant<UserGain, PolePlacement>;

inline Eigen::RowVectorXd synthesize_gain(const LinearPlant& p, const GainSpec& spec) {
  if (const auto* user = std::get_if<UserGain>(&spec)) {
    if (user->K1.size() != p.dim()) throw ConfigError("K1 must have " + std::to_string(p.dim()) + " entries");
    const double abscissa = spectral_abscissa(closed_loop(p, user->K1));
    if (!(abscissa < 0.0))
      throw ConfigError("K1 does not make A + B K1 Hurwitz (max real part " + std::to_string(abscissa) + ")");
    return user->K1;
  }
  return place_poles(p, std::get<PolePlacement>(spec).poles);
}

inline double feedforward_gain(const Eigen::RowVectorXd& k1, const Eigen::VectorXd& x, double u) {
  return u - k1.dot(x);
}

struct LyapunovSolution {
  Eigen::MatrixXd P;
  double lambda_P = 0.0;
};

/// P > 0 with A_hat^T P + P A_hat = -2 I, solved as the Kronecker-stacked
/// linear system on vec(P).
inline LyapunovSolution solve_lyapunov(const Eigen::MatrixXd& a_hat) {
  if (a_hat.rows() != a_hat.cols()) throw std::invalid_argument("solve_lyapunov: matrix must be square");
  if (!is_hurwitz(a_hat)) throw AssumptionError("solve_lyapunov: closed-loop matrix is not Hurwitz");
  const auto n = a_hat.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd at = a_hat.transpose();
  const Eigen::MatrixXd big = Eigen::kroneckerProduct(id, at) + Eigen::kroneckerProduct(at, id);
  const Eigen::MatrixXd rhs_m = -2.0 * id;
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rhs_m.data(), n * n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(big);
  if (!lu.isInvertible()) throw NumericError("solve_lyapunov: stacked system is singular");
  const Eigen::VectorXd vec_p = lu.solve(rhs);
  Eigen::MatrixXd p = Eigen::Map<const Eigen::MatrixXd>(vec_p.data(), n, n);
  p = 0.5 * (p + p.transpose()).eval();
  if (p.llt().info() != Eigen::Success) throw NumericError("solve_lyapunov: solution is not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p, Eigen::EigenvaluesOnly);
  return {p, es.eigenvalues().maxCoeff()};
}

/// Everything the tracking layer of one agent needs.
struct SynthesizedController {
  Eigen::RowVectorXd K1;
  double K2 = 0.0;
  Eigen::VectorXd X;
  double U = 0.0;
  Eigen::MatrixXd P;
  double lambda_P = 0.0;

  Eigen::MatrixXd a_hat(const LinearPlant& p) const { return closed_loop(p, K1); }

  /// u~ = K1 x + K2 z
  double command(const Eigen::VectorXd& x, double z) const { return K1.dot(x) + K2 * z; }
};

inline SynthesizedController synthesize(const LinearPlant& p, const GainSpec& spec) {
  p.validate();
  const auto reg = solve_regulator(p);
  SynthesizedController c;
  c.K1 = synthesize_gain(p, spec);
  c.X = reg.X;
  c.U = reg.U;
  c.K2 = feedforward_gain(c.K1, c.X, c.U);
  auto lyap = solve_lyapunov(c.a_hat(p));
  c.P = std::move(lyap.P);
  c.lambda_P = lyap.lambda_P;
  return c;
}

}  // namespace etcons

#endif  // ETCONS_PLANT_HPP

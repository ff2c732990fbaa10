#ifndef ETCONS_GRAPH_HPP
#define ETCONS_GRAPH_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etcons/error.hpp"

namespace etcons {

inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kBalanceTol = 1e-12;
inline constexpr double kEigenNonnegTol = 1e-10;

/// Directed edge `from -> to` with weight a_{to,from} > 0.
///
/// An edge from node j to node i means agent i reads agent j's state, so it
/// contributes a_ij to row i of the adjacency matrix. Indices are 0-based;
/// scenario files use 1-based indices and convert at load time.
struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class WeightedDigraph {
 public:
  WeightedDigraph() = default;

  WeightedDigraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw ConfigError("graph: node count must be positive");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
      const std::string tag = "graph: edge " + std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1);
      if (e.from >= n_ || e.to >= n_) throw ConfigError(tag + " references a node outside 1.." + std::to_string(n_));
      if (e.from == e.to) throw ConfigError(tag + " is a self-loop");
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw ConfigError(tag + " must have a finite positive weight");
      if (!seen.emplace(e.from, e.to).second) throw ConfigError(tag + " appears twice");
    }
  }

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Weighted adjacency matrix with entry (i, j) = a_ij.
  Eigen::MatrixXd adjacency() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : edges_) a(e.to, e.from) = e.weight;
    return a;
  }

  /// In-neighbours of node i: the nodes whose state agent i uses.
  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges_)
      if (e.to == i) out.push_back(e.from);
    return out;
  }

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// L = D - A where row i carries the in-weights a_ij of node i.
inline Eigen::MatrixXd laplacian(const WeightedDigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.to);
    const auto j = static_cast<Eigen::Index>(e.from);
    l(i, j) -= e.weight;
    l(i, i) += e.weight;
  }
  return l;
}

struct ConnectivityReport {
  bool strongly_connected = false;
  bool weight_balanced = false;
};

namespace detail {

inline std::size_t count_reachable(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace detail

/// Strong connectivity (forward and reverse reachability from node 0) and
/// weight balance (in-weight equals out-weight at every node).
inline ConnectivityReport check_connectivity(const WeightedDigraph& g, double balance_tol = kBalanceTol) {
  const auto n = g.size();
  std::vector<std::vector<std::size_t>> fwd(n), rev(n);
  std::vector<double> in_w(n, 0.0), out_w(n, 0.0);
  for (const auto& e : g.edges()) {
    fwd[e.from].push_back(e.to);
    rev[e.to].push_back(e.from);
    out_w[e.from] += e.weight;
    in_w[e.to] += e.weight;
  }
  ConnectivityReport r;
  r.strongly_connected = detail::count_reachable(fwd) == n && detail::count_reachable(rev) == n;
  r.weight_balanced = true;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(in_w[i] - out_w[i]) > balance_tol) r.weight_balanced = false;
  return r;
}

struct SpectralReport {
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd sym_eigs;  // ascending
  double lambda2 = 0.0;
  double lambdaN = 0.0;
  bool strongly_connected = false;
  bool weight_balanced = false;
};

/// Eigenvalues of Sym(L) = (L + L^T)/2, ascending. For a single node both
/// lambda2 and lambdaN are reported as the lone eigenvalue.
inline SpectralReport sym_spectrum(const Eigen::MatrixXd& l) {
  if (l.rows() != l.cols() || l.rows() == 0) throw std::invalid_argument("sym_spectrum: matrix must be square and non-empty");
  const Eigen::MatrixXd sym = 0.5 * (l + l.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("sym_spectrum: eigen-decomposition of Sym(L) failed");
  SpectralReport r;
  r.laplacian = l;
  r.sym_eigs = es.eigenvalues();
  const auto n = r.sym_eigs.size();
  r.lambda2 = n >= 2 ? r.sym_eigs(1) : r.sym_eigs(0);
  r.lambdaN = r.sym_eigs(n - 1);
  return r;
}

inline SpectralReport spectral_report(const WeightedDigraph& g) {
  auto r = sym_spectrum(laplacian(g));
  const auto c = check_connectivity(g);
  r.strongly_connected = c.strongly_connected;
  r.weight_balanced = c.weight_balanced;
  return r;
}

/// M1 = 1/sqrt(n) and an orthonormal basis M2 of its complement.
struct ComplementBasis {
  Eigen::VectorXd m1;
  Eigen::MatrixXd m2;  // n x (n-1)
};

inline ComplementBasis complement_basis(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complement_basis: n must be at least 2");
  const auto size = static_cast<Eigen::Index>(n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(size);
  // The Householder reflector mapping 1_n onto e_1 is symmetric and orthogonal;
  // its trailing n-1 columns span the complement of 1_n.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(size, size);
  ComplementBasis b;
  b.m1 = ones / std::sqrt(static_cast<double>(n));
  b.m2 = q.rightCols(size - 1);
  return b;
}

}  // namespace etcons

#endif  // ETCONS_GRAPH_HPP

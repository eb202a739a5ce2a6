#include "permconc/min_norm_point.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permconc {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

MinNormResult min_norm_point(const std::function<OracleAnswer(const std::vector<double>&)>& oracle,
                             const OracleAnswer& start, const MinNormOptions& options) {
  const std::size_t d = start.vertex.size();
  std::vector<std::vector<double>> corral{start.vertex};
  std::vector<std::size_t> handles{start.handle};
  std::vector<double> lambda{1.0};
  Eigen::MatrixXd gram(1, 1);
  gram(0, 0) = dot(start.vertex, start.vertex) + 1.0;

  MinNormResult out;
  std::vector<double> x(d);
  double best_lower = -std::numeric_limits<double>::infinity();
  auto recompute_x = [&] {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      for (std::size_t q = 0; q < d; ++q) x[q] += lambda[i] * corral[i][q];
  };

  for (;; ++out.major_iterations) {
    recompute_x();
    const double value = dot(x, x);
    const OracleAnswer ans = oracle(x);
    if (ans.vertex.size() != d) throw std::invalid_argument("min_norm_point: oracle returned a vertex of wrong dimension");
    best_lower = std::max(best_lower, 2.0 * ans.lower_bound - value);
    out.value = value;
    out.gap = std::max(0.0, value - best_lower);
    if (options.record_trace) out.trace.push_back(out.gap);
    if (out.gap <= options.gap_target || value <= options.stop_below) {
      out.converged = true;
      break;
    }
    if (out.major_iterations >= options.max_major) break;
    const double scale = std::max(1.0, value);
    if (dot(x, ans.vertex) >= value - 1e-15 * scale) break;  // no descent left at working precision
    if (std::find(handles.begin(), handles.end(), ans.handle) != handles.end()) break;

    // Add the vertex and extend the lifted Gram matrix.
    const std::size_t k = corral.size();
    Eigen::MatrixXd g(k + 1, k + 1);
    g.topLeftCorner(k, k) = gram;
    for (std::size_t i = 0; i < k; ++i) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = dot(corral[i], ans.vertex) + 1.0;
    g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = dot(ans.vertex, ans.vertex) + 1.0;
    gram = std::move(g);
    corral.push_back(ans.vertex);
    handles.push_back(ans.handle);
    lambda.push_back(0.0);

    bool stuck = false;
    while (true) {
      ++out.minor_iterations;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-15) {
        stuck = true;
        break;
      }
      const Eigen::VectorXd sol = ldlt.solve(Eigen::VectorXd::Ones(gram.rows()));
      const double total = sol.sum();
      std::vector<double> alpha(corral.size());
      bool interior = true;
      for (std::size_t i = 0; i < corral.size(); ++i) {
        alpha[i] = sol(static_cast<Eigen::Index>(i)) / total;
        if (alpha[i] <= 1e-14) interior = false;
      }
      if (interior) {
        lambda = alpha;
        break;
      }
      // Move from λ toward the affine minimizer until a weight hits zero, drop it.
      double theta = 1.0;
      std::size_t drop = corral.size();
      for (std::size_t i = 0; i < corral.size(); ++i) {
        if (alpha[i] > 1e-14) continue;
        const double denom = lambda[i] - alpha[i];
        const double t = denom > 0.0 ? lambda[i] / denom : 0.0;
        if (t < theta || drop == corral.size()) {
          theta = std::min(theta, t);
          drop = i;
        }
      }
      for (std::size_t i = 0; i < corral.size(); ++i) lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
      lambda[drop] = 0.0;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < corral.size(); ++i)
        if (lambda[i] > 0.0) keep.push_back(i);
      if (keep.empty()) throw std::logic_error("min_norm_point: corral emptied");
      std::vector<std::vector<double>> c2;
      std::vector<std::size_t> h2;
      std::vector<double> l2;
      Eigen::MatrixXd g2(keep.size(), keep.size());
      for (std::size_t a = 0; a < keep.size(); ++a) {
        c2.push_back(std::move(corral[keep[a]]));
        h2.push_back(handles[keep[a]]);
        l2.push_back(lambda[keep[a]]);
        for (std::size_t b = 0; b < keep.size(); ++b)
          g2(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = gram(static_cast<Eigen::Index>(keep[a]), static_cast<Eigen::Index>(keep[b]));
      }
      corral = std::move(c2);
      handles = std::move(h2);
      double s = 0.0;
      for (double v : l2) s += v;
      for (double& v : l2) v /= s;
      lambda = std::move(l2);
      gram = std::move(g2);
    }
    if (stuck) {
      // The new vertex is affinely dependent at working precision; undo and stop.
      if (handles.back() == ans.handle && corral.size() > 1) {
        const double w = lambda.back();
        corral.pop_back();
        handles.pop_back();
        lambda.pop_back();
        for (double& v : lambda) v /= (1.0 - w);
        gram.conservativeResize(static_cast<Eigen::Index>(corral.size()), static_cast<Eigen::Index>(corral.size()));
      }
      break;
    }
  }
  recompute_x();
  out.point = x;
  out.value = dot(x, x);
  out.gap = std::max(0.0, out.value - best_lower);
  out.converged = out.converged || out.gap <= options.gap_target;
  out.handles = handles;
  out.weights = lambda;
  out.vertices = corral;
  return out;
}

MinNormResult min_norm_point(const std::vector<std::vector<double>>& vertices, const MinNormOptions& options) {
  if (vertices.empty()) throw std::invalid_argument("min_norm_point: empty vertex set");
  auto oracle = [&](const std::vector<double>& x) {
    std::size_t best = 0;
    double bv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const double v = dot(x, vertices[i]);
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    return OracleAnswer{vertices[best], bv, best};
  };
  std::size_t start = 0;
  double sn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double v = dot(vertices[i], vertices[i]);
    if (v < sn) {
      sn = v;
      start = i;
    }
  }
  return min_norm_point(oracle, OracleAnswer{vertices[start], 0.0, start}, options);
}

}  // namespace permconc

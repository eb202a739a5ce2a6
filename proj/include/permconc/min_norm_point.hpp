#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace permconc {

/// Answer of a linear minimization oracle over a polytope P ⊂ R^d.
struct OracleAnswer {
  std::vector<double> vertex;
  /// Certified lower bound on min_{v ∈ P} <x, v>; equals <x, vertex> for exact oracles.
  double lower_bound;
  /// Caller-side handle for the vertex (e.g. an index into a vertex list).
  std::size_t handle;
};

struct MinNormOptions {
  /// Stop once the certified gap ‖x‖² − min‖·‖² ≤ gap_target.
  double gap_target = 1e-12;
  std::size_t max_major = 100000;
  /// Stop as soon as ‖x‖² drops to this level.
  double stop_below = -1.0;
  bool record_trace = false;
};

struct MinNormResult {
  std::vector<double> point;
  double value = 0.0;  // ‖point‖²
  double gap = 0.0;    // certified bound on value − min over P
  std::vector<std::size_t> handles;  // corral vertices
  std::vector<double> weights;       // convex weights of the corral
  std::vector<std::vector<double>> vertices;
  std::size_t major_iterations = 0;
  std::size_t minor_iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Wolfe's minimum-norm-point algorithm over conv(P) given only a linear
/// minimization oracle. The corral is kept affinely independent; the affine
/// minimizer is found from the Gram matrix of the lifted points (v, 1).
MinNormResult min_norm_point(const std::function<OracleAnswer(const std::vector<double>&)>& oracle,
                             const OracleAnswer& start, const MinNormOptions& options = {});

/// Convenience form over an explicit vertex list.
MinNormResult min_norm_point(const std::vector<std::vector<double>>& vertices, const MinNormOptions& options = {});

}  // namespace permconc

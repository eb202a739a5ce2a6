#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "permconc/distance.hpp"
#include "permconc/measure.hpp"
#include "permconc/points.hpp"

namespace permconc {

/// Joint law on carrier1 × carrier2, row-major.
struct Coupling {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> matrix;

  double operator()(std::size_t x, std::size_t y) const { return matrix[x * cols + y]; }
  std::vector<double> row_marginal() const;
  std::vector<double> col_marginal() const;
};

struct CostResult {
  double value = 0.0;
  /// Certified bound on value − optimum.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  std::string metric;
  Coupling coupling;
  /// Certified gap after each oracle call, filled when SolverOptions::record_trace is set.
  std::vector<double> trace;
};

struct SolverOptions {
  double gap_target = 1e-7;
  std::size_t max_iterations = 50000;
  /// Stop as soon as the primal value drops to this level (used when only an upper
  /// bound below a threshold is needed).
  double stop_below = -std::numeric_limits<double>::infinity();
  /// Largest accepted carrier.
  std::size_t carrier_cap = 2000;
  bool record_trace = false;
};

/// W1 by the transportation simplex; exact up to the reported dual certificate.
CostResult w1(const Measure& nu1, const Measure& nu2, const DistanceMatrix& d, const std::string& metric = "",
              const SolverOptions& options = {});

/// Barycentric weak cost Σ_x Σ_k (Σ_y π(x,y) A_k(x,y))² / ν1(x) minimized over couplings
/// of (ν1, ν2). The cost is a squared norm of a linear image of π, so this runs the
/// fully corrective Frank-Wolfe scheme of Wolfe's min-norm-point algorithm with the
/// transportation simplex as linear oracle; the gap comes from the oracle's dual bound.
/// `features` is laid out as [x][y][k] with `dims` entries per pair.
CostResult barycentric_cost(const Measure& nu1, const Measure& nu2, const std::vector<double>& features, std::size_t dims,
                            const SolverOptions& options = {});

/// T̃2(ν2|ν1) = inf_π Σ_x ν1(x) (∫ d(x,y) dp_x(y))².
CostResult t2_tilde(const Measure& nu1, const Measure& nu2, const DistanceMatrix& d, const std::string& metric = "",
                    const SolverOptions& options = {});

/// inf_π Σ_x ν1(x) Σ_i (∫ 1[x_i ≠ y_i] dp_x(y))² over the coordinates of `points`.
/// On a group carrier this is T⌢2, on a slice or multinomial carrier T̂2.
CostResult t2_coordinates(const Measure& nu1, const Measure& nu2, const PointSet& points,
                          const SolverOptions& options = {});

inline CostResult t2_paren(const Measure& nu1, const Measure& nu2, const PointSet& group_points_,
                           const SolverOptions& options = {}) {
  auto r = t2_coordinates(nu1, nu2, group_points_, options);
  r.metric = "coordinates";
  return r;
}

inline CostResult t2_hat(const Measure& nu1, const Measure& nu2, const PointSet& slice_points_,
                         const SolverOptions& options = {}) {
  auto r = t2_coordinates(nu1, nu2, slice_points_, options);
  r.metric = "coordinates";
  return r;
}

/// Barycentric cost of a given coupling (no optimization).
double barycentric_value(const Coupling& pi, const std::vector<double>& features, std::size_t dims);

std::vector<double> distance_features(const DistanceMatrix& d);
std::vector<double> coordinate_features(const PointSet& points);

}  // namespace permconc

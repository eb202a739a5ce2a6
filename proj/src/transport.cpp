#include "permconc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "permconc/group.hpp"
#include "permconc/min_norm_point.hpp"
#include "permconc/transport_lp.hpp"

namespace permconc {

std::vector<double> Coupling::row_marginal() const {
  std::vector<double> r(rows, 0.0);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) r[x] += matrix[x * cols + y];
  return r;
}

std::vector<double> Coupling::col_marginal() const {
  std::vector<double> c(cols, 0.0);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) c[y] += matrix[x * cols + y];
  return c;
}

namespace {

void check_carriers(const Measure& nu1, const Measure& nu2, std::size_t n, const SolverOptions& options) {
  if (nu1.size() != n || nu2.size() != n) throw std::invalid_argument("transport: measures do not match the carrier");
  if (n > options.carrier_cap) {
    throw CapExceeded("transport: carrier of " + std::to_string(n) + " points exceeds the cap of " +
                      std::to_string(options.carrier_cap));
  }
}

bool same_flows(const std::vector<Flow>& a, const std::vector<Flow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].row != b[i].row || a[i].col != b[i].col || a[i].mass != b[i].mass) return false;
  return true;
}

std::vector<Flow> sorted_flows(std::vector<Flow> f) {
  std::sort(f.begin(), f.end(), [](const Flow& p, const Flow& q) { return p.row != q.row ? p.row < q.row : p.col < q.col; });
  return f;
}

}  // namespace

CostResult w1(const Measure& nu1, const Measure& nu2, const DistanceMatrix& d, const std::string& metric,
              const SolverOptions& options) {
  check_carriers(nu1, nu2, d.size(), options);
  TransportSolver solver(nu1.weights(), nu2.weights());
  const auto r = solver.solve(d.values());
  CostResult out;
  out.value = r.primal;
  out.gap = std::max(0.0, r.primal - r.lower_bound);
  out.iterations = r.pivots;
  out.metric = metric;
  out.coupling = Coupling{d.size(), d.size(), solver.plan()};
  return out;
}

std::vector<double> distance_features(const DistanceMatrix& d) { return d.values(); }

std::vector<double> coordinate_features(const PointSet& points) {
  const std::size_t n = points.size();
  const auto dims = static_cast<std::size_t>(points.dim());
  std::vector<double> f(n * n * dims, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < dims; ++k) f[(x * n + y) * dims + k] = points[x][k] != points[y][k] ? 1.0 : 0.0;
  return f;
}

double barycentric_value(const Coupling& pi, const std::vector<double>& features, std::size_t dims) {
  if (features.size() != pi.rows * pi.cols * dims) throw std::invalid_argument("barycentric_value: feature size mismatch");
  double total = 0.0;
  std::vector<double> m(dims);
  for (std::size_t x = 0; x < pi.rows; ++x) {
    double mass = 0.0;
    std::fill(m.begin(), m.end(), 0.0);
    for (std::size_t y = 0; y < pi.cols; ++y) {
      const double p = pi(x, y);
      mass += p;
      for (std::size_t k = 0; k < dims; ++k) m[k] += p * features[(x * pi.cols + y) * dims + k];
    }
    if (mass <= 0.0) continue;
    for (double v : m) total += v * v / mass;
  }
  return total;
}

CostResult barycentric_cost(const Measure& nu1, const Measure& nu2, const std::vector<double>& features, std::size_t dims,
                            const SolverOptions& options) {
  const std::size_t n1 = nu1.size(), n2 = nu2.size();
  if (n1 > options.carrier_cap || n2 > options.carrier_cap) throw CapExceeded("transport: carrier exceeds the cap");
  if (dims == 0 || features.size() != n1 * n2 * dims) throw std::invalid_argument("barycentric_cost: feature size mismatch");

  // In the coordinates z_xk = m_xk / sqrt(ν1(x)), with m_xk = Σ_y π(x,y) A_k(x,y), the cost is
  // ‖z‖², so the optimum is the minimum-norm point of the image of the transport polytope.
  std::vector<std::size_t> rows;
  for (std::size_t x = 0; x < n1; ++x)
    if (nu1[x] > 0.0) rows.push_back(x);
  std::vector<double> row_pos(n1, -1.0), inv_sqrt(n1, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    row_pos[rows[r]] = static_cast<double>(r);
    inv_sqrt[rows[r]] = 1.0 / std::sqrt(nu1[rows[r]]);
  }
  const std::size_t dim = rows.size() * dims;

  TransportSolver solver(nu1.weights(), nu2.weights());
  std::vector<std::vector<Flow>> store;
  auto embed = [&](const std::vector<Flow>& flows) {
    std::vector<double> z(dim, 0.0);
    for (const auto& f : flows) {
      const auto r = static_cast<std::size_t>(row_pos[f.row]);
      const double* a = &features[(f.row * n2 + f.col) * dims];
      for (std::size_t k = 0; k < dims; ++k) z[r * dims + k] += f.mass * a[k] * inv_sqrt[f.row];
    }
    return z;
  };
  auto remember = [&](std::vector<Flow> flows) {
    flows = sorted_flows(std::move(flows));
    for (std::size_t i = 0; i < store.size(); ++i)
      if (same_flows(store[i], flows)) return i;
    store.push_back(std::move(flows));
    return store.size() - 1;
  };

  std::vector<double> cost(n1 * n2, 0.0);
  for (std::size_t q = 0; q < n1 * n2; ++q)
    for (std::size_t k = 0; k < dims; ++k) cost[q] += features[q * dims + k];
  solver.solve(cost);
  const std::size_t h0 = remember(solver.flows());
  OracleAnswer start{embed(store[h0]), 0.0, h0};

  std::size_t oracle_calls = 0;
  auto oracle = [&](const std::vector<double>& z) {
    ++oracle_calls;
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t x : rows) {
      const auto r = static_cast<std::size_t>(row_pos[x]);
      for (std::size_t y = 0; y < n2; ++y) {
        const double* a = &features[(x * n2 + y) * dims];
        double g = 0.0;
        for (std::size_t k = 0; k < dims; ++k) g += z[r * dims + k] * a[k];
        cost[x * n2 + y] = g * inv_sqrt[x];
      }
    }
    const auto lp = solver.solve(cost);
    const std::size_t h = remember(solver.flows());
    return OracleAnswer{embed(store[h]), lp.lower_bound, h};
  };

  MinNormOptions mo;
  mo.gap_target = options.gap_target;
  mo.max_major = options.max_iterations;
  mo.stop_below = options.stop_below;
  mo.record_trace = options.record_trace;
  const auto mn = min_norm_point(oracle, start, mo);

  CostResult out;
  out.value = mn.value;
  out.gap = mn.gap;
  out.iterations = oracle_calls;
  out.converged = mn.converged;
  out.trace = mn.trace;
  out.coupling = Coupling{n1, n2, std::vector<double>(n1 * n2, 0.0)};
  for (std::size_t i = 0; i < mn.handles.size(); ++i)
    for (const auto& f : store[mn.handles[i]]) out.coupling.matrix[f.row * n2 + f.col] += mn.weights[i] * f.mass;
  return out;
}

CostResult t2_tilde(const Measure& nu1, const Measure& nu2, const DistanceMatrix& d, const std::string& metric,
                    const SolverOptions& options) {
  check_carriers(nu1, nu2, d.size(), options);
  auto r = barycentric_cost(nu1, nu2, distance_features(d), 1, options);
  r.metric = metric;
  return r;
}

CostResult t2_coordinates(const Measure& nu1, const Measure& nu2, const PointSet& points, const SolverOptions& options) {
  check_carriers(nu1, nu2, points.size(), options);
  const auto dims = static_cast<std::size_t>(points.dim());
  if (points.size() * points.size() * dims > 40'000'000) throw CapExceeded("transport: coordinate table too large");
  return barycentric_cost(nu1, nu2, coordinate_features(points), dims, options);
}

}  // namespace permconc

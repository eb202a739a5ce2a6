#include "permconc/transport_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permconc {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

TransportSolver::TransportSolver(std::vector<double> supply, std::vector<double> demand)
    : supply_(std::move(supply)), demand_(std::move(demand)) {
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < supply_.size(); ++i) {
    if (!(supply_[i] >= 0.0) || !std::isfinite(supply_[i])) throw std::invalid_argument("supply must be nonnegative");
    if (supply_[i] > 0.0) {
      row_ids_.push_back(i);
      a_.push_back(supply_[i]);
      sa += supply_[i];
    }
  }
  for (std::size_t j = 0; j < demand_.size(); ++j) {
    if (!(demand_[j] >= 0.0) || !std::isfinite(demand_[j])) throw std::invalid_argument("demand must be nonnegative");
    if (demand_[j] > 0.0) {
      col_ids_.push_back(j);
      b_.push_back(demand_[j]);
      sb += demand_[j];
    }
  }
  if (a_.empty() || b_.empty()) throw std::invalid_argument("transport marginals must carry mass");
  if (std::abs(sa - sb) > 1e-9 * std::max(1.0, sa)) throw std::invalid_argument("transport marginals differ in total mass");
}

void TransportSolver::initial_basis() {
  // North-west corner rule: advances exactly one index per cell, giving m+k-1 cells.
  const std::size_t m = a_.size(), k = b_.size();
  cell_row_.clear();
  cell_col_.clear();
  std::vector<double> s = a_, d = b_;
  std::size_t i = 0, j = 0;
  while (true) {
    cell_row_.push_back(i);
    cell_col_.push_back(j);
    const double x = std::min(s[i], d[j]);
    s[i] -= x;
    d[j] -= x;
    if (i == m - 1 && j == k - 1) break;
    if (i == m - 1)
      ++j;
    else if (j == k - 1)
      ++i;
    else if (s[i] <= d[j])
      ++i;
    else
      ++j;
  }
  cell_flow_.assign(cell_row_.size(), 0.0);
  has_basis_ = true;
}

void TransportSolver::compute_tree(const std::vector<double>& cost) {
  const std::size_t m = a_.size(), k = b_.size(), nodes = m + k;
  const std::size_t ncols = demand_.size();
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t e = 0; e < cell_row_.size(); ++e) {
    adj[cell_row_[e]].push_back(e);
    adj[m + cell_col_[e]].push_back(e);
  }
  pot_.assign(nodes, 0.0);
  parent_.assign(nodes, kNone);
  parent_cell_.assign(nodes, kNone);
  depth_.assign(nodes, 0);
  order_.clear();
  order_.reserve(nodes);
  std::vector<char> seen(nodes, 0);
  seen[0] = 1;
  order_.push_back(0);
  for (std::size_t h = 0; h < order_.size(); ++h) {
    const std::size_t u = order_[h];
    for (std::size_t e : adj[u]) {
      const std::size_t r = cell_row_[e], c = m + cell_col_[e];
      const std::size_t w = (u == r) ? c : r;
      if (seen[w]) continue;
      seen[w] = 1;
      const double ce = cost[row_ids_[cell_row_[e]] * ncols + col_ids_[cell_col_[e]]];
      pot_[w] = ce - pot_[u];
      parent_[w] = u;
      parent_cell_[w] = e;
      depth_[w] = depth_[u] + 1;
      order_.push_back(w);
    }
  }
  if (order_.size() != nodes) throw std::logic_error("transport basis is not a spanning tree");
}

void TransportSolver::compute_flows() {
  const std::size_t m = a_.size();
  std::vector<double> residual(order_.size());
  for (std::size_t i = 0; i < m; ++i) residual[i] = a_[i];
  for (std::size_t j = 0; j < b_.size(); ++j) residual[m + j] = b_[j];
  std::fill(cell_flow_.begin(), cell_flow_.end(), 0.0);
  for (std::size_t h = order_.size(); h-- > 1;) {
    const std::size_t w = order_[h];
    const std::size_t e = parent_cell_[w];
    cell_flow_[e] = residual[w];
    residual[parent_[w]] -= residual[w];
  }
}

TransportSolver::Result TransportSolver::solve(const std::vector<double>& cost) {
  const std::size_t m = a_.size(), k = b_.size();
  const std::size_t ncols = demand_.size();
  if (cost.size() != supply_.size() * ncols) throw std::invalid_argument("transport cost has the wrong size");
  if (!has_basis_) initial_basis();

  double scale = 1.0;
  for (std::size_t i : row_ids_)
    for (std::size_t j : col_ids_) scale = std::max(scale, std::abs(cost[i * ncols + j]));
  const double eps = 1e-12 * scale;

  Result res;
  compute_tree(cost);
  compute_flows();
  const std::size_t cells = m * k;
  const std::size_t block = std::max<std::size_t>(k, static_cast<std::size_t>(std::sqrt(static_cast<double>(cells))));
  std::size_t next = 0;
  std::size_t degenerate_streak = 0;
  const std::size_t pivot_cap = 200 * (m + k) * (m + k) + 1000;

  auto reduced = [&](std::size_t r, std::size_t c) {
    return cost[row_ids_[r] * ncols + col_ids_[c]] - pot_[r] - pot_[m + c];
  };

  while (true) {
    // Entering cell: block search normally, first eligible cell (Bland) during long degenerate runs.
    std::size_t enter = kNone;
    double best = -eps;
    if (degenerate_streak > m + k) {
      for (std::size_t q = 0; q < cells && enter == kNone; ++q)
        if (reduced(q / k, q % k) < -eps) enter = q;
    } else {
      std::size_t scanned = 0;
      for (std::size_t q = 0; q < cells; ++q) {
        const std::size_t idx = (next + q) % cells;
        const double r = reduced(idx / k, idx % k);
        if (r < best) {
          best = r;
          enter = idx;
        }
        if (++scanned >= block && enter != kNone) break;
      }
      if (enter != kNone) next = (enter + 1) % cells;
    }
    if (enter == kNone) break;
    if (++res.pivots > pivot_cap) throw std::runtime_error("transport simplex exceeded its pivot cap");

    const std::size_t er = enter / k, ec = enter % k;
    // Tree path between row node er and column node m+ec.
    std::vector<std::size_t> up_col, up_row;
    std::size_t x = m + ec, y = er;
    while (depth_[x] > depth_[y]) {
      up_col.push_back(parent_cell_[x]);
      x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
      up_row.push_back(parent_cell_[y]);
      y = parent_[y];
    }
    while (x != y) {
      up_col.push_back(parent_cell_[x]);
      x = parent_[x];
      up_row.push_back(parent_cell_[y]);
      y = parent_[y];
    }
    std::vector<std::size_t> cycle = up_col;
    cycle.insert(cycle.end(), up_row.rbegin(), up_row.rend());
    // Cells at even positions of `cycle` lose flow.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = kNone;
    for (std::size_t p = 0; p < cycle.size(); p += 2) {
      const double f = std::max(0.0, cell_flow_[cycle[p]]);
      if (f < theta) {
        theta = f;
        leave = cycle[p];
      }
    }
    degenerate_streak = theta <= 0.0 ? degenerate_streak + 1 : 0;
    cell_row_[leave] = er;
    cell_col_[leave] = ec;
    compute_tree(cost);
    compute_flows();
  }

  res.primal = 0.0;
  for (std::size_t e = 0; e < cell_row_.size(); ++e) {
    const double f = std::max(0.0, cell_flow_[e]);
    res.primal += f * cost[row_ids_[cell_row_[e]] * ncols + col_ids_[cell_col_[e]]];
  }
  double dual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) worst = std::min(worst, reduced(i, j));
    dual += a_[i] * (pot_[i] + worst);
  }
  for (std::size_t j = 0; j < k; ++j) dual += b_[j] * pot_[m + j];
  res.lower_bound = dual;
  return res;
}

std::vector<Flow> TransportSolver::flows() const {
  std::vector<Flow> out;
  for (std::size_t e = 0; e < cell_row_.size(); ++e)
    if (cell_flow_[e] > 0.0) out.push_back({row_ids_[cell_row_[e]], col_ids_[cell_col_[e]], cell_flow_[e]});
  return out;
}

std::vector<double> TransportSolver::plan() const {
  std::vector<double> p(supply_.size() * demand_.size(), 0.0);
  for (const auto& f : flows()) p[f.row * demand_.size() + f.col] += f.mass;
  return p;
}

}  // namespace permconc

#pragma once

// Independent brute-force references used only by the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Optimum of the transportation LP by enumerating every basic solution: each choice
/// of r+c-1 cells that forms a spanning tree of the bipartite graph gives a unique
/// plan by leaf peeling; nonnegative ones are the polytope's vertices.
inline double transport_by_vertices(const std::vector<double>& a, const std::vector<double>& b,
                                    const std::vector<double>& cost) {
  const std::size_t r = a.size(), c = b.size(), cells = r * c, pick = r + c - 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> sel(cells, 0);
  std::fill(sel.end() - static_cast<long>(pick), sel.end(), 1);
  do {
    std::vector<std::size_t> chosen;
    for (std::size_t q = 0; q < cells; ++q)
      if (sel[q]) chosen.push_back(q);
    // Acyclicity by union-find over row nodes 0..r-1 and column nodes r..r+c-1.
    std::vector<std::size_t> parent(r + c);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    bool tree = true;
    for (std::size_t q : chosen) {
      const std::size_t u = root(q / c), v = root(r + q % c);
      if (u == v) {
        tree = false;
        break;
      }
      parent[u] = v;
    }
    if (!tree) continue;
    std::vector<double> residual(r + c);
    for (std::size_t i = 0; i < r; ++i) residual[i] = a[i];
    for (std::size_t j = 0; j < c; ++j) residual[r + j] = b[j];
    std::vector<char> used(chosen.size(), 0);
    std::vector<double> flow(chosen.size(), 0.0);
    for (std::size_t round = 0; round < chosen.size(); ++round) {
      std::vector<int> degree(r + c, 0);
      for (std::size_t e = 0; e < chosen.size(); ++e)
        if (!used[e]) {
          ++degree[chosen[e] / c];
          ++degree[r + chosen[e] % c];
        }
      for (std::size_t e = 0; e < chosen.size(); ++e) {
        if (used[e]) continue;
        const std::size_t u = chosen[e] / c, v = r + chosen[e] % c;
        if (degree[u] == 1 || degree[v] == 1) {
          const std::size_t leaf = degree[u] == 1 ? u : v, other = leaf == u ? v : u;
          flow[e] = residual[leaf];
          residual[other] -= residual[leaf];
          residual[leaf] = 0.0;
          used[e] = 1;
          break;
        }
      }
    }
    bool feasible = true;
    double value = 0.0;
    for (std::size_t e = 0; e < chosen.size(); ++e) {
      if (flow[e] < -1e-12) feasible = false;
      value += flow[e] * cost[chosen[e]];
    }
    if (feasible) best = std::min(best, value);
  } while (std::next_permutation(sel.begin(), sel.end()));
  return best;
}

/// Minimum of `f` over couplings of (a, b) (all entries positive) by a zooming grid
/// over the free block π[0..r-2][0..c-2]. Returns the best feasible value found.
inline double coupling_grid_min(const std::vector<double>& a, const std::vector<double>& b,
                                const std::function<double(const std::vector<double>&)>& f, double final_step = 1e-3,
                                int points_per_axis = 11) {
  const std::size_t r = a.size(), c = b.size();
  const std::size_t free = (r - 1) * (c - 1);
  std::vector<double> upper(free);
  for (std::size_t i = 0; i + 1 < r; ++i)
    for (std::size_t j = 0; j + 1 < c; ++j) upper[i * (c - 1) + j] = std::min(a[i], b[j]);
  auto complete = [&](const std::vector<double>& z, std::vector<double>& pi) {
    pi.assign(r * c, 0.0);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      double rs = 0.0;
      for (std::size_t j = 0; j + 1 < c; ++j) {
        pi[i * c + j] = z[i * (c - 1) + j];
        rs += z[i * (c - 1) + j];
      }
      pi[i * c + c - 1] = a[i] - rs;
    }
    for (std::size_t j = 0; j < c; ++j) {
      double cs = 0.0;
      for (std::size_t i = 0; i + 1 < r; ++i) cs += pi[i * c + j];
      pi[(r - 1) * c + j] = b[j] - cs;
    }
    for (double v : pi)
      if (v < -1e-13) return false;
    for (double& v : pi) v = std::max(v, 0.0);
    return true;
  };

  std::vector<double> lo(free, 0.0), hi = upper;
  std::vector<double> best_z;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> pi;
  double step = 0.0;
  for (int level = 0; level < 40; ++level) {
    step = 0.0;
    for (std::size_t k = 0; k < free; ++k) step = std::max(step, (hi[k] - lo[k]) / (points_per_axis - 1));
    std::vector<int> idx(free, 0);
    std::vector<double> z(free);
    while (true) {
      for (std::size_t k = 0; k < free; ++k)
        z[k] = std::min(hi[k], lo[k] + (hi[k] - lo[k]) * idx[k] / (points_per_axis - 1));
      if (complete(z, pi)) {
        const double v = f(pi);
        if (v < best) {
          best = v;
          best_z = z;
        }
      }
      std::size_t k = 0;
      while (k < free && ++idx[k] == points_per_axis) idx[k++] = 0;
      if (k == free) break;
    }
    if (step <= final_step || best_z.empty()) break;
    for (std::size_t k = 0; k < free; ++k) {
      const double w = 2.0 * (hi[k] - lo[k]) / (points_per_axis - 1);
      lo[k] = std::max(0.0, best_z[k] - w);
      hi[k] = std::min(upper[k], best_z[k] + w);
    }
  }
  return best;
}

/// Minimum of `f` over the probability simplex on `n` points sampled on the grid
/// {p : p_i ∈ (1/res)·Z}.
inline double simplex_grid_min(std::size_t n, int res, const std::function<double(const std::vector<double>&)>& f) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> k(n, 0);
  std::vector<double> p(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      k[i] = left;
      for (std::size_t t = 0; t < n; ++t) p[t] = static_cast<double>(k[t]) / res;
      best = std::min(best, f(p));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, res);
  return best;
}

/// Dense tableau simplex with Bland's rule for min c·x s.t. A x = b, x ≥ 0 (b ≥ 0),
/// through a phase-one with artificial variables. Returns +inf if infeasible.
inline double lp_min(std::vector<std::vector<double>> A, std::vector<double> b, const std::vector<double>& c) {
  const std::size_t m = A.size(), n = c.size();
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0) {
      for (double& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  const std::size_t cols = n + m;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }
  auto run = [&](const std::vector<double>& obj, std::size_t allowed) {
    // Objective row holds reduced costs.
    std::vector<double>& z = T[m];
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t j = 0; j < cols; ++j) z[j] = obj[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = obj[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= cb * T[i][j];
    }
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < allowed; ++j)
        if (z[j] < -1e-12) {
          enter = j;
          break;
        }
      if (enter == cols) return;
      std::size_t leave = m;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i)
        if (T[i][enter] > 1e-12) {
          const double q = T[i][cols] / T[i][enter];
          if (leave == m || q < ratio - 1e-15 || (std::abs(q - ratio) <= 1e-15 && basis[i] < basis[leave])) {
            ratio = q;
            leave = i;
          }
        }
      if (leave == m) throw std::runtime_error("lp_min: unbounded");
      const double piv = T[leave][enter];
      for (double& v : T[leave]) v /= piv;
      for (std::size_t i = 0; i <= m; ++i) {
        if (i == leave || T[i][enter] == 0.0) continue;
        const double f = T[i][enter];
        for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
      }
      basis[leave] = enter;
    }
  };
  std::vector<double> phase1(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1.0;
  run(phase1, cols);
  if (-T[m][cols] > 1e-9) return std::numeric_limits<double>::infinity();
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(T[i][j]) > 1e-9) {
        const double piv = T[i][j];
        for (double& v : T[i]) v /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
          if (r == i || T[r][j] == 0.0) continue;
          const double f = T[r][j];
          for (std::size_t q = 0; q <= cols; ++q) T[r][q] -= f * T[i][q];
        }
        basis[i] = j;
        break;
      }
  }
  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  run(phase2, n);
  return -T[m][cols];
}

}  // namespace oracle

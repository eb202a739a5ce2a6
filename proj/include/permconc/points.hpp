#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "permconc/group.hpp"
#include "permconc/measure.hpp"

namespace permconc {

/// Finite carrier whose points are integer coordinate vectors of a common length.
/// Group elements use their image arrays, slice points their 0/1 indicators and
/// multinomial points their block labels.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<std::vector<int>> points);

  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  const std::vector<int>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<std::vector<int>>& points() const { return points_; }
  std::optional<std::size_t> find(const std::vector<int>& x) const;
  std::size_t index_of(const std::vector<int>& x) const;

 private:
  std::vector<std::vector<int>> points_;
  int dim_ = 0;
};

PointSet group_points(const GroupTable& group);

/// X_{k,n-k}: 0/1 vectors of length n with k ones, in lexicographically decreasing order.
PointSet slice_points(int k, int n);

/// X_{k_1..k_m}: labelings of [1..n] using label l exactly k_l times, lexicographically increasing.
PointSet multinomial_points(const std::vector<int>& parts);

/// Indicator vector of {σ(1), ..., σ(k)}.
std::vector<int> slice_projection(const Permutation& sigma, int k);

/// x_i = l for i ∈ σ(J_l), where J_1, ..., J_m are consecutive blocks of sizes k_1, ..., k_m.
std::vector<int> multinomial_projection(const Permutation& sigma, const std::vector<int>& parts);

/// Image of μ under the map σ ↦ project(σ) into `target`.
template <class Project>
Measure push_to_points(const GroupTable& group, const Measure& mu, const PointSet& target, Project&& project) {
  std::vector<double> w(target.size(), 0.0);
  for (std::size_t a = 0; a < group.order(); ++a) w[target.index_of(project(group.element(a)))] += mu[a];
  return Measure::normalized(std::move(w));
}

}  // namespace permconc

#include "permconc/points.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permconc {

PointSet::PointSet(std::vector<std::vector<int>> points) : points_(std::move(points)) {
  if (!points_.empty()) dim_ = static_cast<int>(points_.front().size());
  for (const auto& p : points_)
    if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("PointSet: points differ in dimension");
}

std::optional<std::size_t> PointSet::find(const std::vector<int>& x) const {
  auto it = std::find(points_.begin(), points_.end(), x);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t PointSet::index_of(const std::vector<int>& x) const {
  auto idx = find(x);
  if (!idx) throw std::invalid_argument("point is not in the carrier");
  return *idx;
}

PointSet group_points(const GroupTable& group) {
  std::vector<std::vector<int>> pts;
  pts.reserve(group.order());
  for (const auto& e : group.elements()) pts.push_back(e.images());
  return PointSet(std::move(pts));
}

PointSet slice_points(int k, int n) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("slice_points: need 0 <= k <= n, n >= 1");
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  std::fill(x.begin(), x.begin() + k, 1);
  std::vector<std::vector<int>> pts;
  do {
    pts.push_back(x);
  } while (std::prev_permutation(x.begin(), x.end()));
  return PointSet(std::move(pts));
}

namespace {

void check_parts(const std::vector<int>& parts) {
  if (parts.empty()) throw std::invalid_argument("multinomial parts must be nonempty");
  for (int k : parts)
    if (k < 1) throw std::invalid_argument("multinomial parts must be positive");
}

}  // namespace

PointSet multinomial_points(const std::vector<int>& parts) {
  check_parts(parts);
  std::vector<int> x;
  for (std::size_t l = 0; l < parts.size(); ++l) x.insert(x.end(), static_cast<std::size_t>(parts[l]), static_cast<int>(l) + 1);
  std::vector<std::vector<int>> pts;
  do {
    pts.push_back(x);
  } while (std::next_permutation(x.begin(), x.end()));
  return PointSet(std::move(pts));
}

std::vector<int> slice_projection(const Permutation& sigma, int k) {
  if (k < 1 || k > sigma.size()) throw std::invalid_argument("slice_projection: k out of range");
  std::vector<int> x(static_cast<std::size_t>(sigma.size()), 0);
  for (int i = 1; i <= k; ++i) x[static_cast<std::size_t>(sigma(i) - 1)] = 1;
  return x;
}

std::vector<int> multinomial_projection(const Permutation& sigma, const std::vector<int>& parts) {
  check_parts(parts);
  if (std::accumulate(parts.begin(), parts.end(), 0) != sigma.size()) {
    throw std::invalid_argument("multinomial_projection: parts must sum to n");
  }
  std::vector<int> x(static_cast<std::size_t>(sigma.size()), 0);
  int i = 1;
  for (std::size_t l = 0; l < parts.size(); ++l)
    for (int r = 0; r < parts[l]; ++r, ++i) x[static_cast<std::size_t>(sigma(i) - 1)] = static_cast<int>(l) + 1;
  return x;
}

}  // namespace permconc

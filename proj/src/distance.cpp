#include "permconc/distance.hpp"

#include <algorithm>
#include <stdexcept>

namespace permconc {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::hamming: return "hamming";
    case Metric::transposition: return "transposition";
    case Metric::half_hamming: return "half_hamming";
  }
  return "unknown";
}

Metric parse_metric(const std::string& name) {
  if (name == "hamming" || name == "dH") return Metric::hamming;
  if (name == "transposition" || name == "dT") return Metric::transposition;
  if (name == "half_hamming" || name == "dh") return Metric::half_hamming;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), d_(std::move(values)) {
  if (d_.size() != n * n) throw std::invalid_argument("DistanceMatrix: expected n*n values");
}

double DistanceMatrix::max() const { return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end()); }

namespace {

DistanceMatrix scaled_hamming(const PointSet& points, double scale) {
  const std::size_t n = points.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      int k = 0;
      for (int i = 0; i < points.dim(); ++i) k += points[a][static_cast<std::size_t>(i)] != points[b][static_cast<std::size_t>(i)];
      d[a * n + b] = d[b * n + a] = scale * k;
    }
  return DistanceMatrix(n, std::move(d));
}

}  // namespace

DistanceMatrix hamming_matrix(const PointSet& points) { return scaled_hamming(points, 1.0); }

DistanceMatrix half_hamming_matrix(const PointSet& points) { return scaled_hamming(points, 0.5); }

DistanceMatrix cayley_matrix(const GroupTable& group, const CayleyLengths& lengths) {
  const std::size_t n = group.order();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d[a * n + b] = lengths.distance(group, a, b);
  return DistanceMatrix(n, std::move(d));
}

DistanceMatrix group_distances(const GroupTable& group, Metric metric) {
  switch (metric) {
    case Metric::hamming: return hamming_matrix(group_points(group));
    case Metric::half_hamming: return half_hamming_matrix(group_points(group));
    case Metric::transposition:
      if (!group.ell()) throw std::invalid_argument("transposition metric needs a declared ell");
      return cayley_matrix(group, CayleyLengths(group, *group.ell()));
  }
  throw std::invalid_argument("unknown metric");
}

}  // namespace permconc

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permconc/group.hpp"
#include "permconc/points.hpp"

namespace permconc {

enum class Metric { hamming, transposition, half_hamming };

std::string to_string(Metric m);
/// Accepts "hamming"/"dH", "transposition"/"dT", "half_hamming"/"dh".
Metric parse_metric(const std::string& name);

/// Dense row-major N×N table of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }
  const std::vector<double>& values() const { return d_; }
  double max() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Number of differing coordinates.
DistanceMatrix hamming_matrix(const PointSet& points);
/// Half the number of differing coordinates (d_h on slices).
DistanceMatrix half_hamming_matrix(const PointSet& points);
/// d_T on a group from its Cayley lengths.
DistanceMatrix cayley_matrix(const GroupTable& group, const CayleyLengths& lengths);

/// Distance table for a group under `metric`; transposition uses the declared ell.
DistanceMatrix group_distances(const GroupTable& group, Metric metric);

}  // namespace permconc

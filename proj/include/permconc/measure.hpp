#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "permconc/group.hpp"
#include "permconc/local_base.hpp"

namespace permconc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Probability vector over an indexed finite carrier (group elements in enumeration
/// order, slice points, or orbit labels).
class Measure {
 public:
  Measure() = default;
  /// Throws std::invalid_argument on negative or non-finite weights, or when the
  /// weights do not sum to 1 within 1e-12.
  explicit Measure(std::vector<double> weights);

  /// Divides by the total mass; throws when the total is not positive.
  static Measure normalized(std::vector<double> weights);
  static Measure dirac(std::size_t size, std::size_t at);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  double integrate(const std::vector<double>& f) const;

 private:
  std::vector<double> weights_;
};

/// One factor per chain level j ≥ 2; factors[j-2][k] is the mass of the k-th label
/// of O_j (ascending order).
struct ProductMeasure {
  std::vector<std::vector<double>> factors;
};

Measure uniform(std::size_t size);

/// Each factor uniform on its orbit.
ProductMeasure uniform_product(const LocalBase& base);

/// Chinese-restaurant factors: level j gives θ/(θ+j-1) to j and 1/(θ+j-1) to each
/// label below j. Requires O_j = [1..j] for every j.
ProductMeasure ewens_product(const LocalBase& base, double theta);

/// Mass of σ is Π_j ν̂_j(i_j) with (i_j) = u_inverse(σ).
Measure pushforward_product(const GroupTable& group, const LocalBase& base, const ProductMeasure& product);

/// μ^θ(σ) = θ^{|σ|} / θ(θ+1)⋯(θ+n-1), evaluated in log-space. The group must be all of S_n.
Measure ewens_closed(const GroupTable& group, double theta);

/// H(ν|μ) = Σ ν log(ν/μ), +∞ when ν charges a μ-null point.
double relative_entropy(const Measure& nu, const Measure& mu);

/// Σ |μ(x) − ν(x)|, i.e. twice the supremum over events.
double total_variation(const Measure& mu, const Measure& nu);

/// μ(σ) = μ(σ⁻¹) and μ(σ) = μ(t⁻¹σt) for every σ ∈ G, t ∈ S_n, with G closed under
/// conjugation. Conjugation is checked against adjacent transpositions, which
/// generate S_n. Weights are compared with absolute tolerance `tol`.
bool check_invariance(const Measure& mu, const GroupTable& group, double tol = 1e-12);

}  // namespace permconc

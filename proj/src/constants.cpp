#include "permconc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permconc {

double c_general(int ell, int n, Metric metric) {
  switch (metric) {
    case Metric::hamming: return std::min(2 * ell - 1, n);
    case Metric::transposition: return 2.0;
    case Metric::half_hamming: break;
  }
  throw std::invalid_argument("c(ℓ) is defined for d_H and d_T only");
}

double c_uniform(int ell, Metric metric) {
  switch (metric) {
    case Metric::hamming: return ell;
    case Metric::transposition: return 1.0;
    case Metric::half_hamming: break;
  }
  throw std::invalid_argument("c(ℓ) is defined for d_H and d_T only");
}

double c_squared_uniform_local(int ell) { return 2.0 * (ell - 1) * (ell - 1) + 2.0; }

double c_squared_normal_invariant(int ell) { return 8.0 * (ell - 1) * (ell - 1) + 2.0; }

int k_n(const GroupTable& group) { return group.nontrivial_levels(); }

bool is_uniform(const Measure& mu, double tol) {
  const double w = 1.0 / static_cast<double>(mu.size());
  return std::all_of(mu.weights().begin(), mu.weights().end(), [&](double v) { return std::abs(v - w) <= tol; });
}

LocalRegime select_local_regime(const GroupTable& group, const LocalBase& base, const Measure& mu, Metric metric) {
  if (is_uniform(mu) && is_ell_local(group, base.ell())) {
    return {c_uniform(base.ell(), metric), true, "uniform-local"};
  }
  return {c_general(base.ell(), group.n(), metric), false, "general"};
}

std::optional<SymmetricRegime> select_symmetric_regime(const GroupTable& group, const LocalBase& base, const Measure& mu) {
  if (is_uniform(mu) && is_ell_local(group, base.ell())) {
    return SymmetricRegime{c_squared_uniform_local(base.ell()), "uniform-local"};
  }
  const auto normal = is_normal_in_symmetric(group);
  if (normal.value_or(false) && check_invariance(mu, group)) {
    return SymmetricRegime{c_squared_normal_invariant(base.ell()), "normal-invariant"};
  }
  return std::nullopt;
}

}  // namespace permconc

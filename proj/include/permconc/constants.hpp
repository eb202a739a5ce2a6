#pragma once

#include <optional>
#include <string>

#include "permconc/distance.hpp"
#include "permconc/group.hpp"
#include "permconc/local_base.hpp"
#include "permconc/measure.hpp"

namespace permconc {

/// Constant regime of the W1 / T̃2 inequalities.
struct LocalRegime {
  double c = 0.0;
  bool uniform = false;  // uniform law on an ℓ-local group
  std::string label;
};

/// Constant regime of the T⌢2 inequality (and everything derived from it).
struct SymmetricRegime {
  double c_squared = 0.0;
  std::string label;  // "uniform-local" or "normal-invariant"
};

/// c(ℓ) for an arbitrary measure of the product class: min(2ℓ−1, n) under d_H, 2 under d_T.
double c_general(int ell, int n, Metric metric);
/// c(ℓ) for the uniform law of an ℓ-local group: ℓ under d_H, 1 under d_T.
double c_uniform(int ell, Metric metric);

/// c(ℓ)² = 2(ℓ−1)² + 2.
double c_squared_uniform_local(int ell);
/// c(ℓ)² = 8(ℓ−1)² + 2.
double c_squared_normal_invariant(int ell);

/// K_n = #{j ≥ 2 : O_j ≠ {j}}.
int k_n(const GroupTable& group);

bool is_uniform(const Measure& mu, double tol = 1e-14);

LocalRegime select_local_regime(const GroupTable& group, const LocalBase& base, const Measure& mu, Metric metric);

/// The uniform ℓ-local regime is preferred when both hypotheses hold; nullopt when neither does.
std::optional<SymmetricRegime> select_symmetric_regime(const GroupTable& group, const LocalBase& base, const Measure& mu);

}  // namespace permconc

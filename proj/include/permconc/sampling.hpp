#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "permconc/group.hpp"
#include "permconc/local_base.hpp"
#include "permconc/measure.hpp"
#include "permconc/rng.hpp"

namespace permconc {

/// Draws `count` words i_j ~ ν̂_j independently and maps them through U_T.
/// Draws are split into fixed-size chunks, each with its own derived stream, so the
/// output depends only on (seed, count) and not on `threads`.
std::vector<Permutation> sample(const LocalBase& base, const ProductMeasure& product, Seed seed, std::size_t count,
                                unsigned threads = 1);

/// Same as sample, returned as ordinals of `group`.
std::vector<std::size_t> sample_indices(const GroupTable& group, const LocalBase& base, const ProductMeasure& product,
                                        Seed seed, std::size_t count, unsigned threads = 1);

/// |σ|_l: number of cycles of length l.
int l_cycle_statistic(const Permutation& sigma, int l);
/// α_k(σ) = 1 if k lies on a cycle of length l of σ, else 0.
std::vector<double> l_cycle_weights(const Permutation& sigma, int l);

enum class StatisticKind { l_cycle_count, lipschitz_convex, sup_linear_family };

std::string to_string(StatisticKind k);
StatisticKind parse_statistic(const std::string& name);

struct StatisticSpec {
  StatisticKind kind = StatisticKind::l_cycle_count;
  int l = 2;
  /// lipschitz_convex: g(σ) = φ(x_σ) with x ∈ [0,1]^n and φ(y) = max_t (⟨a_t, y⟩ + b_t), ‖a_t‖₂ ≤ 1.
  std::vector<double> x;
  std::vector<std::vector<double>> slopes;
  std::vector<double> intercepts;
  /// sup_linear_family: g(σ) = max_t Σ_k a^t[k][σ(k)] with nonnegative n×n matrices a^t (0-based rows/cols).
  std::vector<std::vector<std::vector<double>>> family;

  /// Throws std::invalid_argument naming the offending field.
  void validate(int n) const;
};

/// g, the configuration weights α(σ) and the proxies |α(σ)|² and h(σ) tabulated over a group.
struct StatisticTable {
  std::vector<double> g;
  std::vector<std::vector<double>> alpha;
  std::vector<double> alpha_sq;
  /// Variance proxy h ≥ |α|² (equal to |α|² except for the linear family).
  std::vector<double> h;
  /// M with |α|² ≤ M g, when the statistic has one.
  std::optional<double> m_bound;
};

StatisticTable tabulate(const StatisticSpec& spec, const GroupTable& group);

/// max over (τ, σ) of g(τ) − g(σ) − Σ_k α_k(τ) 1[τ(k) ≠ σ(k)]; ≤ 0 iff g is a configuration function.
double configuration_violation(const GroupTable& group, const StatisticTable& table);

struct DeviationRow {
  double u = 0.0;
  double empirical_upper_tail = 0.0;  // μ(g ≥ μ(g) + u)
  double empirical_lower_tail = 0.0;  // μ(g ≤ μ(g) − u)
  double empirical_median_upper = 0.0;  // μ(g ≥ M(g) + u)
  double empirical_median_lower = 0.0;  // μ(g ≤ M(g) − u)
  double empirical_two_sided = 0.0;   // μ(|g − μ(g)| ≥ u)
  double bound_upper_sup = 0.0;       // exp(−u²/(2c² sup|α|²))
  std::optional<double> bound_upper_m;          // exp(−u²/(2c² M (μ(g)+u)))
  std::optional<double> bound_upper_bernstein;  // 2exp(−u²/(2c² (μ(h)+Mu)))
  double bound_upper = 0.0;           // tightest of the above
  double bound_lower = 0.0;           // exp(−u²/(2c² μ(|α|²)))
  /// ½exp(−w(x)) with x = u/(√2 c sup|α|) where x ≥ √log2, else 1.
  double bound_median = 0.0;
  /// ½exp(−w(x)) evaluated at every u, including x < √log2 where it is not implied.
  double bound_median_formula = 0.0;
  double bound_two_sided = 0.0;       // 2exp(−u²/(2c² sup|α|²))
};

struct DeviationExperiment {
  StatisticSpec statistic;
  std::vector<double> u_grid;
  double c_squared = 0.0;
  /// Monte Carlo draws when the group is too large for exact tails.
  std::size_t sample_count = 100000;
  std::uint64_t seed = 0;
  /// Exact tails by enumeration up to this many elements.
  std::size_t exact_cap = 5040;
  /// λ grid for μ(g ≥ μ(g) + v + λc²|α|²/2) ≤ e^{−λv}, checked at every v = u.
  std::vector<double> lambda_grid{0.1, 0.25, 0.5, 1.0, 2.0};
};

struct DeviationReport {
  std::string statistic;
  double c_squared = 0.0;
  bool exact = true;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double median = 0.0;
  double sup_alpha_sq = 0.0;
  double mean_alpha_sq = 0.0;
  double mean_h = 0.0;
  std::optional<double> m_bound;
  double configuration_violation = 0.0;
  std::vector<DeviationRow> rows;
  /// max over (λ, v) of μ(g ≥ μ(g) + v + λc²|α|²/2) − e^{−λv}.
  double lambda_v_excess = 0.0;
  /// Grid points where ½exp(−w(x)) itself falls below an empirical median tail.
  std::size_t median_formula_violations = 0;
  /// min over rows and bounds of bound − empirical; negative means a violated bound.
  double worst_margin = 0.0;
};

/// Compares exact (or sampled) deviation tails of a configuration function with the
/// closed-form bounds for the measure pushed forward from `product`.
DeviationReport run_deviation_experiment(const DeviationExperiment& exp, const GroupTable& group, const LocalBase& base,
                                         const ProductMeasure& product);

/// u, empirical_upper_tail, bound_upper, empirical_lower_tail, bound_lower, bound_median, empirical_median_upper.
std::string deviation_csv(const DeviationReport& report);

/// `points` values evenly spaced on [0, hi].
std::vector<double> linear_grid(double hi, std::size_t points);

}  // namespace permconc

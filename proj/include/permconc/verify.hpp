#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permconc/distance.hpp"
#include "permconc/group.hpp"
#include "permconc/local_base.hpp"
#include "permconc/measure.hpp"
#include "permconc/transport.hpp"

namespace permconc {

/// A group with a recorded ℓ-local base and a measure of the product class built on it.
struct Instance {
  std::string label;
  GroupTable group;
  LocalBase base;
  ProductMeasure product;
  Measure mu;
  std::string measure_label;
};

/// Builds the base at `ell` and pushes `product` forward.
Instance make_instance(std::string label, GroupTable group, int ell, const ProductMeasure& product,
                       std::string measure_label);
Instance uniform_instance(std::string label, GroupTable group, int ell);
/// Ewens law on S_n through the Chinese-restaurant factors.
Instance ewens_instance(int n, double theta);

/// Raised when the hypotheses of a check do not hold for the instance; distinct from a
/// failed inequality.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Trial {
  std::size_t index = 0;
  std::string witness;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs − lhs.
  double slack = 0.0;
  /// Sum of the certified solver gaps that enter lhs and rhs.
  double gap = 0.0;
};

struct VerificationReport {
  std::string inequality_id;
  std::string carrier;
  std::string group_fingerprint;
  std::string base_fingerprint;
  std::string measure;
  std::string metric;
  std::string regime;
  std::vector<std::pair<std::string, double>> constants;
  double tolerance = 1e-8;
  std::vector<Trial> trials;
  std::size_t failures = 0;
  double worst_slack = kInfinity;
  std::size_t worst_trial = 0;
  /// min RHS/LHS over trials with LHS > 1e-12 and RHS ≥ 0 (+∞ when there is none).
  double min_ratio = kInfinity;
  bool passed = true;
  /// False when the hypotheses fail; no trials are run then.
  bool applicable = true;
  std::string note;

  /// Recomputes failures, worst slack, min ratio and the verdict from the trials.
  void finalize();
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t random_pairs = 500;
  bool dirac_pairs = true;
  /// Tilts μ·e^{−λ d(σ0,·)} and mixtures of δ_σ0 with μ, paired with μ.
  bool extremal_witnesses = true;
  std::vector<double> tilt_lambdas{0.5, 1.0, 2.0, 4.0};
  std::vector<double> mixture_weights{0.1, 0.3, 0.6, 0.9};
  double tolerance = 1e-8;
  /// Replaces c(ℓ) in the W1 / T̃2 checks (regression canary).
  std::optional<double> c_override;
  std::vector<double> alpha_grid{0.1, 0.25, 0.5, 0.75, 0.9};
  std::size_t dual_functions = 30;
  std::vector<double> lambda_grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  std::size_t lipschitz_functions = 50;
  /// Talagrand family: every subset up to this size plus `random_subsets` random ones.
  std::size_t subset_size_cap = 2;
  std::size_t random_subsets = 30;
  std::size_t tartine_functions = 50;
  unsigned threads = 1;
  SolverOptions solver;
};

/// (2/c²)W1²(ν1,ν2) ≤ K_n(√H(ν1|μ) + √H(ν2|μ))².
VerificationReport verify_tw1(const Instance& inst, Metric metric, const VerifyOptions& opt = {});

/// (1/(2c²))T̃2(ν2|ν1) ≤ K_n(√H + √H)², followed by its dual with Q̃_{K_n} and the
/// improved dual with Q̃^α_{K_n}.
std::vector<VerificationReport> verify_t_tilde(const Instance& inst, Metric metric, const VerifyOptions& opt = {});

/// (1/(2c²))T⌢2(ν2|ν1) ≤ (√H + √H)², followed by its dual with Q⌢.
/// Throws HypothesisError when neither constant regime applies.
std::vector<VerificationReport> verify_t_paren(const Instance& inst, const VerifyOptions& opt = {});

/// ∫e^{αf(σ,A)/(2c²)}dμ ≤ μ(A)^{−α/(1−α)} over a subset family, then the tail form on
/// all singletons. Throws HypothesisError as verify_t_paren.
std::vector<VerificationReport> verify_talagrand(const Instance& inst, const VerifyOptions& opt = {});

/// ‖ν−μ‖² ≤ 2H(ν|μ) (‖·‖ = Σ|·|), the dual ∫e^{λR^c f}dν ≤ e^{λ∫f dν + λ²c²/8} on
/// three-point carriers, and the complete-graph duals with R̃^α and R̃.
std::vector<VerificationReport> verify_ckp(const Measure& mu, const std::string& carrier, const VerifyOptions& opt = {});

/// ∫e^{λφ}dμ ≤ exp(λ∫φdμ + K_n c²λ²/8) for 1-Lipschitz φ.
VerificationReport verify_hoeffding_dual(const Instance& inst, Metric metric, const VerifyOptions& opt = {});

/// Uniform law on X_{k,n−k}: (2/C)W1² ≤ (√H+√H)², (1/(2C))T̃2 ≤ (√H+√H)² with d_h and
/// C = min(k, n−k); (1/8)T̂2 ≤ (√H+√H)²; Q⌢(f∘P) ≥ Q̂f∘P on S_n; W1² ≤ T̃2 ≤ (n/4)T̂2.
std::vector<VerificationReport> verify_slice(int k, int n, const VerifyOptions& opt = {});

/// (1/8)T̂2 ≤ (√H+√H)² for the uniform multinomial law with the given block sizes.
VerificationReport verify_multinomial(const std::vector<int>& parts, const VerifyOptions& opt = {});

/// Every group-level check on one instance (hypothesis failures become inapplicable
/// reports), in a fixed order.
std::vector<VerificationReport> verify_instance(const Instance& inst, const VerifyOptions& opt = {});

/// Group-level checks on every default instance, then the slice and multinomial checks.
std::vector<VerificationReport> verify_default_suite(const VerifyOptions& opt = {});

/// Identifiers accepted by `verify <id>`.
const std::vector<std::string>& inequality_ids();

}  // namespace permconc

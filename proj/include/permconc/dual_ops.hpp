#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permconc/distance.hpp"
#include "permconc/points.hpp"

namespace permconc {

/// R^c f(x) = inf_p {∫f dp + c ∫1[x≠y] dp(y)} = min(f(x), min_{y≠x} f(y) + c).
double r_c(const std::vector<double>& f, double c, std::size_t x);

/// c_α(u) = [α(1−u)log(1−u) − (1−αu)log(1−αu)] / (α(1−α)) on [0, 1], +∞ beyond 1.
/// Small u uses the power series Σ_{k≥2} (1−α^{k−1})/(1−α) · u^k/(k(k−1)).
double c_alpha(double u, double alpha);
/// c_α'(u) = (log(1−αu) − log(1−u)) / (1−α), +∞ at u = 1.
double c_alpha_derivative(double u, double alpha);

/// min Σ g p over probability vectors p with Σ F p = K, found among measures with at most
/// two atoms. Returns +∞ when K lies outside [min F, max F].
double extremal_two_point_minimum(const std::vector<double>& g, const std::vector<double>& F, double K);

/// Penalty of the barycentric operators: either Ψ(m) = m²/(2c²t) or Ψ(m) = t·c_α(m/(ct)).
struct BarycentricPenalty {
  double t = 1.0;
  double c = 1.0;
  /// 0 selects the quadratic penalty.
  double alpha = 0.0;

  double value(double m) const;
  double derivative(double m) const;
  /// Largest admissible m (+∞ for the quadratic penalty).
  double domain() const;
};

/// inf_p {∫φ dp + Ψ(∫ dist dp)} with Ψ convex nondecreasing, solved exactly over measures
/// with at most two atoms.
double two_point_infimum(const std::vector<double>& phi, const std::vector<double>& dist, const BarycentricPenalty& pen);

/// Q̃_t φ(σ) = inf_p {∫φ dp + (∫d(σ,y)dp(y))² / (2c²t)}.
double q_tilde(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma, double t, double c);
/// Q̃^α_t φ(σ) = inf_p {∫φ dp + t c_α((1/(ct)) ∫d(σ,y)dp(y))}.
double q_tilde_alpha(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma, double t, double c,
                     double alpha);
/// R̃f(x) = inf_p {∫f dp + ½(∫1[x≠y]dp)²} on a complete graph.
double r_tilde(const std::vector<double>& f, std::size_t x);
/// R̃^α f(x) = inf_p {∫f dp + c_α(∫1[x≠y]dp)}.
double r_tilde_alpha(const std::vector<double>& f, std::size_t x, double alpha);

/// Qφ(σ) = min_τ {φ(τ) + d(σ,τ)}.
double q_w1(const std::vector<double>& phi, const DistanceMatrix& d, std::size_t sigma);

struct QPResult {
  double value = 0.0;
  /// Certified bound on value − optimum (Frank-Wolfe duality gap).
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> p;
};

struct QPOptions {
  double gap_target = 1e-8;
  std::size_t max_iterations = 200000;
};

/// inf_p {∫φ dp + Σ_k w_k (∫1[x_k≠y_k] dp(y))²} over the simplex on `points`, x = points[at],
/// by away-step Frank-Wolfe with exact line search.
QPResult coordinate_inf_convolution(const std::vector<double>& phi, const PointSet& points, std::size_t at,
                                    const std::vector<double>& weights, const QPOptions& options = {});

/// Q⌢φ(σ): all coordinate weights 1/(2c²).
QPResult q_paren(const std::vector<double>& phi, const PointSet& points, std::size_t sigma, double c,
                 const QPOptions& options = {});
/// Q^j φ(σ): coordinate j (1-based) weighted 1/c², the others 1/(2c²).
QPResult q_j(const std::vector<double>& phi, const PointSet& points, std::size_t sigma, double c, int j,
             const QPOptions& options = {});
/// Q̂f(x) on a slice: all coordinate weights 1/8.
QPResult q_hat(const std::vector<double>& f, const PointSet& slice, std::size_t x, const QPOptions& options = {});

struct TalagrandResult {
  double value = 0.0;
  std::vector<double> point;
  /// min over vertices v of <x*, v − x*>; nonnegative at the exact optimum.
  double optimality = 0.0;
};

/// f(σ, A) = min ‖x‖² over conv{(1[σ(j)≠y(j)])_j : y ∈ A}, by min-norm-point.
TalagrandResult talagrand_f(const PointSet& points, std::size_t sigma, const std::vector<std::size_t>& A);

enum class OperatorKind { Q, Q_tilde_t, Q_tilde_alpha, Q_paren, Q_j, Q_hat, R_c, R_tilde, R_tilde_alpha };

std::string to_string(OperatorKind k);
OperatorKind parse_operator(const std::string& name);

/// Operator selection with its parameters; fields unused by a kind are ignored.
struct InfConvSpec {
  OperatorKind kind = OperatorKind::Q;
  double t = 1.0;
  double c = 1.0;
  double alpha = 0.5;
  int j = 1;

  /// Throws std::invalid_argument naming the offending parameter.
  void validate(int n) const;
};

/// Evaluates the operator at every point of the carrier. `d` is used by the
/// distance-based kinds, `points` by the coordinate kinds.
std::vector<double> evaluate_operator(const InfConvSpec& spec, const std::vector<double>& phi, const DistanceMatrix& d,
                                      const PointSet& points);

}  // namespace permconc

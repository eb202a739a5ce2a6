#include "permconc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace permconc {

Measure::Measure(std::vector<double> weights) : weights_(std::move(weights)) {
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("measure weights must be finite and nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("measure weights sum to " + std::to_string(total) + ", expected 1");
  }
}

Measure Measure::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("measure weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("measure has no mass");
  for (double& w : weights) w /= total;
  Measure m;
  m.weights_ = std::move(weights);
  return m;
}

Measure Measure::dirac(std::size_t size, std::size_t at) {
  if (at >= size) throw std::out_of_range("dirac: index out of range");
  std::vector<double> w(size, 0.0);
  w[at] = 1.0;
  return Measure(std::move(w));
}

double Measure::integrate(const std::vector<double>& f) const {
  if (f.size() != size()) throw std::invalid_argument("integrate: function size differs from carrier");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    if (weights_[i] > 0.0) s += weights_[i] * f[i];
  return s;
}

Measure uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform: empty carrier");
  return Measure::normalized(std::vector<double>(size, 1.0));
}

ProductMeasure uniform_product(const LocalBase& base) {
  ProductMeasure p;
  for (int j = 2; j <= base.n(); ++j) {
    const auto k = base.orbit(j).size();
    p.factors.emplace_back(k, 1.0 / static_cast<double>(k));
  }
  return p;
}

ProductMeasure ewens_product(const LocalBase& base, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("ewens: theta must be positive");
  ProductMeasure p;
  for (int j = 2; j <= base.n(); ++j) {
    const auto& orb = base.orbit(j);
    if (static_cast<int>(orb.size()) != j) throw std::invalid_argument("ewens_product: requires O_j = [1..j]");
    const double z = theta + j - 1;
    std::vector<double> f(orb.size(), 1.0 / z);
    f.back() = theta / z;
    p.factors.push_back(std::move(f));
  }
  return p;
}

Measure pushforward_product(const GroupTable& group, const LocalBase& base, const ProductMeasure& product) {
  if (static_cast<int>(product.factors.size()) != base.n() - 1) {
    throw std::invalid_argument("pushforward_product: expected one factor per chain level");
  }
  for (int j = 2; j <= base.n(); ++j) {
    const auto& f = product.factors[static_cast<std::size_t>(j - 2)];
    if (f.size() != base.orbit(j).size()) {
      throw std::invalid_argument("pushforward_product: factor " + std::to_string(j) + " does not match orbit O_" +
                                  std::to_string(j));
    }
    Measure check(f);  // validates the factor
  }
  std::vector<double> w(group.order(), 0.0);
  for (std::size_t a = 0; a < group.order(); ++a) {
    const Word word = u_inverse(base, group.element(a));
    double mass = 1.0;
    for (int j = 2; j <= base.n(); ++j) {
      mass *= product.factors[static_cast<std::size_t>(j - 2)][base.orbit_position(j, word[static_cast<std::size_t>(j - 2)])];
    }
    w[a] = mass;
  }
  return Measure(std::move(w));
}

Measure ewens_closed(const GroupTable& group, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("ewens: theta must be positive");
  const int n = group.n();
  double log_full = 0.0;
  for (int i = 2; i <= n; ++i) log_full += std::log(static_cast<double>(i));
  if (std::abs(std::log(static_cast<double>(group.order())) - log_full) > 1e-9) {
    throw std::invalid_argument("ewens_closed: carrier must be the full symmetric group");
  }
  double log_norm = 0.0;
  for (int i = 0; i < n; ++i) log_norm += std::log(theta + i);
  std::vector<double> w(group.order());
  for (std::size_t a = 0; a < group.order(); ++a) {
    w[a] = std::exp(group.element(a).cycle_count() * std::log(theta) - log_norm);
  }
  return Measure(std::move(w));
}

double relative_entropy(const Measure& nu, const Measure& mu) {
  if (nu.size() != mu.size()) throw std::invalid_argument("relative_entropy: carrier mismatch");
  double h = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] <= 0.0) continue;
    if (mu[i] <= 0.0) return kInfinity;
    h += nu[i] * (std::log(nu[i]) - std::log(mu[i]));
  }
  return std::max(h, 0.0);
}

double total_variation(const Measure& mu, const Measure& nu) {
  if (nu.size() != mu.size()) throw std::invalid_argument("total_variation: carrier mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) s += std::abs(mu[i] - nu[i]);
  return s;
}

bool check_invariance(const Measure& mu, const GroupTable& group, double tol) {
  if (mu.size() != group.order()) throw std::invalid_argument("check_invariance: carrier mismatch");
  const int n = group.n();
  for (std::size_t a = 0; a < group.order(); ++a) {
    if (std::abs(mu[a] - mu[group.inverse_of(a)]) > tol) return false;
  }
  for (int i = 1; i < n; ++i) {
    const Permutation t = Permutation::transposition(n, i, i + 1);
    for (std::size_t a = 0; a < group.order(); ++a) {
      auto b = group.find(compose(t, compose(group.element(a), t)));
      if (!b || std::abs(mu[a] - mu[*b]) > tol) return false;
    }
  }
  return true;
}

}  // namespace permconc

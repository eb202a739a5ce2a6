#include "permconc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace permconc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::vector<double> Rng::dirichlet(std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = exponential();
    total += x;
  }
  if (total <= 0.0) {
    w.assign(n, 1.0 / static_cast<double>(n));
    return w;
  }
  for (auto& x : w) x /= total;
  return w;
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("Rng::categorical: no weights");
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace permconc

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace permconc {

/// Explicit seed wrapper so stochastic entry points cannot be called without one.
struct Seed {
  std::uint64_t value;
  explicit Seed(std::uint64_t v) : value(v) {}
};

/// SplitMix64 step, used to derive independent stream seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 with portable derived distributions (the standard library's
/// distributions are implementation-defined, so they are not used for anything
/// that must reproduce across platforms).
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(splitmix64(seed.value)) {}
  /// Generator for sub-stream `stream` of `seed`, independent of any thread layout.
  static Rng stream(Seed seed, std::uint64_t stream) { return Rng(Seed(splitmix64(seed.value ^ splitmix64(stream + 1)))); }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard exponential.
  double exponential();
  /// Symmetric Dirichlet(1) vector of length n.
  std::vector<double> dirichlet(std::size_t n);
  /// Index drawn from nonnegative weights summing to (about) 1.
  std::size_t categorical(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace permconc

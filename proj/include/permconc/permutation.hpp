#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace permconc {

/// Element of S_n stored as a 1-based image array: images()[i-1] is the image of i.
///
/// Degree and cycle count are computed once at construction.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `images` is a bijection of [1..n].
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);
  /// Builds a permutation from disjoint cycles given with 1-based labels.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  /// Image of the 1-based label i.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const { return degree_ == 0; }
  bool is_even() const { return (size() - cycle_count_) % 2 == 0; }

  /// Number of displaced points, #supp(σ).
  int degree() const { return degree_; }
  /// Number of cycles including fixed points.
  int cycle_count() const { return cycle_count_; }
  std::vector<int> support() const;
  /// Cycle decomposition, each cycle starting at its smallest label, fixed points included.
  std::vector<std::vector<int>> cycles() const;

  /// Cycle notation with fixed points omitted, "()" for the identity.
  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
  int degree_ = 0;
  int cycle_count_ = 0;
};

/// (a∘b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

int cycle_count(const Permutation& sigma);

/// d_H(σ,τ) = #{i : σ(i) ≠ τ(i)}.
int hamming(const Permutation& sigma, const Permutation& tau);

/// Number of cycles of length exactly `length`.
int cycles_of_length(const Permutation& sigma, int length);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
  std::size_t operator()(const std::vector<int>& images) const noexcept;
};

}  // namespace permconc

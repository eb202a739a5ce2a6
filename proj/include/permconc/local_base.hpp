#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permconc/group.hpp"
#include "permconc/permutation.hpp"

namespace permconc {

/// Orbit word (i_2, ..., i_n) with i_j ∈ O_j; word[j-2] holds i_j.
using Word = std::vector<int>;

/// ℓ-local base T = (t_{i,j}): for every chain level j ≥ 2 and i ∈ O_j an element
/// t_{i,j} ∈ G_j with t_{i,j}(i) = j and deg(t_{i,j}) ≤ ell; t_{j,j} = id.
class LocalBase {
 public:
  int n() const { return n_; }
  int ell() const { return ell_; }

  /// O_j (ascending), j in [2..n].
  const std::vector<int>& orbit(int j) const;
  /// Position of i inside O_j; throws std::out_of_range if i ∉ O_j.
  std::size_t orbit_position(int j, int i) const;
  /// t_{i,j}.
  const Permutation& factor(int i, int j) const;

  /// Π_j |O_j|.
  std::size_t word_count() const;

  /// Hash of the group fingerprint together with every factor.
  const std::string& fingerprint() const { return fingerprint_; }
  const std::string& group_fingerprint() const { return group_fingerprint_; }

 private:
  friend LocalBase build_local_base(const GroupTable& group, int ell);

  int n_ = 0;
  int ell_ = 0;
  std::vector<std::vector<int>> orbits_;                 // orbits_[j-2]
  std::vector<std::vector<Permutation>> factors_;        // factors_[j-2][pos]
  std::string fingerprint_;
  std::string group_fingerprint_;
};

/// For each (i, j) picks the element of G_j of minimal degree, ties broken by
/// enumeration ordinal. Throws std::invalid_argument naming (i, j) when no element
/// of degree ≤ ell moves i to j.
LocalBase build_local_base(const GroupTable& group, int ell);

/// U_T(i_2..i_n) = t_{i_2,2} ∘ t_{i_3,3} ∘ ... ∘ t_{i_n,n}.
Permutation u_map(const LocalBase& base, const Word& word);

/// Inverse of u_map by peeling: i_j = (σ^{(j)})⁻¹(j), σ^{(j-1)} = σ^{(j)} ∘ t_{i_j,j}⁻¹.
/// Throws std::invalid_argument when an intermediate σ^{(j)} leaves G_j.
Word u_inverse(const LocalBase& base, const Permutation& sigma);

/// All words in lexicographic order of (i_2, ..., i_n).
std::vector<Word> all_words(const LocalBase& base);

}  // namespace permconc

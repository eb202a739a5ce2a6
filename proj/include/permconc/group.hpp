#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "permconc/permutation.hpp"

namespace permconc {

/// Raised when an enumeration or a dense table would exceed its configured size cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct GroupOptions {
  std::size_t element_cap = 10000;
};

/// A fully enumerated permutation group on [1..n] with its stabilizer chain.
///
/// G_j is the subgroup fixing j+1,...,n pointwise (G_n = G, G_1 = {id}) and
/// O_j = {σ(j) : σ ∈ G_j}. Elements are stored in breadth-first order from the
/// identity, which is always ordinal 0. Immutable after construction.
class GroupTable {
 public:
  int n() const { return n_; }
  std::size_t order() const { return elements_.size(); }

  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(std::size_t ordinal) const { return elements_.at(ordinal); }
  const std::vector<Permutation>& generators() const { return generators_; }

  std::optional<std::size_t> find(const Permutation& p) const;
  std::optional<std::size_t> find(const std::vector<int>& images) const;
  /// Throws std::invalid_argument when p is not in the group.
  std::size_t index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const { return find(p).has_value(); }

  /// Ordinal of element(a)∘element(b).
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse_of(std::size_t a) const { return inverse_.at(a); }

  /// Ordinals of the elements of G_j, j in [1..n].
  const std::vector<std::size_t>& chain_level(int j) const;
  /// O_j in ascending order, j in [1..n].
  const std::vector<int>& orbit(int j) const;

  /// K_n = #{j in [2..n] : O_j ≠ {j}}.
  int nontrivial_levels() const;

  std::optional<int> ell() const { return ell_; }
  void set_ell(std::optional<int> ell) { ell_ = ell; }

  /// Short stable hash of (n, element set), printed as hex.
  std::string fingerprint() const;

 private:
  friend GroupTable enumerate_group(int n, std::vector<Permutation> generators, const GroupOptions& options);

  int n_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
  std::unordered_map<std::vector<int>, std::size_t, PermutationHash> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<std::size_t>> chain_;  // chain_[j-1] = G_j
  std::vector<std::vector<int>> orbits_;         // orbits_[j-1] = O_j
  std::optional<int> ell_;
};

/// Closure of `generators` under composition by breadth-first search.
/// Throws CapExceeded past options.element_cap elements.
GroupTable enumerate_group(int n, std::vector<Permutation> generators, const GroupOptions& options = {});

/// S_n from adjacent transpositions, ell = 2.
GroupTable symmetric_group(int n, const GroupOptions& options = {});
/// A_n from the 3-cycles (i i+1 i+2), ell = 3.
GroupTable alternating_group(int n, const GroupOptions& options = {});
/// Direct product of symmetric groups acting on consecutive label blocks, ell = 2.
GroupTable symmetric_product(const std::vector<int>& block_sizes, const GroupOptions& options = {});

/// Exhaustive check of the ℓ-local property: every move σ(i) = j is realized by some
/// τ ∈ G with supp(τ) ⊆ supp(σ), deg(τ) ≤ ell and τ(i) = j.
bool is_ell_local(const GroupTable& group, int ell);

/// Smallest ell in [2..n] for which the group is ell-local, if any.
std::optional<int> minimal_locality(const GroupTable& group);

/// Whether t⁻¹Gt = G for every t ∈ S_n. Index-1 and index-2 subgroups are accepted
/// directly; otherwise conjugation is checked exhaustively, which is only attempted
/// for n ≤ 5 (std::nullopt beyond).
std::optional<bool> is_normal_in_symmetric(const GroupTable& group);

/// Word lengths over the generating set {g ∈ G : 1 ≤ deg(g) ≤ ell}, computed by
/// breadth-first search of the Cayley graph. d_T(σ,τ) = length(σ⁻¹τ).
class CayleyLengths {
 public:
  CayleyLengths(const GroupTable& group, int ell);
  /// Rebuilds from a previously computed table (used by the on-disk cache).
  CayleyLengths(int ell, std::vector<int> lengths) : ell_(ell), lengths_(std::move(lengths)) {}

  int ell() const { return ell_; }
  /// -1 marks elements not reachable from the identity.
  const std::vector<int>& lengths() const { return lengths_; }
  int distance(const GroupTable& group, std::size_t a, std::size_t b) const;

 private:
  int ell_;
  std::vector<int> lengths_;
};

/// d_T between two elements of `group` using the declared ell of the group.
/// Throws std::invalid_argument when an argument is outside G, no ell is declared,
/// or the pair is not connected by degree-≤ell elements.
int transposition_distance(const GroupTable& group, const Permutation& sigma, const Permutation& tau);

}  // namespace permconc

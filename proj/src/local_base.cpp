#include "permconc/local_base.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace permconc {

const std::vector<int>& LocalBase::orbit(int j) const {
  if (j < 2 || j > n_) throw std::out_of_range("local base level out of range");
  return orbits_[static_cast<std::size_t>(j - 2)];
}

std::size_t LocalBase::orbit_position(int j, int i) const {
  const auto& orb = orbit(j);
  auto it = std::lower_bound(orb.begin(), orb.end(), i);
  if (it == orb.end() || *it != i) {
    throw std::out_of_range("label " + std::to_string(i) + " is not in orbit O_" + std::to_string(j));
  }
  return static_cast<std::size_t>(it - orb.begin());
}

const Permutation& LocalBase::factor(int i, int j) const {
  return factors_[static_cast<std::size_t>(j - 2)][orbit_position(j, i)];
}

std::size_t LocalBase::word_count() const {
  std::size_t c = 1;
  for (const auto& o : orbits_) c *= o.size();
  return c;
}

LocalBase build_local_base(const GroupTable& group, int ell) {
  const int n = group.n();
  if (n < 2) throw std::invalid_argument("build_local_base: n must be at least 2");
  LocalBase base;
  base.n_ = n;
  base.ell_ = ell;
  base.group_fingerprint_ = group.fingerprint();

  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (char ch : base.group_fingerprint_) mix(static_cast<std::uint64_t>(ch));
  mix(static_cast<std::uint64_t>(ell));

  for (int j = 2; j <= n; ++j) {
    const auto& orb = group.orbit(j);
    const auto& level = group.chain_level(j);
    std::vector<Permutation> factors;
    for (int i : orb) {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      int best_deg = std::numeric_limits<int>::max();
      for (std::size_t a : level) {  // chain levels are in ascending ordinal order
        const auto& e = group.element(a);
        if (e(i) != j) continue;
        if (e.degree() < best_deg) {
          best_deg = e.degree();
          best = a;
        }
      }
      if (best_deg > ell) {
        throw std::invalid_argument("no element of degree <= " + std::to_string(ell) + " in G_" + std::to_string(j) +
                                    " maps " + std::to_string(i) + " to " + std::to_string(j));
      }
      factors.push_back(group.element(best));
      mix(static_cast<std::uint64_t>(best));
    }
    base.orbits_.push_back(orb);
    base.factors_.push_back(std::move(factors));
  }

  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  base.fingerprint_ = os.str();
  return base;
}

Permutation u_map(const LocalBase& base, const Word& word) {
  const int n = base.n();
  if (static_cast<int>(word.size()) != n - 1) throw std::invalid_argument("u_map: word must have n-1 letters");
  Permutation result = Permutation::identity(n);
  for (int j = 2; j <= n; ++j) result = compose(result, base.factor(word[static_cast<std::size_t>(j - 2)], j));
  return result;
}

Word u_inverse(const LocalBase& base, const Permutation& sigma) {
  const int n = base.n();
  if (sigma.size() != n) throw std::invalid_argument("u_inverse: size mismatch");
  Word word(static_cast<std::size_t>(n - 1));
  Permutation current = sigma;
  for (int j = n; j >= 2; --j) {
    for (int k = j + 1; k <= n; ++k) {
      if (current(k) != k) throw std::invalid_argument("u_inverse: permutation is not in the group");
    }
    const int i = current.inverse()(j);
    const auto& orb = base.orbit(j);
    if (!std::binary_search(orb.begin(), orb.end(), i)) {
      throw std::invalid_argument("u_inverse: permutation is not in the group");
    }
    word[static_cast<std::size_t>(j - 2)] = i;
    current = compose(current, base.factor(i, j).inverse());
  }
  if (!current.is_identity()) throw std::invalid_argument("u_inverse: permutation is not in the group");
  return word;
}

std::vector<Word> all_words(const LocalBase& base) {
  const int n = base.n();
  std::vector<Word> out;
  out.reserve(base.word_count());
  std::vector<std::size_t> pos(static_cast<std::size_t>(n - 1), 0);
  while (true) {
    Word w(static_cast<std::size_t>(n - 1));
    for (int j = 2; j <= n; ++j) w[static_cast<std::size_t>(j - 2)] = base.orbit(j)[pos[static_cast<std::size_t>(j - 2)]];
    out.push_back(std::move(w));
    int k = n - 2;
    while (k >= 0) {
      auto& p = pos[static_cast<std::size_t>(k)];
      if (++p < base.orbit(k + 2).size()) break;
      p = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace permconc

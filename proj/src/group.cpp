#include "permconc/group.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <sstream>

namespace permconc {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

// Bit i-1 set for each i in supp(σ); n is small (enumeration cap keeps n ≤ 64 in practice).
std::uint64_t support_mask(const Permutation& p) {
  std::uint64_t m = 0;
  for (int i = 1; i <= p.size(); ++i)
    if (p(i) != i) m |= std::uint64_t{1} << (i - 1);
  return m;
}

// Largest moved point, 0 for the identity.
int top_moved(const Permutation& p) {
  for (int i = p.size(); i >= 1; --i)
    if (p(i) != i) return i;
  return 0;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

std::optional<std::size_t> GroupTable::find(const std::vector<int>& images) const {
  auto it = index_.find(images);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> GroupTable::find(const Permutation& p) const {
  if (p.size() != n_) return std::nullopt;
  return find(p.images());
}

std::size_t GroupTable::index_of(const Permutation& p) const {
  auto idx = find(p);
  if (!idx) throw std::invalid_argument("permutation " + p.to_string() + " is not an element of the group");
  return *idx;
}

std::size_t GroupTable::multiply(std::size_t a, std::size_t b) const {
  const Permutation& pa = elements_.at(a);
  const Permutation& pb = elements_.at(b);
  std::vector<int> im(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) im[static_cast<std::size_t>(i - 1)] = pa(pb(i));
  return index_.at(im);
}

const std::vector<std::size_t>& GroupTable::chain_level(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("chain level out of range");
  return chain_[static_cast<std::size_t>(j - 1)];
}

const std::vector<int>& GroupTable::orbit(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("orbit index out of range");
  return orbits_[static_cast<std::size_t>(j - 1)];
}

int GroupTable::nontrivial_levels() const {
  int k = 0;
  for (int j = 2; j <= n_; ++j) k += orbit(j).size() > 1;
  return k;
}

std::string GroupTable::fingerprint() const {
  std::vector<const std::vector<int>*> sorted;
  sorted.reserve(elements_.size());
  for (const auto& e : elements_) sorted.push_back(&e.images());
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
  std::uint64_t h = fnv1a(14695981039346656037ull, static_cast<std::uint64_t>(n_));
  for (const auto* im : sorted)
    for (int v : *im) h = fnv1a(h, static_cast<std::uint64_t>(v));
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

GroupTable enumerate_group(int n, std::vector<Permutation> generators, const GroupOptions& options) {
  if (n < 1) throw std::invalid_argument("enumerate_group: n must be positive");
  for (const auto& g : generators)
    if (g.size() != n) throw std::invalid_argument("enumerate_group: generator size differs from n");

  GroupTable G;
  G.n_ = n;
  G.generators_ = generators;

  auto add = [&](Permutation p) -> bool {
    auto [it, inserted] = G.index_.emplace(p.images(), G.elements_.size());
    if (!inserted) return false;
    if (G.elements_.size() >= options.element_cap) {
      throw CapExceeded("group enumeration exceeded the element cap of " + std::to_string(options.element_cap));
    }
    G.elements_.push_back(std::move(p));
    return true;
  };

  add(Permutation::identity(n));
  for (std::size_t head = 0; head < G.elements_.size(); ++head) {
    for (const auto& g : generators) {
      add(compose(G.elements_[head], g));
    }
  }

  G.inverse_.resize(G.order());
  for (std::size_t a = 0; a < G.order(); ++a) G.inverse_[a] = G.index_.at(G.elements_[a].inverse().images());

  G.chain_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t a = 0; a < G.order(); ++a) {
    const int top = top_moved(G.elements_[a]);
    for (int j = std::max(top, 1); j <= n; ++j) G.chain_[static_cast<std::size_t>(j - 1)].push_back(a);
  }
  G.orbits_.assign(static_cast<std::size_t>(n), {});
  for (int j = 1; j <= n; ++j) {
    auto& orb = G.orbits_[static_cast<std::size_t>(j - 1)];
    for (std::size_t a : G.chain_[static_cast<std::size_t>(j - 1)]) orb.push_back(G.elements_[a](j));
    std::sort(orb.begin(), orb.end());
    orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
  }
  return G;
}

GroupTable symmetric_group(int n, const GroupOptions& options) {
  std::vector<Permutation> gens;
  for (int i = 1; i < n; ++i) gens.push_back(Permutation::transposition(n, i, i + 1));
  auto G = enumerate_group(n, std::move(gens), options);
  G.set_ell(2);
  return G;
}

GroupTable alternating_group(int n, const GroupOptions& options) {
  std::vector<Permutation> gens;
  for (int i = 1; i + 2 <= n; ++i) gens.push_back(Permutation::from_cycles(n, {{i, i + 1, i + 2}}));
  auto G = enumerate_group(n, std::move(gens), options);
  G.set_ell(3);
  return G;
}

GroupTable symmetric_product(const std::vector<int>& block_sizes, const GroupOptions& options) {
  int n = 0;
  for (int b : block_sizes) {
    if (b < 1) throw std::invalid_argument("symmetric_product: block sizes must be positive");
    n += b;
  }
  std::vector<Permutation> gens;
  int start = 1;
  for (int b : block_sizes) {
    for (int i = start; i + 1 < start + b; ++i) gens.push_back(Permutation::transposition(n, i, i + 1));
    start += b;
  }
  auto G = enumerate_group(n, std::move(gens), options);
  G.set_ell(2);
  return G;
}

bool is_ell_local(const GroupTable& group, int ell) {
  if (group.n() > 64) throw std::invalid_argument("is_ell_local: supports n <= 64");
  struct Low {
    const Permutation* p;
    std::uint64_t mask;
  };
  std::vector<Low> low;
  for (const auto& e : group.elements())
    if (!e.is_identity() && e.degree() <= ell) low.push_back({&e, support_mask(e)});

  for (const auto& sigma : group.elements()) {
    if (sigma.is_identity()) continue;
    const std::uint64_t smask = support_mask(sigma);
    for (int i = 1; i <= group.n(); ++i) {
      const int j = sigma(i);
      if (j == i) continue;
      bool found = false;
      for (const auto& t : low) {
        if ((t.mask & ~smask) == 0 && (*t.p)(i) == j) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

std::optional<int> minimal_locality(const GroupTable& group) {
  if (group.order() == 1) return 2;
  for (int ell = 2; ell <= group.n(); ++ell)
    if (is_ell_local(group, ell)) return ell;
  return std::nullopt;
}

std::optional<bool> is_normal_in_symmetric(const GroupTable& group) {
  const int n = group.n();
  const std::uint64_t full = factorial(n);
  const std::uint64_t order = group.order();
  if (order == full || 2 * order == full || order == 1) return true;
  if (n > 5) return std::nullopt;
  const auto Sn = symmetric_group(n);
  for (const auto& t : Sn.elements()) {
    const Permutation tinv = t.inverse();
    for (const auto& s : group.elements()) {
      if (!group.contains(compose(tinv, compose(s, t)))) return false;
    }
  }
  return true;
}

CayleyLengths::CayleyLengths(const GroupTable& group, int ell) : ell_(ell) {
  std::vector<std::size_t> gens;
  for (std::size_t a = 0; a < group.order(); ++a) {
    const int deg = group.element(a).degree();
    if (deg >= 1 && deg <= ell) gens.push_back(a);
  }
  lengths_.assign(group.order(), -1);
  lengths_[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t g : gens) {
      const std::size_t b = group.multiply(a, g);
      if (lengths_[b] < 0) {
        lengths_[b] = lengths_[a] + 1;
        queue.push_back(b);
      }
    }
  }
}

int CayleyLengths::distance(const GroupTable& group, std::size_t a, std::size_t b) const {
  const int len = lengths_.at(group.multiply(group.inverse_of(a), b));
  if (len < 0) throw std::invalid_argument("elements are not connected by degree-bounded moves");
  return len;
}

int transposition_distance(const GroupTable& group, const Permutation& sigma, const Permutation& tau) {
  if (!group.ell()) throw std::invalid_argument("transposition_distance: group has no declared ell");
  const std::size_t a = group.index_of(sigma);
  const std::size_t b = group.index_of(tau);
  return CayleyLengths(group, *group.ell()).distance(group, a, b);
}

}  // namespace permconc

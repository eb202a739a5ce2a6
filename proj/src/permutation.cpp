#include "permconc/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permconc {

namespace {

void require_same_size(const Permutation& a, const Permutation& b, const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << what << ": size mismatch (" << a.size() << " vs " << b.size() << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation images must be a bijection of [1.." + std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  for (int i = 1; i <= n; ++i) {
    if (images_[static_cast<std::size_t>(i - 1)] != i) ++degree_;
    if (seen[static_cast<std::size_t>(i)]) continue;
    ++cycle_count_;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j - 1)]) {
      seen[static_cast<std::size_t>(j)] = 1;
    }
  }
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("identity: negative size");
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  if (a < 1 || b < 1 || a > n || b > n || a == b) throw std::invalid_argument("transposition: bad labels");
  std::vector<int> im = identity(n).images();
  std::swap(im[static_cast<std::size_t>(a - 1)], im[static_cast<std::size_t>(b - 1)]);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> im = identity(n).images();
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int from = c[k];
      const int to = c[(k + 1) % c.size()];
      if (from < 1 || from > n || used[static_cast<std::size_t>(from)]) {
        throw std::invalid_argument("from_cycles: cycles must be disjoint with labels in [1..n]");
      }
      used[static_cast<std::size_t>(from)] = 1;
      im[static_cast<std::size_t>(from - 1)] = to;
    }
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i)-1)] = i;
  return Permutation(std::move(inv));
}

std::vector<int> Permutation::support() const {
  std::vector<int> s;
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) s.push_back(i);
  return s;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(static_cast<std::size_t>(size()) + 1, 0);
  for (int i = 1; i <= size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> c;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_size(a, b, "compose");
  std::vector<int> im(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) im[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(im));
}

int cycle_count(const Permutation& sigma) { return sigma.cycle_count(); }

int hamming(const Permutation& sigma, const Permutation& tau) {
  require_same_size(sigma, tau, "hamming");
  int d = 0;
  for (int i = 1; i <= sigma.size(); ++i) d += sigma(i) != tau(i);
  return d;
}

int cycles_of_length(const Permutation& sigma, int length) {
  if (length < 1 || length > sigma.size()) throw std::invalid_argument("cycle length out of range");
  int count = 0;
  for (const auto& c : sigma.cycles()) count += static_cast<int>(c.size()) == length;
  return count;
}

std::size_t PermutationHash::operator()(const std::vector<int>& images) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : images) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept { return (*this)(p.images()); }

}  // namespace permconc

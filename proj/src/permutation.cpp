#include "garside/permutation.hpp"

#include <numeric>

namespace garside::perm {

Perm identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  return p;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<std::uint8_t>(x);
  return r;
}

Perm transposition(int n, int i, int j) {
  Perm p = identity(n);
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  return p;
}

Perm reversal(int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(n - 1 - x);
  return p;
}

Perm descending_cycle(int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>((x + n - 1) % n);
  return p;
}

int inversions(const Perm& p) {
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) count += p[i] > p[j];
  }
  return count;
}

int cycle_count(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int cycles = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    ++cycles;
    for (std::size_t y = x; !seen[y]; y = p[y]) seen[y] = true;
  }
  return cycles;
}

std::uint64_t pack(const Perm& p) {
  std::uint64_t v = 0;
  for (std::size_t x = 0; x < p.size(); ++x) v |= std::uint64_t{p[x]} << (4 * x);
  return v;
}

Perm unpack(std::uint64_t packed, int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>((packed >> (4 * x)) & 0xf);
  return p;
}

bool is_packed_permutation(std::uint64_t packed, int n) {
  if (n < 16 && (packed >> (4 * n)) != 0) return false;
  unsigned seen = 0;
  for (int x = 0; x < n; ++x) {
    const auto v = static_cast<unsigned>((packed >> (4 * x)) & 0xf);
    if (v >= static_cast<unsigned>(n) || (seen >> v) & 1u) return false;
    seen |= 1u << v;
  }
  return true;
}

std::string to_string(const Perm& p) {
  std::string s = "[";
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (x) s += ',';
    s += std::to_string(p[x] + 1);
  }
  return s + "]";
}

}  // namespace garside::perm

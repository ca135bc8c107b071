#pragma once

// Permutations in one-line notation acting on positions 0..n-1.
// Composition is left to right: (p * q)[x] = p[q[x]], so the permutation of a
// braid word is the product of its letters' transpositions in word order.

#include <cstdint>
#include <string>
#include <vector>

namespace garside::perm {

using Perm = std::vector<std::uint8_t>;

Perm identity(int n);
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
Perm transposition(int n, int i, int j);
/// Order-reversing permutation (classical half twist).
Perm reversal(int n);
/// The n-cycle x -> x - 1 (mod n), the BKL Garside element.
Perm descending_cycle(int n);

int inversions(const Perm& p);
int cycle_count(const Perm& p);
/// Reflection length n - (number of cycles).
inline int reflection_length(const Perm& p) { return static_cast<int>(p.size()) - cycle_count(p); }

/// Packs up to 12 entries, 4 bits each.
std::uint64_t pack(const Perm& p);
Perm unpack(std::uint64_t packed, int n);
bool is_packed_permutation(std::uint64_t packed, int n);

/// 1-based image array, e.g. "[2,3,1]".
std::string to_string(const Perm& p);

}  // namespace garside::perm

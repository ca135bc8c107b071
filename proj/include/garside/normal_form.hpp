#pragma once

// Normal forms of positive words and penetration distance.

#include <cstdint>
#include <utility>
#include <vector>

#include "garside/canonical_form.hpp"
#include "garside/structure.hpp"

namespace garside {

/// Positive word over the atoms; letters are atom indices.
struct AtomWord {
  const GarsideStructure* structure = nullptr;
  std::vector<std::uint8_t> letters;

  /// Weighted length (sum of atom weights).
  std::int64_t weight() const;
};

/// Checked construction: every letter must be an atom index of g.
AtomWord make_word(const GarsideStructure& g, std::vector<std::uint8_t> letters);

/// Reference algorithm: sweep left_weighted_pair over adjacent pairs, alternating
/// direction, until nothing changes. Deltas drift to the front, identities to the back.
CanonicalForm normal_form_baseline(const AtomWord& w);

struct LinearOptions {
  /// After every letter, compare the state (with pending Delta powers pushed
  /// to the front) against the baseline normal form of the letters consumed.
  /// Quadratic; for tests. Throws std::logic_error on violation.
  bool check_invariant = false;
};

/// Single left-to-right pass with Delta-power annotations modulo the central
/// power; the inner loop runs pd times per letter.
CanonicalForm normal_form_linear(const AtomWord& w, LinearOptions options = {});

/// Normal form of x * s, rewriting from the right and stopping at a trivial meet.
CanonicalForm multiply_simple(const CanonicalForm& x, Simple s);
/// In-place variant.
void multiply_simple_in_place(CanonicalForm& x, Simple s);
/// Normal form by multiplying the letters in one at a time.
CanonicalForm normal_form_by_multiplication(const AtomWord& w);

struct PenetrationRecord {
  int pd = 0;
  /// (s_i, m_i), leftmost first; the last pair touches the multiplier.
  std::vector<std::pair<Simple, Simple>> trail;
};

/// pd(x, xy) from the two normal forms: cl(x) minus the longest common prefix
/// of the factor sequences after removing the Delta powers.
int penetration_distance(const CanonicalForm& x, const CanonicalForm& xy);
int penetration_distance(const CanonicalForm& x, Simple y);
int penetration_distance(const CanonicalForm& x, const AtomWord& y);

/// Normal form of x * s together with the penetration sequence of the rewrite.
/// Multiplying by Delta only twists, so it yields pd 0 and an empty trail.
std::pair<CanonicalForm, PenetrationRecord> pd_tracked(const CanonicalForm& x, Simple s);

/// Conditions on a penetration sequence: s_i, m_i proper; only the first pair
/// may complete Delta; consecutive s are left-weighted; m_i = ∂s_i ^ s_{i+1} m_{i+1}.
bool is_penetration_sequence(const GarsideStructure& g, const std::vector<std::pair<Simple, Simple>>& trail);

}  // namespace garside

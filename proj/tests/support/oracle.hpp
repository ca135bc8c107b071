#pragma once

// Test oracles that never touch the simple-element tables: equality in a
// positive monoid decided by exhaustive rewriting with its defining relations.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "garside/canonical_form.hpp"
#include "garside/structure.hpp"

namespace oracle {

using Word = std::vector<std::uint8_t>;

struct Presentation {
  std::vector<int> weights;
  std::vector<std::pair<Word, Word>> relations;  // applied in both directions
};

/// sigma_i sigma_j = sigma_j sigma_i (|i-j| > 1), sigma_i sigma_{i+1} sigma_i = ...
/// Atoms are matched to the structure through the two points each one swaps.
Presentation classical(const garside::GarsideStructure& g);
/// Band generator relations: commuting non-interlacing pairs and
/// a_ts a_sr = a_tr a_ts = a_sr a_tr for t > s > r.
Presentation bkl(const garside::GarsideStructure& g);
/// ABA = BB with A of weight 1 and B of weight 2.
Presentation g1(const garside::GarsideStructure& g);
Presentation for_structure(const garside::GarsideStructure& g);

/// Positive-word equivalence classes, memoized by their least member.
class Rewriter {
 public:
  explicit Rewriter(Presentation p) : p_(std::move(p)) {}
  const Presentation& presentation() const { return p_; }
  /// Least word (length first, then lexicographic) equivalent to w.
  const Word& class_of(const Word& w);
  std::size_t classes_seen() const { return seen_.size(); }

 private:
  Presentation p_;
  std::map<Word, Word> seen_;  // word -> least member of its class
};

/// All words of weighted length k.
std::vector<Word> words_of_weight(const std::vector<int>& weights, int k);
/// Number of distinct monoid elements of weighted length k.
std::size_t brute_force_count(Rewriter& r, int k);

/// Delta^inf x_1 ... x_cl written out in atoms.
Word expand(const garside::CanonicalForm& x);

}  // namespace oracle

#pragma once

// Random words (uniform over atom words of a given weighted length) and exactly
// uniform random elements (via counts of left-weighted sequences).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "garside/canonical_form.hpp"
#include "garside/normal_form.hpp"
#include "garside/rng.hpp"
#include "garside/structures.hpp"

namespace garside {

/// Uniform integer in [0, bound) for big bounds, by rejection on random bits.
mpz_class random_below(Rng& rng, const mpz_class& bound);

/// Samples uniformly among atom words of weighted length k. With unit weights
/// this is i.i.d. uniform letters; with weights the letters are drawn one at a
/// time from exact word counts.
class WordSampler {
 public:
  WordSampler(const GarsideStructure& g, std::int64_t k_max);
  AtomWord sample(std::int64_t k, Rng& rng) const;
  /// Number of atom words of weighted length k.
  const mpz_class& word_count(std::int64_t k) const;

 private:
  const GarsideStructure& g_;
  bool unit_weights_;
  std::vector<mpz_class> words_;  // words_[r]: words of weight r
};

AtomWord sample_word(const GarsideStructure& g, std::int64_t k, Rng& rng);

/// Counts N(X, r) of left-weighted sequences of non-identity simples of total
/// length r whose first factor t satisfies S(t) ∩ X = ∅. X is S(∂s) for the
/// preceding factor s (the empty set at the start), so the count depends on s
/// only through that mask.
class LengthCountTable {
 public:
  static constexpr std::size_t kDefaultMaxCells = 50'000'000;

  LengthCountTable(const GarsideStructure& g, std::int64_t k_max, std::size_t max_cells = kDefaultMaxCells);

  std::int64_t k_max() const noexcept { return k_max_; }
  /// Elements of weighted length k.
  const mpz_class& count_elements(std::int64_t k) const;
  /// Number of continuations of total length r after the factor s.
  const mpz_class& count_after(Simple s, std::int64_t r) const;
  /// Exactly uniform element of weighted length k; DomainError when none exists.
  CanonicalForm sample(std::int64_t k, Rng& rng) const;

 private:
  struct Group {
    std::size_t state;   // state of the members
    int length;          // length of the members
    std::vector<Simple> members;
  };
  std::size_t state_of(AtomSet forbidden) const { return state_index_.at(forbidden); }
  const mpz_class& at(std::size_t state, std::int64_t r) const {
    return counts_[state * static_cast<std::size_t>(k_max_ + 1) + static_cast<std::size_t>(r)];
  }

  const GarsideStructure& g_;
  std::int64_t k_max_;
  std::vector<AtomSet> states_;
  std::unordered_map<AtomSet, std::size_t> state_index_;
  std::vector<std::vector<Group>> successors_;  // per state
  std::vector<mpz_class> counts_;
};

mpz_class count_elements(const GarsideStructure& g, std::int64_t k);
CanonicalForm sample_urb(const GarsideStructure& g, std::int64_t k, Rng& rng);

/// All distinct elements of weighted length k, by normalizing every atom word.
/// CapacityError when there are more than `guard` words.
std::vector<CanonicalForm> brute_force_elements(const GarsideStructure& g, std::int64_t k,
                                                std::uint64_t guard = 10'000'000);

enum class SampleMethod { word, urb };
std::string to_string(SampleMethod m);
SampleMethod parse_sample_method(const std::string& s);

struct SampleSet {
  SampleMethod method = SampleMethod::word;
  StructurePtr structure;
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  std::string rng = kRngName;
  std::vector<CanonicalForm> items;
  /// Extra header fields (run metadata); written verbatim.
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json header() const;
};

/// Draws `count` items; item i uses Rng::stream(seed, i), so the result does
/// not depend on `threads`.
SampleSet generate_samples(const StructurePtr& g, SampleMethod method, std::int64_t k, std::size_t count,
                           std::uint64_t seed, unsigned threads = 1);

/// JSON lines: the header object, then one canonical form per line.
void write_samples(std::ostream& out, const SampleSet& s);
/// `resolve` builds the structure named by the header.
SampleSet read_samples(std::istream& in, const std::function<StructurePtr(const nlohmann::json&)>& resolve);
/// Default resolver: {structure, n} through build_structure.
StructurePtr structure_from_header(const nlohmann::json& header);

}  // namespace garside

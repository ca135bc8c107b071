#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "garside/structure.hpp"

namespace garside {

/// Left normal form Delta^inf x_1 ... x_cl of an element of the positive
/// monoid; every x_i is a proper simple and consecutive pairs are left-weighted.
class CanonicalForm {
 public:
  /// The identity element.
  explicit CanonicalForm(const GarsideStructure& g) : g_(&g) {}
  /// Checked construction; throws ValidationError unless the factors are
  /// proper simples of g forming a left-weighted sequence and inf >= 0.
  CanonicalForm(const GarsideStructure& g, std::int64_t inf, std::vector<Simple> factors);
  /// No checks; for algorithms that produce normal forms by construction.
  static CanonicalForm trusted(const GarsideStructure& g, std::int64_t inf, std::vector<Simple> factors);

  const GarsideStructure& structure() const noexcept { return *g_; }
  std::int64_t inf() const noexcept { return inf_; }
  std::size_t cl() const noexcept { return factors_.size(); }
  std::int64_t sup() const noexcept { return inf_ + static_cast<std::int64_t>(factors_.size()); }
  const std::vector<Simple>& factors() const noexcept { return factors_; }
  bool is_identity() const noexcept { return inf_ == 0 && factors_.empty(); }

  /// i-th factor from the left, 1-based; identity out of range.
  Simple lambda(std::size_t i) const;
  /// i-th factor from the right, 1-based; identity out of range.
  Simple rho(std::size_t i) const;

  /// inf * length(Delta) + sum of factor lengths.
  std::int64_t weighted_length() const;
  /// S of the element: all atoms if inf > 0, S(x_1) otherwise (empty for the identity).
  AtomSet starting_set() const;

  nlohmann::json to_json() const;
  static CanonicalForm from_json(const GarsideStructure& g, const nlohmann::json& j);
  std::string to_string() const;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.g_ == b.g_ && a.inf_ == b.inf_ && a.factors_ == b.factors_;
  }

  // mutation for in-place algorithms
  std::vector<Simple>& mutable_factors() noexcept { return factors_; }
  void set_inf(std::int64_t inf) noexcept { inf_ = inf; }

 private:
  const GarsideStructure* g_;
  std::int64_t inf_ = 0;
  std::vector<Simple> factors_;
};

/// Free-function form of CanonicalForm::starting_set.
inline AtomSet canonical_starting_set(const CanonicalForm& x) { return x.starting_set(); }

}  // namespace garside

#pragma once

// Transfer matrices for penetration sequences and for normal forms, their
// exact count series, rational generating functions and growth rates.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "garside/structure.hpp"

namespace garside {

struct GrowthLimits {
  std::size_t max_states = 200'000;     // transfer matrix dimension
  std::size_t max_series_terms = 400;    // exact terms for recurrence detection
};

/// 0/1 matrix stored as successor lists.
struct TransferMatrix {
  std::vector<std::vector<std::uint32_t>> rows;
  // exactly one of these is filled, depending on the matrix kind
  std::vector<std::pair<Simple, Simple>> pair_states;
  std::vector<Simple> simple_states;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t entries() const;
  bool at(std::size_t i, std::size_t j) const;
};

/// States (s, m) with s, m proper and s m simple; (s1,m1) -> (s2,m2) iff
/// s2 m2 != Delta, s1 s2 is left-weighted and m1 = ∂s1 ∧ s2 m2.
TransferMatrix build_pseq_matrix(const GarsideStructure& g, const GrowthLimits& limits = {});
/// States: proper simples; s -> t iff s t is left-weighted.
TransferMatrix build_element_matrix(const GarsideStructure& g, const GrowthLimits& limits = {});

/// Walk counts: index 0 is 1, index k >= 1 is 1ᵀ M^{k-1} 1. Plain repeated
/// matrix-vector products.
std::vector<mpz_class> count_series(const TransferMatrix& m, std::size_t k_max);

/// Coarsest partition of the states such that all states of a block have the
/// same number of successors in every block. Walk counts only depend on it.
struct LumpedMatrix {
  std::vector<std::size_t> block_size;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows;  // (block, multiplicity)

  std::size_t size() const noexcept { return rows.size(); }
};
LumpedMatrix lump(const TransferMatrix& m);
/// Same series as count_series on the original matrix.
std::vector<mpz_class> count_series(const LumpedMatrix& m, std::size_t k_max);

/// Integer polynomial, coefficients low to high, no trailing zeros.
struct Polynomial {
  std::vector<mpz_class> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<mpz_class> coeffs);
  static Polynomial from_ints(const std::vector<long>& coeffs);

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const noexcept { return c.empty(); }
  mpz_class operator[](std::size_t i) const { return i < c.size() ? c[i] : mpz_class(0); }
  mpq_class eval(const mpq_class& z) const;
  std::string to_string() const;  // highest power first, e.g. "8z^2+13z+1"
  nlohmann::json to_json() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// num/den in lowest terms with den(0) = 1.
struct RationalGF {
  Polynomial num;
  Polynomial den;

  /// Brings num/den to the normal form above; the input need not be reduced.
  static RationalGF normalized(const Polynomial& num, const Polynomial& den);
  bool is_polynomial() const { return den.degree() == 0; }
  std::vector<mpz_class> expand(std::size_t terms) const;
  std::string to_string() const;
  nlohmann::json to_json() const;

  friend bool operator==(const RationalGF&, const RationalGF&) = default;
};

/// Shortest linear recurrence of the prefix over the rationals, turned into a
/// generating function and checked against the whole prefix. NeedsMoreTermsError
/// unless the prefix has at least 2·dim + 2 terms and the recurrence is
/// confirmed by the terms after those.
RationalGF generating_function(const std::vector<mpz_class>& series, std::size_t dim);

struct GrowthRate {
  double rate = 0;
  bool unique_minimal_pole = false;
  bool exact = false;      // rate is an integer certified by exact evaluation
  bool certified = false;  // the exact denominator changes sign at 1/rate
  std::size_t poles_at_minimum = 0;
};

/// 1 / (smallest modulus of a denominator root); 0 for a polynomial.
/// UsageError unless gf is in lowest terms.
GrowthRate growth_rate(const RationalGF& gf);

/// (c_{2h} / c_h)^{1/h}, a root-test style estimate of the growth rate that
/// cancels the constant factor; nullopt when a term is missing or zero.
std::optional<double> ratio_estimate(const std::vector<mpz_class>& series, std::size_t h);

/// Last k with a non-zero count if the counts die out, nullopt (infinity) otherwise.
std::optional<std::size_t> max_pseq_length(const TransferMatrix& m);

enum class Verdict { pd_bounded, expected_pd_bounded, inconclusive };
std::string to_string(Verdict v);

struct SeriesAnalysis {
  std::size_t states = 0;
  std::size_t lumped_states = 0;
  std::vector<mpz_class> series;
  RationalGF gf;
  GrowthRate rate;
  std::optional<double> ratio_check;
};

SeriesAnalysis analyze(const TransferMatrix& m, const GrowthLimits& limits = {});

struct GrowthReport {
  std::string structure;
  RationalGF pseq_gf;
  RationalGF element_gf;
  double alpha = 0;
  double beta = 0;
  std::optional<std::size_t> pseq_max_length;
  bool unique_minimal_pole = false;
  Verdict verdict = Verdict::inconclusive;
  // diagnostics
  SeriesAnalysis pseq;
  SeriesAnalysis element;

  nlohmann::json to_json() const;
};

GrowthReport check_criterion(const GarsideStructure& g, const GrowthLimits& limits = {});

/// `structure,alpha,beta` rows.
void write_scatter_csv(std::ostream& out, const std::vector<GrowthReport>& reports,
                       const nlohmann::json& metadata = nullptr);

}  // namespace garside

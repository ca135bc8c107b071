#pragma once

// Per-position statistics of normal forms, stable regions, penetration
// distance statistics and their CSV forms.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "garside/sampling.hpp"

namespace garside {

enum class Orientation { left, right };
std::string to_string(Orientation o);

/// Sums per factor position (1-based); position i aggregates the items with
/// cl >= i, counting factors from the chosen end.
class PositionStats {
 public:
  PositionStats(std::size_t atom_count, Orientation orientation);

  void add(const CanonicalForm& x);
  /// Aggregation is a plain sum, so merging chunks in any order gives the same result.
  void merge(const PositionStats& other);

  Orientation orientation() const noexcept { return orientation_; }
  std::size_t atom_count() const noexcept { return atoms_; }
  std::size_t items() const noexcept { return items_; }
  std::size_t min_cl() const noexcept { return min_cl_; }
  /// Largest position with at least one item.
  std::size_t positions() const noexcept { return covered_.size(); }

  std::uint64_t covered(std::size_t pos) const { return covered_.at(pos - 1); }
  double mean_len(std::size_t pos) const;
  double start_freq(std::size_t pos, std::size_t atom) const;
  double finish_freq(std::size_t pos, std::size_t atom) const;

  friend bool operator==(const PositionStats&, const PositionStats&) = default;

 private:
  void grow(std::size_t positions);

  std::size_t atoms_;
  Orientation orientation_;
  std::size_t items_ = 0;
  std::size_t min_cl_ = 0;
  std::vector<std::uint64_t> covered_;
  std::vector<std::uint64_t> len_sum_;
  std::vector<std::uint64_t> start_hits_;   // position-major, atoms_ per position
  std::vector<std::uint64_t> finish_hits_;
};

/// DomainError on an empty sample.
PositionStats position_stats(const SampleSet& sample, Orientation orientation = Orientation::left);

struct StableRegion {
  // positions of the minimizing interval, whether accepted or not
  std::size_t start = 0;
  std::size_t end = 0;
  double ratio = 0;         // range / (end - start)
  double range = 0;         // max - min of f on the interval
  double fitted_range = 0;  // |slope| * (end - start)
  bool accepted = false;

  bool empty() const noexcept { return !accepted; }
  nlohmann::json to_json() const;
};

inline constexpr std::size_t kDefaultMinWidth = 10;

/// Interval of at least w_min positions minimizing range/width, accepted if
/// the least-squares line varies by less than a tenth of the range on it.
/// f[0] sits at position `first`. DomainError when f has fewer than w_min values.
StableRegion stable_region(const std::vector<double>& f, std::size_t w_min = kDefaultMinWidth, std::size_t first = 1);

struct SampleStableRegion {
  std::optional<std::pair<std::size_t, std::size_t>> region;  // intersection; nullopt when empty
  std::size_t domain_end = 0;                                 // positions 1..domain_end were searched
  std::vector<std::pair<std::string, StableRegion>> functions;

  nlohmann::json to_json() const;
};

/// Intersection of the stable regions of the mean factor length and every
/// starting and finishing frequency. Only positions covered by every item
/// are searched, so each value is an average over the whole sample.
SampleStableRegion sample_stable_region(const PositionStats& stats, std::size_t w_min = kDefaultMinWidth);

struct PdStats {
  std::uint64_t evaluations = 0;
  double mean = 0;
  std::vector<double> mean_per_atom;
  std::map<int, std::uint64_t> histogram;  // pd -> count
  int max_pd = 0;

  double frequency(int pd) const;
  nlohmann::json to_json() const;
};

/// pd(x, a) for every item x and every atom a.
PdStats pd_stats(const SampleSet& sample, unsigned threads = 1);

/// Total variation distance between the empirical laws of the i-th factor
/// (identity when cl < i) of two samples. UsageError for mixed structures.
double distribution_distance(const SampleSet& a, const SampleSet& b, std::size_t i);

struct PowerFit {
  double exponent = 0;
  double log_constant = 0;
  double r_squared = 0;
  double max_abs_residual = 0;  // in log space

  nlohmann::json to_json() const;
};

/// Least-squares fit of log y = c log n + b. Needs >= 3 pairs with positive entries.
PowerFit power_fit(const std::vector<std::pair<double, double>>& pairs);

struct StableRegionRow {
  std::int64_t k;
  int n;
  std::string method;
  std::optional<std::pair<std::size_t, std::size_t>> region;
};

// CSV writers. With non-null metadata the first line is "# " + compact JSON.
void write_mean_length_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata = nullptr);
void write_start_freq_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata = nullptr);
void write_finish_freq_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata = nullptr);
void write_stable_region_csv(std::ostream& out, const std::vector<StableRegionRow>& rows,
                             const nlohmann::json& metadata = nullptr);
void write_pd_histogram_csv(std::ostream& out, const PdStats& s, const nlohmann::json& metadata = nullptr);
void write_pd_means_csv(std::ostream& out, const PdStats& s, const nlohmann::json& metadata = nullptr);

/// 6 significant digits, classic locale.
std::string format_number(double v);

}  // namespace garside

#pragma once

// Wall-clock comparison of the normal-form algorithms on random words.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "garside/structure.hpp"

namespace garside {

struct BenchConfig {
  std::vector<std::int64_t> ks;
  std::size_t count = 16;  // words per k
  std::uint64_t seed = 1;
  bool linear = true;
  bool baseline = true;
  std::int64_t baseline_max_k = 8192;  // the baseline is quadratic
};

struct BenchRow {
  std::int64_t k = 0;
  std::string algo;
  double mean_ns = 0;
  double stddev_ns = 0;
};

/// Times normal_form_linear ("linear") and normal_form_baseline ("baseline")
/// on the same Word_k inputs.
std::vector<BenchRow> run_benchmark(const GarsideStructure& g, const BenchConfig& config);

/// Least-squares slope of log(mean_ns) against log(k) for one algorithm,
/// restricted to k <= max_k; nullopt with fewer than two distinct k.
std::optional<double> loglog_slope(const std::vector<BenchRow>& rows, const std::string& algo,
                                   std::int64_t max_k = INT64_MAX);

/// `k,algo,mean_ns,stddev_ns`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, const nlohmann::json& metadata = nullptr);

}  // namespace garside

#include "garside/bench.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "garside/normal_form.hpp"
#include "garside/sampling.hpp"
#include "garside/stats.hpp"

namespace garside {

namespace {

template <class F>
BenchRow time_all(std::int64_t k, const std::string& algo, const std::vector<AtomWord>& words, F&& run) {
  std::vector<double> ns;
  volatile std::size_t sink = 0;
  run(words.front());  // warm up caches
  for (const auto& w : words) {
    const auto t0 = std::chrono::steady_clock::now();
    const CanonicalForm x = run(w);
    const auto t1 = std::chrono::steady_clock::now();
    sink = sink + x.cl();
    ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
  }
  double mean = 0;
  for (double v : ns) mean += v;
  mean /= static_cast<double>(ns.size());
  double var = 0;
  for (double v : ns) var += (v - mean) * (v - mean);
  const double sd = ns.size() > 1 ? std::sqrt(var / static_cast<double>(ns.size() - 1)) : 0.0;
  return BenchRow{k, algo, mean, sd};
}

}  // namespace

std::vector<BenchRow> run_benchmark(const GarsideStructure& g, const BenchConfig& config) {
  std::vector<BenchRow> rows;
  if (config.count == 0) return rows;
  for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
    const std::int64_t k = config.ks[ki];
    const WordSampler sampler(g, k);
    std::vector<AtomWord> words;
    for (std::size_t i = 0; i < config.count; ++i) {
      Rng rng = Rng::stream(config.seed, ki * config.count + i);
      words.push_back(sampler.sample(k, rng));
    }
    if (config.linear) {
      rows.push_back(time_all(k, "linear", words, [](const AtomWord& w) { return normal_form_linear(w); }));
    }
    if (config.baseline && k <= config.baseline_max_k) {
      rows.push_back(time_all(k, "baseline", words, [](const AtomWord& w) { return normal_form_baseline(w); }));
    }
  }
  return rows;
}

std::optional<double> loglog_slope(const std::vector<BenchRow>& rows, const std::string& algo, std::int64_t max_k) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.algo != algo || r.k > max_k || r.k <= 0 || r.mean_ns <= 0) continue;
    xs.push_back(std::log(static_cast<double>(r.k)));
    ys.push_back(std::log(r.mean_ns));
  }
  if (xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, const nlohmann::json& metadata) {
  if (!metadata.is_null()) out << "# " << metadata.dump() << '\n';
  out << "k,algo,mean_ns,stddev_ns\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.algo << ',' << format_number(r.mean_ns) << ',' << format_number(r.stddev_ns) << '\n';
  }
}

}  // namespace garside

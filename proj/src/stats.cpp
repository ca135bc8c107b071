#include "garside/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "garside/error.hpp"

namespace garside {

std::string to_string(Orientation o) { return o == Orientation::left ? "left" : "right"; }

PositionStats::PositionStats(std::size_t atom_count, Orientation orientation)
    : atoms_(atom_count), orientation_(orientation) {}

void PositionStats::grow(std::size_t positions) {
  if (positions <= covered_.size()) return;
  covered_.resize(positions, 0);
  len_sum_.resize(positions, 0);
  start_hits_.resize(positions * atoms_, 0);
  finish_hits_.resize(positions * atoms_, 0);
}

void PositionStats::add(const CanonicalForm& x) {
  const GarsideStructure& g = x.structure();
  if (g.atom_count() != atoms_) throw UsageError("position stats: atom count mismatch");
  const std::size_t cl = x.cl();
  min_cl_ = items_ == 0 ? cl : std::min(min_cl_, cl);
  ++items_;
  grow(cl);
  const auto& f = x.factors();
  for (std::size_t i = 0; i < cl; ++i) {
    const Simple s = orientation_ == Orientation::left ? f[i] : f[cl - 1 - i];
    ++covered_[i];
    len_sum_[i] += static_cast<std::uint64_t>(g.length(s));
    const AtomSet st = g.starting_set(s);
    const AtomSet fi = g.finishing_set(s);
    for (std::size_t a = 0; a < atoms_; ++a) {
      start_hits_[i * atoms_ + a] += (st >> a) & 1U;
      finish_hits_[i * atoms_ + a] += (fi >> a) & 1U;
    }
  }
}

void PositionStats::merge(const PositionStats& other) {
  if (other.atoms_ != atoms_ || other.orientation_ != orientation_) {
    throw UsageError("position stats: cannot merge different layouts");
  }
  if (other.items_ == 0) return;
  min_cl_ = items_ == 0 ? other.min_cl_ : std::min(min_cl_, other.min_cl_);
  items_ += other.items_;
  grow(other.covered_.size());
  for (std::size_t i = 0; i < other.covered_.size(); ++i) {
    covered_[i] += other.covered_[i];
    len_sum_[i] += other.len_sum_[i];
  }
  for (std::size_t i = 0; i < other.start_hits_.size(); ++i) {
    start_hits_[i] += other.start_hits_[i];
    finish_hits_[i] += other.finish_hits_[i];
  }
}

double PositionStats::mean_len(std::size_t pos) const {
  return static_cast<double>(len_sum_.at(pos - 1)) / static_cast<double>(covered_.at(pos - 1));
}

double PositionStats::start_freq(std::size_t pos, std::size_t atom) const {
  return static_cast<double>(start_hits_.at((pos - 1) * atoms_ + atom)) / static_cast<double>(covered_.at(pos - 1));
}

double PositionStats::finish_freq(std::size_t pos, std::size_t atom) const {
  return static_cast<double>(finish_hits_.at((pos - 1) * atoms_ + atom)) / static_cast<double>(covered_.at(pos - 1));
}

PositionStats position_stats(const SampleSet& sample, Orientation orientation) {
  if (sample.items.empty()) throw DomainError("position stats: empty sample");
  PositionStats s(sample.structure->atom_count(), orientation);
  for (const auto& x : sample.items) s.add(x);
  return s;
}

// ---------------------------------------------------------------------------

nlohmann::json StableRegion::to_json() const {
  return {{"start", start}, {"end", end},   {"ratio", ratio},
          {"range", range}, {"fitted_range", fitted_range}, {"accepted", accepted}};
}

StableRegion stable_region(const std::vector<double>& f, std::size_t w_min, std::size_t first) {
  if (w_min < 2) throw UsageError("stable region: minimum width must be at least 2");
  if (f.size() < w_min) {
    throw DomainError("stable region: " + std::to_string(f.size()) + " positions, need at least " +
                      std::to_string(w_min));
  }
  const std::size_t n = f.size();
  std::size_t best_a = 0, best_b = n - 1;
  double best_range = std::numeric_limits<double>::infinity();
  double best_width = 1;
  for (std::size_t a = 0; a + w_min <= n; ++a) {
    double lo = f[a], hi = f[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      lo = std::min(lo, f[b]);
      hi = std::max(hi, f[b]);
      if (b - a + 1 < w_min) continue;
      const double range = hi - lo;
      const double width = static_cast<double>(b - a);
      // range/width < best_range/best_width, ties to the wider, then the earlier
      const double lhs = range * best_width;
      const double rhs = best_range * width;
      if (lhs < rhs || (lhs == rhs && width > best_width)) {
        best_a = a;
        best_b = b;
        best_range = range;
        best_width = width;
      }
    }
  }

  // least-squares line on the chosen interval
  const std::size_t m = best_b - best_a + 1;
  double mx = 0, my = 0;
  for (std::size_t i = best_a; i <= best_b; ++i) {
    mx += static_cast<double>(i);
    my += f[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, sxy = 0;
  for (std::size_t i = best_a; i <= best_b; ++i) {
    const double dx = static_cast<double>(i) - mx;
    sxx += dx * dx;
    sxy += dx * (f[i] - my);
  }
  const double slope = sxy / sxx;

  StableRegion r;
  r.start = best_a + first;
  r.end = best_b + first;
  r.range = best_range;
  r.ratio = best_range / best_width;
  r.fitted_range = std::abs(slope) * best_width;
  // a flat interval has no trend at all
  r.accepted = best_range == 0 || r.fitted_range < 0.1 * best_range;
  return r;
}

nlohmann::json SampleStableRegion::to_json() const {
  nlohmann::json j;
  j["region"] = region ? nlohmann::json{region->first, region->second} : nlohmann::json(nullptr);
  j["domain_end"] = domain_end;
  auto& fs = j["functions"] = nlohmann::json::object();
  for (const auto& [name, r] : functions) fs[name] = r.to_json();
  return j;
}

SampleStableRegion sample_stable_region(const PositionStats& stats, std::size_t w_min) {
  SampleStableRegion out;
  out.domain_end = stats.min_cl();
  const std::size_t p = out.domain_end;
  if (p < w_min) {
    throw DomainError("stable region: every item covers only " + std::to_string(p) + " positions, need " +
                      std::to_string(w_min));
  }
  auto run = [&](const std::string& name, auto value) {
    std::vector<double> f(p);
    for (std::size_t i = 1; i <= p; ++i) f[i - 1] = value(i);
    out.functions.emplace_back(name, stable_region(f, w_min, 1));
  };
  run("LEN", [&](std::size_t i) { return stats.mean_len(i); });
  for (std::size_t a = 0; a < stats.atom_count(); ++a) {
    run("start" + std::to_string(a + 1), [&](std::size_t i) { return stats.start_freq(i, a); });
  }
  for (std::size_t a = 0; a < stats.atom_count(); ++a) {
    run("finish" + std::to_string(a + 1), [&](std::size_t i) { return stats.finish_freq(i, a); });
  }
  std::size_t lo = 1, hi = p;
  for (const auto& [name, r] : out.functions) {
    if (r.empty()) return out;
    lo = std::max(lo, r.start);
    hi = std::min(hi, r.end);
  }
  if (lo <= hi) out.region = std::make_pair(lo, hi);
  return out;
}

// ---------------------------------------------------------------------------

double PdStats::frequency(int pd) const {
  const auto it = histogram.find(pd);
  if (it == histogram.end() || evaluations == 0) return 0;
  return static_cast<double>(it->second) / static_cast<double>(evaluations);
}

nlohmann::json PdStats::to_json() const {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [pd, count] : histogram) hist[std::to_string(pd)] = count;
  return {{"evaluations", evaluations}, {"mean", mean},       {"mean_per_atom", mean_per_atom},
          {"histogram", hist},          {"max_pd", max_pd}};
}

namespace {

struct PdAccumulator {
  std::vector<std::uint64_t> per_atom;
  std::map<int, std::uint64_t> histogram;

  void merge(const PdAccumulator& o) {
    for (std::size_t a = 0; a < per_atom.size(); ++a) per_atom[a] += o.per_atom[a];
    for (const auto& [pd, c] : o.histogram) histogram[pd] += c;
  }
};

}  // namespace

PdStats pd_stats(const SampleSet& sample, unsigned threads) {
  const GarsideStructure& g = *sample.structure;
  const std::size_t atoms = g.atom_count();
  const std::size_t count = sample.items.size();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));

  std::vector<PdAccumulator> acc(threads, PdAccumulator{std::vector<std::uint64_t>(atoms, 0), {}});
  auto work = [&](unsigned t) {
    const std::size_t lo = count * t / threads, hi = count * (t + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t a = 0; a < atoms; ++a) {
        const int pd = penetration_distance(sample.items[i], g.atoms()[a]);
        acc[t].per_atom[a] += static_cast<std::uint64_t>(pd);
        ++acc[t].histogram[pd];
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (unsigned t = 1; t < threads; ++t) acc[0].merge(acc[t]);

  PdStats s;
  s.evaluations = static_cast<std::uint64_t>(count) * atoms;
  s.histogram = std::move(acc[0].histogram);
  s.mean_per_atom.assign(atoms, 0);
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < atoms; ++a) {
    total += acc[0].per_atom[a];
    if (count > 0) s.mean_per_atom[a] = static_cast<double>(acc[0].per_atom[a]) / static_cast<double>(count);
  }
  if (s.evaluations > 0) s.mean = static_cast<double>(total) / static_cast<double>(s.evaluations);
  if (!s.histogram.empty()) s.max_pd = s.histogram.rbegin()->first;
  return s;
}

double distribution_distance(const SampleSet& a, const SampleSet& b, std::size_t i) {
  if (a.structure.get() != b.structure.get() &&
      (!a.structure || !b.structure || a.structure->fingerprint() != b.structure->fingerprint())) {
    throw UsageError("distribution distance: samples come from different structures");
  }
  if (i == 0) throw UsageError("distribution distance: positions start at 1");
  if (a.items.empty() || b.items.empty()) throw DomainError("distribution distance: empty sample");
  std::unordered_map<Simple, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& x : a.items) ++counts[x.lambda(i)].first;
  for (const auto& x : b.items) ++counts[x.lambda(i)].second;
  const double na = static_cast<double>(a.items.size());
  const double nb = static_cast<double>(b.items.size());
  double sum = 0;
  for (const auto& [s, c] : counts) sum += std::abs(static_cast<double>(c.first) / na - static_cast<double>(c.second) / nb);
  return sum / 2;
}

// ---------------------------------------------------------------------------

nlohmann::json PowerFit::to_json() const {
  return {{"exponent", exponent},
          {"log_constant", log_constant},
          {"r_squared", r_squared},
          {"max_abs_residual", max_abs_residual}};
}

PowerFit power_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw DomainError("power fit: need at least 3 points");
  std::vector<double> xs, ys;
  for (const auto& [n, y] : pairs) {
    if (!(n > 0) || !(y > 0)) throw DomainError("power fit: values must be positive");
    xs.push_back(std::log(n));
    ys.push_back(std::log(y));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw DomainError("power fit: all n are equal");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.log_constant = my - fit.exponent * mx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.exponent * xs[i] + fit.log_constant);
    sse += r * r;
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
  }
  fit.r_squared = syy == 0 ? 1.0 : 1.0 - sse / syy;
  return fit;
}

// ---------------------------------------------------------------------------
// CSV

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << v;
  return os.str();
}

namespace {

void preamble(std::ostream& out, const nlohmann::json& metadata) {
  if (!metadata.is_null()) out << "# " << metadata.dump() << '\n';
}

void write_frequencies(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata, bool start) {
  preamble(out, metadata);
  out << "pos";
  for (std::size_t a = 0; a < s.atom_count(); ++a) out << ",gen" << (a + 1);
  out << '\n';
  for (std::size_t p = 1; p <= s.positions(); ++p) {
    out << p;
    for (std::size_t a = 0; a < s.atom_count(); ++a) {
      out << ',' << format_number(start ? s.start_freq(p, a) : s.finish_freq(p, a));
    }
    out << '\n';
  }
}

}  // namespace

void write_mean_length_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata) {
  preamble(out, metadata);
  out << "pos,LEN\n";
  for (std::size_t p = 1; p <= s.positions(); ++p) out << p << ',' << format_number(s.mean_len(p)) << '\n';
}

void write_start_freq_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata) {
  write_frequencies(out, s, metadata, true);
}

void write_finish_freq_csv(std::ostream& out, const PositionStats& s, const nlohmann::json& metadata) {
  write_frequencies(out, s, metadata, false);
}

void write_stable_region_csv(std::ostream& out, const std::vector<StableRegionRow>& rows,
                             const nlohmann::json& metadata) {
  preamble(out, metadata);
  out << "k,n,method,start,end\n";
  // an empty region leaves start and end blank
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << r.method << ',';
    if (r.region) out << r.region->first << ',' << r.region->second;
    else out << ',';
    out << '\n';
  }
}

void write_pd_histogram_csv(std::ostream& out, const PdStats& s, const nlohmann::json& metadata) {
  preamble(out, metadata);
  out << "pd,freq\n";
  for (const auto& [pd, count] : s.histogram) out << pd << ',' << format_number(s.frequency(pd)) << '\n';
}

void write_pd_means_csv(std::ostream& out, const PdStats& s, const nlohmann::json& metadata) {
  preamble(out, metadata);
  out << "gen,mean_pd\n";
  for (std::size_t a = 0; a < s.mean_per_atom.size(); ++a) {
    out << (a + 1) << ',' << format_number(s.mean_per_atom[a]) << '\n';
  }
}

}  // namespace garside

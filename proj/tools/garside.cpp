// Command-line driver: sample | stats | growth | bench | validate.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "garside/bench.hpp"
#include "garside/error.hpp"
#include "garside/growth.hpp"
#include "garside/sampling.hpp"
#include "garside/stats.hpp"
#include "garside/structures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace garside;

namespace {

constexpr const char* kTool = "garside";

unsigned default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

struct RunConfig {
  std::string subcommand;
  std::string structure = "classical";
  int n = 3;
  std::string table_mode = "auto";
  std::int64_t k = -1;
  std::vector<std::int64_t> ks;
  std::size_t count = 9999;
  std::uint64_t seed = 1;
  std::string method = "urb";
  std::string output;
  std::string input;
  std::string output_dir;
  std::size_t w_min = kDefaultMinWidth;
  std::size_t max_table_simples = GrowthLimits{}.max_states;
  std::size_t max_series_terms = GrowthLimits{}.max_series_terms;
  unsigned threads = default_threads();
  std::vector<std::string> targets;
  std::string scatter;
  std::string import_path;
  std::string export_path;
  std::int64_t baseline_max_k = BenchConfig{}.baseline_max_k;
  std::vector<std::string> algos{"linear", "baseline"};
  bool all = false;

  // only the settings the subcommand reads
  json to_json() const {
    json j{{"subcommand", subcommand}, {"threads", threads}};
    auto structure_fields = [&] {
      if (!import_path.empty()) {
        j["import"] = import_path;
        return;
      }
      j["structure"] = structure;
      if (structure != "g1") j["n"] = n;
      j["table_mode"] = table_mode;
    };
    if (subcommand == "sample") {
      structure_fields();
      j.update({{"k", k}, {"count", count}, {"method", method}, {"seed", seed}, {"output", output}});
    } else if (subcommand == "stats") {
      j.update({{"input", input}, {"output_dir", output_dir}, {"w_min", w_min}});
      if (!import_path.empty()) j["import"] = import_path;
    } else if (subcommand == "growth") {
      if (targets.empty()) structure_fields();
      else j["targets"] = targets;
      j.update({{"max_table_simples", max_table_simples}, {"max_series_terms", max_series_terms}});
      if (!output.empty()) j["output"] = output;
      if (!scatter.empty()) j["scatter"] = scatter;
    } else if (subcommand == "bench") {
      structure_fields();
      j.update({{"k_list", ks}, {"count", count}, {"seed", seed}, {"algos", algos}, {"baseline_max_k", baseline_max_k}});
      if (!output.empty()) j["output"] = output;
    } else if (subcommand == "validate") {
      if (all) j["all"] = true;
      else structure_fields();
      j["seed"] = seed;
      if (!export_path.empty()) j["export"] = export_path;
      if (!output.empty()) j["output"] = output;
    }
    return j;
  }

  GrowthLimits limits() const { return GrowthLimits{max_table_simples, max_series_terms}; }
};

TableMode parse_table_mode(const std::string& s) {
  if (s == "auto") return TableMode::automatic;
  if (s == "table") return TableMode::table;
  if (s == "permutation") return TableMode::permutation;
  throw UsageError("unknown table mode '" + s + "'");
}

StructurePtr structure_of(const RunConfig& c) {
  if (!c.import_path.empty()) {
    std::ifstream in(c.import_path);
    if (!in) throw UsageError("cannot open " + c.import_path);
    try {
      return import_structure(json::parse(in));
    } catch (const json::exception& e) {
      throw ParseError(c.import_path + ": " + e.what());
    }
  }
  return build_structure(c.structure, c.n, parse_table_mode(c.table_mode));
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

json metadata(const RunConfig& c, const GarsideStructure* g) {
  json m{{"tool", kTool}, {"version", GARSIDE_VERSION}, {"config", c.to_json()}, {"rng", kRngName}};
  if (g) {
    m["structure"] = g->label();
    m["fingerprint"] = hex(g->fingerprint());
  }
  return m;
}

// Outputs go to temporary files that are renamed only when everything has
// been written; on failure nothing is left behind.
class Outputs {
 public:
  Outputs() = default;
  Outputs(const Outputs&) = delete;
  Outputs& operator=(const Outputs&) = delete;
  ~Outputs() {
    if (committed_) return;
    for (auto& f : files_) {
      f.stream.reset();
      std::error_code ec;
      fs::remove(f.tmp, ec);
    }
  }

  std::ostream& open(const std::string& path) {
    if (path == "-") return stdout_buffer_;
    File f;
    f.path = path;
    f.tmp = path + ".tmp";
    f.stream = std::make_unique<std::ofstream>(f.tmp, std::ios::binary);
    if (!*f.stream) throw UsageError("cannot write " + path);
    files_.push_back(std::move(f));
    return *files_.back().stream;
  }

  void commit() {
    for (auto& f : files_) {
      f.stream->flush();
      if (!*f.stream) throw Error(ErrorKind::capacity, "write failed: " + f.path);
      f.stream.reset();
    }
    for (auto& f : files_) fs::rename(f.tmp, f.path);
    std::cout << stdout_buffer_.str() << std::flush;
    committed_ = true;
  }

 private:
  struct File {
    std::string path, tmp;
    std::unique_ptr<std::ofstream> stream;
  };
  std::vector<File> files_;
  std::ostringstream stdout_buffer_;
  bool committed_ = false;
};

// ---------------------------------------------------------------------------

void cmd_sample(const RunConfig& c) {
  if (c.k < 0) throw UsageError("--k is required and must be non-negative");
  const StructurePtr g = structure_of(c);
  SampleSet s = generate_samples(g, parse_sample_method(c.method), c.k, c.count, c.seed, c.threads);
  s.metadata = metadata(c, g.get());
  Outputs out;
  write_samples(out.open(c.output), s);
  out.commit();
}

void cmd_stats(const RunConfig& c) {
  std::ifstream in(c.input);
  if (!in) throw UsageError("cannot open " + c.input);
  const SampleSet s = read_samples(in, [&](const json& h) {
    if (!c.import_path.empty()) return structure_of(c);
    return structure_from_header(h);
  });
  if (s.items.empty()) throw DomainError("sample is empty");
  json meta = metadata(c, s.structure.get());
  meta["sample"] = s.header();
  meta["sample"].erase("meta");
  meta["w_min"] = c.w_min;

  const PositionStats left = position_stats(s, Orientation::left);
  const PositionStats right = position_stats(s, Orientation::right);
  std::optional<SampleStableRegion> region;
  json summary;
  try {
    region = sample_stable_region(left, c.w_min);
    summary["stable_region"] = region->to_json();
  } catch (const DomainError& e) {
    summary["stable_region"] = {{"region", nullptr}, {"reason", e.what()}};
  }
  const PdStats pd = pd_stats(s, c.threads);
  summary["pd"] = pd.to_json();
  summary["items"] = s.items.size();

  fs::create_directories(c.output_dir);
  const fs::path dir(c.output_dir);
  Outputs out;
  write_mean_length_csv(out.open((dir / "mean_length.csv").string()), left, meta);
  write_start_freq_csv(out.open((dir / "start_freq.csv").string()), left, meta);
  write_finish_freq_csv(out.open((dir / "finish_freq.csv").string()), left, meta);
  write_mean_length_csv(out.open((dir / "mean_length_right.csv").string()), right, meta);
  write_start_freq_csv(out.open((dir / "start_freq_right.csv").string()), right, meta);
  write_finish_freq_csv(out.open((dir / "finish_freq_right.csv").string()), right, meta);
  write_stable_region_csv(out.open((dir / "stable_region.csv").string()),
                          {StableRegionRow{s.k, s.structure->strands(), to_string(s.method),
                                           region ? region->region : std::nullopt}},
                          meta);
  write_pd_histogram_csv(out.open((dir / "pd_hist.csv").string()), pd, meta);
  write_pd_means_csv(out.open((dir / "pd_means.csv").string()), pd, meta);
  ordered_json doc;
  doc["meta"] = meta;
  doc["summary"] = summary;
  out.open((dir / "summary.json").string()) << doc.dump(2) << '\n';
  out.commit();
}

// "B4", "BKL5", "G1"
StructurePtr parse_target(const std::string& t, TableMode mode) {
  std::string up;
  for (char ch : t) up += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  auto number = [&](std::size_t from) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(up.substr(from), &used);
      if (used + from == up.size()) return n;
    } catch (const std::exception&) {
    }
    throw UsageError("bad structure name '" + t + "' (expected e.g. B4, BKL5, G1)");
  };
  if (up == "G1") return build_g1();
  if (up.rfind("BKL", 0) == 0) return build_structure("bkl", number(3), TableMode::automatic);
  if (up.rfind("B", 0) == 0) return build_structure("classical", number(1), mode);
  throw UsageError("bad structure name '" + t + "' (expected e.g. B4, BKL5, G1)");
}

void cmd_growth(const RunConfig& c) {
  std::vector<StructurePtr> gs;
  if (c.targets.empty()) {
    gs.push_back(structure_of(c));
  } else {
    for (const auto& t : c.targets) gs.push_back(parse_target(t, parse_table_mode(c.table_mode)));
  }
  // a growth analysis needs the simples as a table
  for (const auto& g : gs) {
    if (!g->table_mode()) {
      throw CapacityError(g->label() + " is not in table mode; transfer matrices need max-table-simples >= " +
                          std::to_string(g->simple_count()) + " and a table-mode structure");
    }
    if (g->simple_count() > c.max_table_simples) {
      throw CapacityError(g->label() + " has " + std::to_string(g->simple_count()) +
                          " simples, above max-table-simples = " + std::to_string(c.max_table_simples));
    }
  }

  std::vector<GrowthReport> reports(gs.size());
  std::vector<std::exception_ptr> errors(gs.size());
  const unsigned threads = std::max(1U, std::min<unsigned>(c.threads, static_cast<unsigned>(gs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < gs.size(); i += threads) {
        try {
          reports[i] = check_criterion(*gs[i], c.limits());
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const json meta = metadata(c, gs.size() == 1 ? gs.front().get() : nullptr);
  ordered_json doc;
  doc["meta"] = meta;
  if (reports.size() == 1) {
    const ordered_json single = ordered_json::parse(reports.front().to_json().dump());
    for (const auto& [key, value] : single.items()) doc[key] = value;
  } else {
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) doc["reports"].push_back(ordered_json::parse(r.to_json().dump()));
  }
  Outputs out;
  out.open(c.output.empty() ? "-" : c.output) << doc.dump(2) << '\n';
  if (!c.scatter.empty()) write_scatter_csv(out.open(c.scatter), reports, meta);
  out.commit();
}

void cmd_bench(const RunConfig& c) {
  const StructurePtr g = structure_of(c);
  BenchConfig b;
  b.ks = c.ks;
  b.count = c.count;
  b.seed = c.seed;
  b.linear = std::find(c.algos.begin(), c.algos.end(), "linear") != c.algos.end();
  b.baseline = std::find(c.algos.begin(), c.algos.end(), "baseline") != c.algos.end();
  b.baseline_max_k = c.baseline_max_k;
  const auto rows = run_benchmark(*g, b);

  json slopes = json::object();
  for (const std::string algo : {"linear", "baseline"}) {
    const auto s = loglog_slope(rows, algo);
    slopes[algo] = s ? json(*s) : json(nullptr);
  }
  // the baseline only runs up to baseline_max_k; compare there too
  const auto common_linear = loglog_slope(rows, "linear", b.baseline_max_k);
  slopes["linear_on_baseline_grid"] = common_linear ? json(*common_linear) : json(nullptr);

  Outputs out;
  write_bench_csv(out.open(c.output.empty() ? "-" : c.output), rows, metadata(c, g.get()));
  if (!c.output.empty()) std::cout << json{{"slopes", slopes}}.dump() << '\n';
  out.commit();
}

void cmd_validate(const RunConfig& c) {
  std::vector<StructurePtr> gs;
  if (c.all) {
    gs.push_back(build_g1());
    for (int n = 2; n <= 8; ++n) gs.push_back(build_structure("classical", n, TableMode::table));
    for (int n = 2; n <= 8; ++n) gs.push_back(build_structure("bkl", n, TableMode::automatic));
  } else {
    gs.push_back(structure_of(c));
  }
  ordered_json doc;
  doc["meta"] = metadata(c, gs.size() == 1 ? gs.front().get() : nullptr);
  doc["reports"] = ordered_json::array();
  std::vector<std::string> failed;
  for (const auto& g : gs) {
    const ValidationReport r = validate_structure(*g, c.seed);
    doc["reports"].push_back(ordered_json::parse(r.to_json().dump()));
    if (!r.ok()) failed.push_back(g->label());
  }
  Outputs out;
  out.open(c.output.empty() ? "-" : c.output) << doc.dump(2) << '\n';
  if (!c.export_path.empty()) {
    if (gs.size() != 1) throw UsageError("--export needs a single structure");
    out.open(c.export_path) << export_structure(*gs.front()).dump() << '\n';
  }
  out.commit();
  if (!failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    throw ValidationError("structure validation failed: " + names);
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return 2;
    case ErrorKind::capacity: return 3;
    case ErrorKind::domain: return 4;
    case ErrorKind::parse: return 5;
    case ErrorKind::validation: return 6;
    case ErrorKind::needs_more_terms: return 7;
  }
  return 1;
}

int report_error(std::string_view kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
  return code;
}

void add_structure_options(CLI::App* app, RunConfig& c) {
  app->add_option("--structure", c.structure, "classical, bkl or g1")
      ->check(CLI::IsMember({"classical", "bkl", "g1"}));
  app->add_option("--n", c.n, "number of strands");
  app->add_option("--table-mode", c.table_mode, "auto, table or permutation (classical only)")
      ->check(CLI::IsMember({"auto", "table", "permutation"}));
  app->add_option("--import", c.import_path, "table-defined structure (JSON) instead of --structure");
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Garside normal forms, random samples, statistics and growth rates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GARSIDE_VERSION));

  auto* sample = app.add_subcommand("sample", "draw a sample of normal forms");
  add_structure_options(sample, c);
  sample->add_option("--k", c.k, "weighted length")->required();
  sample->add_option("--count", c.count, "number of items");
  sample->add_option("--method", c.method, "word or urb")->check(CLI::IsMember({"word", "urb"}));
  sample->add_option("--seed", c.seed, "random seed");
  sample->add_option("-o,--output", c.output, "output file, - for stdout")->required();

  auto* stats = app.add_subcommand("stats", "per-position statistics, stable region and penetration distance");
  stats->add_option("-i,--input", c.input, "sample file")->required()->check(CLI::ExistingFile);
  stats->add_option("-o,--output-dir", c.output_dir, "directory for the CSV files")->required();
  stats->add_option("--w-min", c.w_min, "minimum stable-region width in positions")->check(CLI::Range(2, 1 << 30));
  stats->add_option("--import", c.import_path, "table-defined structure the sample was drawn from");
  stats->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* growth = app.add_subcommand("growth", "generating functions and growth rates");
  add_structure_options(growth, c);
  growth->add_option("--targets", c.targets, "several structures, e.g. B4 BKL5 G1")->delimiter(',');
  growth->add_option("-o,--output", c.output, "report file (default stdout)");
  growth->add_option("--scatter", c.scatter, "CSV of (structure, alpha, beta)");
  growth->add_option("--max-table-simples", c.max_table_simples, "largest transfer matrix");
  growth->add_option("--max-series-terms", c.max_series_terms, "largest number of exact series terms");

  auto* bench = app.add_subcommand("bench", "time the normal-form algorithms");
  add_structure_options(bench, c);
  bench->add_option("--k-list", c.ks, "word lengths (default 1024..65536)")->delimiter(',');
  bench->add_option("--count", c.count, "words per length");
  bench->add_option("--seed", c.seed, "random seed");
  bench->add_option("--algos", c.algos, "linear, baseline")->delimiter(',')
      ->check(CLI::IsMember({"linear", "baseline"}));
  bench->add_option("--baseline-max-k", c.baseline_max_k, "skip the baseline above this length");
  bench->add_option("-o,--output", c.output, "CSV file (default stdout)");

  auto* validate = app.add_subcommand("validate", "check the Garside structure axioms");
  add_structure_options(validate, c);
  validate->add_flag("--all", c.all, "every shipped structure up to 8 strands");
  validate->add_option("--seed", c.seed, "seed for sampled checks");
  validate->add_option("--export", c.export_path, "write the structure in the import format");
  validate->add_option("-o,--output", c.output, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), 2);
  }

  try {
    if (*sample) {
      c.subcommand = "sample";
      if (!sample->count("--count")) c.count = 9999;
      cmd_sample(c);
    } else if (*stats) {
      c.subcommand = "stats";
      cmd_stats(c);
    } else if (*growth) {
      c.subcommand = "growth";
      cmd_growth(c);
    } else if (*bench) {
      c.subcommand = "bench";
      if (!bench->count("--count")) c.count = BenchConfig{}.count;
      if (!bench->count("--n")) c.n = 5;
      if (c.ks.empty()) {
        for (std::int64_t k = 1 << 10; k <= 1 << 16; k *= 2) c.ks.push_back(k);
      }
      cmd_bench(c);
    } else if (*validate) {
      c.subcommand = "validate";
      cmd_validate(c);
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 1);
  }
  return 0;
}

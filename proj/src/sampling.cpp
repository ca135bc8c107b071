#include "garside/sampling.hpp"

#include <exception>
#include <istream>
#include <map>
#include <memory>
#include <stdexcept>
#include <ostream>
#include <thread>

#include "garside/error.hpp"

namespace garside {

mpz_class random_below(Rng& rng, const mpz_class& bound) {
  if (bound <= 0) throw UsageError("random_below: bound must be positive");
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 64) {
    static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
    const std::uint64_t b = mpz_get_ui(bound.get_mpz_t());
    mpz_class r;
    const std::uint64_t v = rng.below(b);
    mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
    return r;
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class r;
  for (;;) {
    for (auto& w : buf) w = rng.next();
    if (bits % 64 != 0) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    // least significant word first
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (r < bound) return r;
  }
}

// ---------------------------------------------------------------------------
// Words

WordSampler::WordSampler(const GarsideStructure& g, std::int64_t k_max) : g_(g) {
  if (k_max < 0) throw UsageError("word length must be non-negative");
  unit_weights_ = true;
  for (int w : g.atom_weights()) unit_weights_ &= w == 1;
  words_.assign(static_cast<std::size_t>(k_max + 1), 0);
  words_[0] = 1;
  for (std::int64_t r = 1; r <= k_max; ++r) {
    for (int w : g.atom_weights()) {
      if (w <= r) words_[static_cast<std::size_t>(r)] += words_[static_cast<std::size_t>(r - w)];
    }
  }
}

const mpz_class& WordSampler::word_count(std::int64_t k) const {
  if (k < 0 || k >= static_cast<std::int64_t>(words_.size())) throw UsageError("word length outside the sampler range");
  return words_[static_cast<std::size_t>(k)];
}

AtomWord WordSampler::sample(std::int64_t k, Rng& rng) const {
  if (word_count(k) == 0) throw DomainError("no atom word has weighted length " + std::to_string(k));
  AtomWord w{&g_, {}};
  const std::size_t na = g_.atom_count();
  if (unit_weights_) {
    w.letters.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) w.letters.push_back(static_cast<std::uint8_t>(rng.below(na)));
    return w;
  }
  // next letter a with probability words(r - weight(a)) / words(r)
  for (std::int64_t r = k; r > 0;) {
    mpz_class u = random_below(rng, words_[static_cast<std::size_t>(r)]);
    for (std::size_t a = 0; a < na; ++a) {
      const int wa = g_.atom_weight(a);
      if (wa > r) continue;
      const mpz_class& c = words_[static_cast<std::size_t>(r - wa)];
      if (u < c) {
        w.letters.push_back(static_cast<std::uint8_t>(a));
        r -= wa;
        break;
      }
      u -= c;
    }
  }
  return w;
}

AtomWord sample_word(const GarsideStructure& g, std::int64_t k, Rng& rng) { return WordSampler(g, k).sample(k, rng); }

// ---------------------------------------------------------------------------
// Counting and uniform elements

LengthCountTable::LengthCountTable(const GarsideStructure& g, std::int64_t k_max, std::size_t max_cells)
    : g_(g), k_max_(k_max) {
  if (!g.table_mode()) throw CapacityError("element counting needs a table-mode structure");
  if (k_max < 0) throw UsageError("length must be non-negative");
  const std::size_t n = g.simple_count();
  auto forbidden = [&](Simple s) { return g.starting_set(g.complement(s)); };
  auto add_state = [&](AtomSet x) {
    if (state_index_.emplace(x, states_.size()).second) states_.push_back(x);
  };
  add_state(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Simple s = g.simple_at(i);
    if (s != g.identity()) add_state(forbidden(s));
  }
  if (states_.size() * static_cast<std::size_t>(k_max + 1) > max_cells) {
    throw CapacityError("count table needs " + std::to_string(states_.size()) + " x " + std::to_string(k_max + 1) +
                        " cells, more than the bound " + std::to_string(max_cells));
  }
  successors_.resize(states_.size());
  for (std::size_t x = 0; x < states_.size(); ++x) {
    std::map<std::pair<std::size_t, int>, std::vector<Simple>> groups;
    for (std::size_t i = 0; i < n; ++i) {
      const Simple t = g.simple_at(i);
      if (t == g.identity() || (g.starting_set(t) & states_[x]) != 0) continue;
      groups[{state_index_.at(forbidden(t)), g.length(t)}].push_back(t);
    }
    for (auto& [key, members] : groups) successors_[x].push_back({key.first, key.second, std::move(members)});
  }
  const auto width = static_cast<std::size_t>(k_max + 1);
  counts_.assign(states_.size() * width, 0);
  for (std::size_t x = 0; x < states_.size(); ++x) counts_[x * width] = 1;
  for (std::int64_t r = 1; r <= k_max; ++r) {
    for (std::size_t x = 0; x < states_.size(); ++x) {
      mpz_class& cell = counts_[x * width + static_cast<std::size_t>(r)];
      for (const Group& gr : successors_[x]) {
        if (gr.length > r) continue;
        cell += at(gr.state, r - gr.length) * static_cast<unsigned long>(gr.members.size());
      }
    }
  }
}

const mpz_class& LengthCountTable::count_elements(std::int64_t k) const {
  if (k < 0 || k > k_max_) throw UsageError("length outside the count table range");
  return at(0, k);
}

const mpz_class& LengthCountTable::count_after(Simple s, std::int64_t r) const {
  if (r < 0 || r > k_max_) throw UsageError("length outside the count table range");
  return at(state_of(g_.starting_set(g_.complement(s))), r);
}

CanonicalForm LengthCountTable::sample(std::int64_t k, Rng& rng) const {
  if (count_elements(k) == 0) throw DomainError("no element of " + g_.label() + " has weighted length " + std::to_string(k));
  std::vector<Simple> seq;
  std::size_t x = 0;
  for (std::int64_t r = k; r > 0;) {
    mpz_class u = random_below(rng, at(x, r));
    bool chosen = false;
    for (const Group& gr : successors_[x]) {
      if (gr.length > r) continue;
      const mpz_class& tail = at(gr.state, r - gr.length);
      const mpz_class weight = tail * static_cast<unsigned long>(gr.members.size());
      if (u < weight) {
        // u / tail is uniform over the members
        const mpz_class idx = u / tail;
        seq.push_back(gr.members[mpz_get_ui(idx.get_mpz_t())]);
        x = gr.state;
        r -= gr.length;
        chosen = true;
        break;
      }
      u -= weight;
    }
    if (!chosen) throw std::logic_error("count table inconsistent");
  }
  std::int64_t inf = 0;
  std::size_t i = 0;
  while (i < seq.size() && seq[i] == g_.delta()) ++i, ++inf;
  return CanonicalForm::trusted(g_, inf, std::vector<Simple>(seq.begin() + static_cast<std::ptrdiff_t>(i), seq.end()));
}

mpz_class count_elements(const GarsideStructure& g, std::int64_t k) { return LengthCountTable(g, k).count_elements(k); }

CanonicalForm sample_urb(const GarsideStructure& g, std::int64_t k, Rng& rng) { return LengthCountTable(g, k).sample(k, rng); }

std::vector<CanonicalForm> brute_force_elements(const GarsideStructure& g, std::int64_t k, std::uint64_t guard) {
  const WordSampler counter(g, k);
  if (counter.word_count(k) > mpz_class(std::to_string(guard))) {
    throw CapacityError("brute force over " + counter.word_count(k).get_str() + " words exceeds the guard " +
                        std::to_string(guard));
  }
  std::map<std::vector<std::uint64_t>, CanonicalForm> seen;
  AtomWord w{&g, {}};
  std::function<void(std::int64_t)> rec = [&](std::int64_t r) {
    if (r == 0) {
      CanonicalForm x = normal_form_linear(w);
      std::vector<std::uint64_t> key{static_cast<std::uint64_t>(x.inf())};
      for (Simple s : x.factors()) key.push_back(s.index());
      seen.emplace(std::move(key), std::move(x));
      return;
    }
    for (std::size_t a = 0; a < g.atom_count(); ++a) {
      if (g.atom_weight(a) > r) continue;
      w.letters.push_back(static_cast<std::uint8_t>(a));
      rec(r - g.atom_weight(a));
      w.letters.pop_back();
    }
  };
  rec(k);
  std::vector<CanonicalForm> out;
  out.reserve(seen.size());
  for (auto& [key, x] : seen) out.push_back(std::move(x));
  return out;
}

// ---------------------------------------------------------------------------
// Sample sets

std::string to_string(SampleMethod m) { return m == SampleMethod::word ? "word" : "urb"; }

SampleMethod parse_sample_method(const std::string& s) {
  if (s == "word") return SampleMethod::word;
  if (s == "urb") return SampleMethod::urb;
  throw UsageError("unknown sampling method '" + s + "' (expected word or urb)");
}

nlohmann::json SampleSet::header() const {
  nlohmann::json h;
  h["method"] = to_string(method);
  h["structure"] = structure->name();
  h["n"] = structure->strands();
  h["k"] = k;
  h["seed"] = seed;
  h["rng"] = rng;
  h["count"] = items.size();
  h["label"] = structure->label();
  h["table_mode"] = structure->table_mode();
  h["fingerprint"] = structure->fingerprint();
  if (method == SampleMethod::word && structure->name() == "bkl") {
    h["note"] = "uniform words over band generators (extension beyond classical atoms)";
  }
  if (!metadata.empty()) h["meta"] = metadata;
  return h;
}

SampleSet generate_samples(const StructurePtr& g, SampleMethod method, std::int64_t k, std::size_t count,
                           std::uint64_t seed, unsigned threads) {
  if (k < 0) throw UsageError("k must be non-negative");
  SampleSet out;
  out.method = method;
  out.structure = g;
  out.k = k;
  out.seed = seed;
  out.items.assign(count, CanonicalForm(*g));

  std::unique_ptr<WordSampler> words;
  std::unique_ptr<LengthCountTable> table;
  if (method == SampleMethod::word) {
    words = std::make_unique<WordSampler>(*g, k);
    if (words->word_count(k) == 0) throw DomainError("no atom word has weighted length " + std::to_string(k));
  } else {
    table = std::make_unique<LengthCountTable>(*g, k);
    if (table->count_elements(k) == 0) throw DomainError("no element has weighted length " + std::to_string(k));
  }
  auto draw = [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    out.items[i] = words ? normal_form_linear(words->sample(k, rng)) : table->sample(k, rng);
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) draw(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(count, (t + 1) * chunk); ++i) draw(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void write_samples(std::ostream& out, const SampleSet& s) {
  out << s.header().dump() << '\n';
  for (const auto& x : s.items) out << x.to_json().dump() << '\n';
}

StructurePtr structure_from_header(const nlohmann::json& header) {
  const std::string family = header.at("structure").get<std::string>();
  const int n = header.value("n", 0);
  TableMode mode = TableMode::automatic;
  if (family == "classical" && header.contains("table_mode")) {
    mode = header["table_mode"].get<bool>() ? TableMode::table : TableMode::permutation;
  }
  return build_structure(family, n, mode);
}

SampleSet read_samples(std::istream& in, const std::function<StructurePtr(const nlohmann::json&)>& resolve) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("sample file is empty");
  nlohmann::json h;
  std::size_t lineno = 1;
  try {
    h = nlohmann::json::parse(line);
    SampleSet s;
    s.method = parse_sample_method(h.at("method").get<std::string>());
    s.k = h.at("k").get<std::int64_t>();
    s.seed = h.at("seed").get<std::uint64_t>();
    s.rng = h.at("rng").get<std::string>();
    if (h.contains("meta")) s.metadata = h["meta"];
    s.structure = resolve(h);
    if (h.contains("fingerprint") && h["fingerprint"].get<std::uint64_t>() != s.structure->fingerprint()) {
      throw ValidationError("sample file was written for a different " + s.structure->label() + " structure");
    }
    const auto count = h.at("count").get<std::size_t>();
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      CanonicalForm x = CanonicalForm::from_json(*s.structure, nlohmann::json::parse(line));
      if (x.weighted_length() != s.k) {
        throw ValidationError("sample line " + std::to_string(lineno) + " has weighted length " +
                              std::to_string(x.weighted_length()) + ", expected " + std::to_string(s.k));
      }
      s.items.push_back(std::move(x));
    }
    if (s.items.size() != count) {
      throw ValidationError("sample header announces " + std::to_string(count) + " items, found " +
                            std::to_string(s.items.size()));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("sample file line " + std::to_string(lineno) + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError("sample file line " + std::to_string(lineno) + ": " + e.what());
  }
}

}  // namespace garside

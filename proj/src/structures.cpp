#include "garside/structures.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <iterator>
#include <unordered_map>
#include <unordered_set>

#include "garside/error.hpp"
#include "garside/permutation.hpp"

namespace garside {

namespace {

using perm::Perm;

nlohmann::json perm_json(const Perm& p) {
  auto j = nlohmann::json::array();
  for (auto v : p) j.push_back(v + 1);
  return j;
}

Perm perm_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n)) {
    throw ParseError("expected a permutation image array of length " + std::to_string(n) + ": " + j.dump());
  }
  Perm p;
  unsigned seen = 0;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("permutation entries must be integers: " + j.dump());
    const auto x = v.get<std::int64_t>();
    if (x < 1 || x > n || (seen >> (x - 1)) & 1u) throw ParseError("not a permutation of 1.." + std::to_string(n) + ": " + j.dump());
    seen |= 1u << (x - 1);
    p.push_back(static_cast<std::uint8_t>(x - 1));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Table builder shared by the classical and BKL models.

struct PermModel {
  std::string name;
  std::string label;
  int n = 0;
  Perm delta;
  std::vector<Perm> atoms;
  // p * atoms[a] is simple and one longer than p
  std::function<bool(const Perm&, std::size_t)> extends;
};

AtomTable perm_atom_table(const PermModel& m) {
  const std::size_t na = m.atoms.size();
  std::vector<Perm> found{perm::identity(m.n)};
  std::vector<int> depth{0};
  std::unordered_map<std::uint64_t, std::size_t> seen{{perm::pack(found[0]), 0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t a = 0; a < na; ++a) {
      if (!m.extends(found[i], a)) continue;
      Perm q = perm::compose(found[i], m.atoms[a]);
      if (seen.emplace(perm::pack(q), found.size()).second) {
        found.push_back(std::move(q));
        depth.push_back(depth[i] + 1);
      }
    }
  }
  // deterministic order: by length, then image
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (depth[x] != depth[y]) return depth[x] < depth[y];
    return found[x] < found[y];
  });
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) index.emplace(perm::pack(found[order[i]]), i);

  AtomTable t;
  t.name = m.name;
  t.label = m.label;
  t.strands = m.n;
  t.simple_count = found.size();
  t.identity = 0;
  const auto d = index.find(perm::pack(m.delta));
  if (d == index.end()) throw ValidationError(m.label + ": Delta is not reachable from the atoms");
  t.delta = d->second;
  for (const auto& a : m.atoms) t.atoms.push_back(index.at(perm::pack(a)));
  t.weights.assign(na, 1);
  t.times_atom.assign(found.size() * na, -1);
  t.serialized.reserve(found.size());
  t.descriptions.reserve(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Perm& p = found[order[i]];
    for (std::size_t a = 0; a < na; ++a) {
      if (!m.extends(p, a)) continue;
      t.times_atom[i * na + a] = static_cast<std::int32_t>(index.at(perm::pack(perm::compose(p, m.atoms[a]))));
    }
    t.serialized.push_back(perm_json(p));
    t.descriptions.push_back(perm::to_string(p));
  }
  return t;
}

StructurePtr classical_table(int n) {
  PermModel m;
  m.name = "classical";
  m.label = "B" + std::to_string(n);
  m.n = n;
  m.delta = perm::reversal(n);
  for (int i = 0; i + 1 < n; ++i) m.atoms.push_back(perm::transposition(n, i, i + 1));
  m.extends = [](const Perm& p, std::size_t a) { return p[a] < p[a + 1]; };
  return std::make_shared<TableStructure>(derive_tables(perm_atom_table(m)));
}

// ---------------------------------------------------------------------------
// G1 by rewriting ABA <-> BB on words of weight <= 6.

std::set<std::string> word_class(const std::string& w) {
  std::set<std::string> cls{w};
  std::deque<std::string> queue{w};
  auto visit = [&](std::string v) {
    if (cls.insert(v).second) queue.push_back(std::move(v));
  };
  while (!queue.empty()) {
    const std::string u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u.compare(i, 3, "ABA") == 0) visit(u.substr(0, i) + "BB" + u.substr(i + 3));
      if (u.compare(i, 2, "BB") == 0) visit(u.substr(0, i) + "ABA" + u.substr(i + 2));
    }
  }
  return cls;
}

// fewest letters, then lexicographic
std::string class_name(const std::set<std::string>& cls) {
  std::string best = *cls.begin();
  for (const auto& w : cls) {
    if (w.size() < best.size() || (w.size() == best.size() && w < best)) best = w;
  }
  return best.empty() ? "1" : best;
}

int word_weight(const std::string& w) {
  int k = 0;
  for (char c : w) k += c == 'A' ? 1 : 2;
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// PermutationBraidStructure

namespace {

using Small = std::array<std::uint8_t, 16>;

inline Small unpack_small(std::uint64_t v, int n) {
  Small p{};
  for (int x = 0; x < n; ++x) p[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>((v >> (4 * x)) & 0xf);
  return p;
}

inline std::uint64_t pack_small(const Small& p, int n) {
  std::uint64_t v = 0;
  for (int x = 0; x < n; ++x) v |= std::uint64_t{p[static_cast<std::size_t>(x)]} << (4 * x);
  return v;
}

inline Small invert_small(const Small& p, int n) {
  Small r{};
  for (int x = 0; x < n; ++x) r[p[static_cast<std::size_t>(x)]] = static_cast<std::uint8_t>(x);
  return r;
}

inline int inversions_small(const Small& p, int n) {
  int c = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) c += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
  }
  return c;
}

}  // namespace

GarsideStructure::Info PermutationBraidStructure::make_info(int n) {
  Info info;
  info.name = "classical";
  info.label = "B" + std::to_string(n);
  info.strands = n;
  info.central_power = n >= 3 ? 2 : 1;
  info.delta_length = n * (n - 1) / 2;
  info.weights.assign(static_cast<std::size_t>(std::max(n - 1, 0)), 1);
  return info;
}

PermutationBraidStructure::PermutationBraidStructure(int n) : GarsideStructure(make_info(n)), n_(n) {
  if (n < 2) throw UsageError("classical structure needs n >= 2");
  if (n > kMaxPermutationStrands) {
    throw CapacityError("permutation mode supports n <= " + std::to_string(kMaxPermutationStrands));
  }
  delta_perm_ = perm::reversal(n);
  std::vector<Simple> atoms;
  for (int i = 0; i + 1 < n; ++i) atoms.push_back(from_perm(perm::transposition(n, i, i + 1)));
  set_elements(from_perm(perm::identity(n)), from_perm(delta_perm_), std::move(atoms));
}

Simple PermutationBraidStructure::from_perm(const std::vector<std::uint8_t>& p) const {
  if (p.size() != static_cast<std::size_t>(n_)) throw UsageError("permutation has the wrong size");
  return Simple::make(tag(), perm::pack(p));
}

std::vector<std::uint8_t> PermutationBraidStructure::to_perm(Simple s) const { return perm::unpack(s.index(), n_); }

bool PermutationBraidStructure::valid_index(std::uint64_t index) const noexcept {
  return perm::is_packed_permutation(index, n_);
}

int PermutationBraidStructure::length(Simple s) const { return inversions_small(unpack_small(s.index(), n_), n_); }

Simple PermutationBraidStructure::complement(Simple s) const {
  // p^{-1} * Delta
  const Small inv = invert_small(unpack_small(s.index(), n_), n_);
  Small r{};
  for (int x = 0; x < n_; ++x) r[static_cast<std::size_t>(x)] = inv[static_cast<std::size_t>(n_ - 1 - x)];
  return Simple::make(tag(), pack_small(r, n_));
}

Simple PermutationBraidStructure::tau(Simple s, int power) const {
  if (power % 2 == 0) return s;
  const Small p = unpack_small(s.index(), n_);
  Small r{};
  for (int x = 0; x < n_; ++x) {
    r[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(n_ - 1 - p[static_cast<std::size_t>(n_ - 1 - x)]);
  }
  return Simple::make(tag(), pack_small(r, n_));
}

AtomSet PermutationBraidStructure::starting_set(Simple s) const {
  const Small inv = invert_small(unpack_small(s.index(), n_), n_);
  AtomSet set = 0;
  for (int i = 0; i + 1 < n_; ++i) {
    if (inv[static_cast<std::size_t>(i)] > inv[static_cast<std::size_t>(i + 1)]) set |= AtomSet{1} << i;
  }
  return set;
}

AtomSet PermutationBraidStructure::finishing_set(Simple s) const {
  const Small p = unpack_small(s.index(), n_);
  AtomSet set = 0;
  for (int i = 0; i + 1 < n_; ++i) {
    if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(i + 1)]) set |= AtomSet{1} << i;
  }
  return set;
}

std::optional<Simple> PermutationBraidStructure::times_atom(Simple s, std::size_t atom) const {
  Small p = unpack_small(s.index(), n_);
  if (p[atom] > p[atom + 1]) return std::nullopt;
  std::swap(p[atom], p[atom + 1]);
  return Simple::make(tag(), pack_small(p, n_));
}

std::optional<Simple> PermutationBraidStructure::atom_quotient(std::size_t atom, Simple s) const {
  Small p = unpack_small(s.index(), n_);
  const Small inv = invert_small(p, n_);
  if (inv[atom] < inv[atom + 1]) return std::nullopt;
  std::swap(p[inv[atom]], p[inv[atom + 1]]);
  return Simple::make(tag(), pack_small(p, n_));
}

std::optional<Simple> PermutationBraidStructure::multiply(Simple x, Simple y) const {
  const Small p = unpack_small(x.index(), n_);
  const Small q = unpack_small(y.index(), n_);
  Small r{};
  for (int i = 0; i < n_; ++i) r[static_cast<std::size_t>(i)] = p[q[static_cast<std::size_t>(i)]];
  if (inversions_small(r, n_) != inversions_small(p, n_) + inversions_small(q, n_)) return std::nullopt;
  return Simple::make(tag(), pack_small(r, n_));
}

Simple PermutationBraidStructure::left_quotient(Simple m, Simple y) const {
  const Small inv = invert_small(unpack_small(m.index(), n_), n_);
  const Small q = unpack_small(y.index(), n_);
  Small r{};
  for (int i = 0; i < n_; ++i) r[static_cast<std::size_t>(i)] = inv[q[static_cast<std::size_t>(i)]];
  if (inversions_small(q, n_) != inversions_small(inv, n_) + inversions_small(r, n_)) {
    throw UsageError("left_quotient: divisor does not divide");
  }
  return Simple::make(tag(), pack_small(r, n_));
}

nlohmann::json PermutationBraidStructure::serialize(Simple s) const { return perm_json(to_perm(s)); }

Simple PermutationBraidStructure::deserialize(const nlohmann::json& j) const { return from_perm(perm_from_json(j, n_)); }

std::string PermutationBraidStructure::describe(Simple s) const { return perm::to_string(to_perm(s)); }

std::uint64_t PermutationBraidStructure::fingerprint() const {
  // the structure is determined by n
  std::uint64_t h = fnv1a(kFnvOffset, 0x7065726d);  // "perm"
  return fnv1a(h, static_cast<std::uint64_t>(n_));
}

// ---------------------------------------------------------------------------
// Builders

StructurePtr build_classical(int n, TableMode mode) {
  if (n < 2) throw UsageError("classical structure needs n >= 2, got " + std::to_string(n));
  switch (mode) {
    case TableMode::table:
      if (n > kMaxClassicalTableStrands) {
        throw CapacityError("classical table mode supports n <= " + std::to_string(kMaxClassicalTableStrands) +
                            " (n! simples)");
      }
      return classical_table(n);
    case TableMode::permutation:
      return std::make_shared<PermutationBraidStructure>(n);
    case TableMode::automatic:
      break;
  }
  if (n <= kMaxAutomaticTableStrands) return classical_table(n);
  return std::make_shared<PermutationBraidStructure>(n);
}

StructurePtr build_bkl(int n) {
  if (n < 2 || n > kMaxBklStrands) {
    throw UsageError("BKL structure needs 2 <= n <= " + std::to_string(kMaxBklStrands) + ", got " + std::to_string(n));
  }
  PermModel m;
  m.name = "bkl";
  m.label = "BKL" + std::to_string(n);
  m.n = n;
  m.delta = perm::descending_cycle(n);
  for (int t = 1; t < n; ++t) {
    for (int s = 0; s < t; ++s) m.atoms.push_back(perm::transposition(n, t, s));
  }
  const Perm delta = m.delta;
  const std::vector<Perm> atoms = m.atoms;
  // p a is simple iff it lies on a geodesic from 1 to delta in reflection length
  m.extends = [n, delta, atoms](const Perm& p, std::size_t a) {
    const Perm q = perm::compose(p, atoms[a]);
    const int lq = perm::reflection_length(q);
    if (lq != perm::reflection_length(p) + 1) return false;
    return lq + perm::reflection_length(perm::compose(perm::inverse(q), delta)) == n - 1;
  };
  return std::make_shared<TableStructure>(derive_tables(perm_atom_table(m)));
}

StructurePtr build_g1() {
  const std::set<std::string> delta_class = word_class("BBB");
  std::set<std::string> prefixes;
  for (const auto& w : delta_class) {
    for (std::size_t i = 0; i <= w.size(); ++i) prefixes.insert(w.substr(0, i));
  }
  // simples = classes of prefixes
  std::map<std::string, std::set<std::string>> classes;
  std::map<std::string, std::string> name_of;
  for (const auto& w : prefixes) {
    auto cls = word_class(w);
    const std::string nm = class_name(cls);
    name_of[w] = nm;
    classes.emplace(nm, std::move(cls));
  }
  std::vector<std::string> names;
  for (const auto& [nm, cls] : classes) names.push_back(nm);
  auto word_of = [](const std::string& nm) { return nm == "1" ? std::string{} : nm; };
  std::sort(names.begin(), names.end(), [&](const std::string& x, const std::string& y) {
    const int wx = word_weight(word_of(x)), wy = word_weight(word_of(y));
    if (wx != wy) return wx < wy;
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;

  AtomTable t;
  t.name = "g1";
  t.label = "G1";
  t.strands = 0;
  t.simple_count = names.size();
  t.identity = index.at("1");
  t.delta = index.at(name_of.at("BBB"));
  t.atoms = {index.at("A"), index.at("B")};
  t.weights = {1, 2};
  const std::array<char, 2> letters = {'A', 'B'};
  t.times_atom.assign(names.size() * 2, -1);
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t a = 0; a < 2; ++a) {
      const std::string w = word_of(names[i]) + letters[a];
      if (auto it = name_of.find(w); it != name_of.end()) {
        t.times_atom[i * 2 + a] = static_cast<std::int32_t>(index.at(it->second));
      }
    }
    t.serialized.emplace_back(names[i]);
    t.descriptions.push_back(names[i]);
  }
  return std::make_shared<TableStructure>(derive_tables(t));
}

StructurePtr build_structure(const std::string& family, int n, TableMode mode) {
  if (family == "classical") return build_classical(n, mode);
  if (family == "bkl") {
    if (mode == TableMode::permutation) throw UsageError("BKL structures are table-only");
    return build_bkl(n);
  }
  if (family == "g1") return build_g1();
  throw UsageError("unknown structure family '" + family + "' (expected classical, bkl or g1)");
}

// ---------------------------------------------------------------------------
// Table import / export

StructurePtr import_structure(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("structure import: expected a JSON object");
    const std::string name = j.at("name").get<std::string>();
    const auto& simples = j.at("simples");
    if (!simples.is_array() || simples.empty()) throw ParseError("structure import: 'simples' must be a non-empty array");
    std::unordered_map<std::string, std::size_t> index;
    AtomTable t;
    t.name = name;
    t.label = name;
    t.strands = j.value("strands", 0);
    for (const auto& s : simples) {
      const std::string nm = s.get<std::string>();
      if (!index.emplace(nm, index.size()).second) throw ValidationError("structure import: duplicate simple " + nm);
      t.serialized.emplace_back(nm);
      t.descriptions.push_back(nm);
    }
    auto lookup = [&](const nlohmann::json& v) {
      const std::string nm = v.get<std::string>();
      auto it = index.find(nm);
      if (it == index.end()) throw ValidationError("structure import: unknown simple " + nm);
      return it->second;
    };
    t.simple_count = index.size();
    t.identity = lookup(j.at("identity"));
    t.delta = lookup(j.at("delta"));
    std::vector<int> lengths(t.simple_count, -1);
    for (const auto& [nm, len] : j.at("lengths").items()) lengths.at(lookup(nm)) = len.get<int>();
    std::vector<std::int64_t> atom_slot(t.simple_count, -1);
    for (const auto& a : j.at("atoms")) {
      const std::size_t ai = lookup(a);
      if (atom_slot[ai] >= 0) throw ValidationError("structure import: duplicate atom " + a.get<std::string>());
      atom_slot[ai] = static_cast<std::int64_t>(t.atoms.size());
      t.atoms.push_back(ai);
      if (lengths[ai] < 1) throw ValidationError("structure import: atom " + a.get<std::string>() + " needs a positive length");
      t.weights.push_back(lengths[ai]);
    }
    if (t.atoms.size() > 64) throw CapacityError("structure import: at most 64 atoms are supported");
    const std::size_t na = t.atoms.size();
    t.times_atom.assign(t.simple_count * na, -1);
    std::vector<std::array<std::size_t, 3>> products;
    for (const auto& p : j.at("products")) {
      if (!p.is_array() || p.size() != 3) throw ParseError("structure import: products are [s, t, s*t] triples");
      const std::array<std::size_t, 3> tr = {lookup(p[0]), lookup(p[1]), lookup(p[2])};
      products.push_back(tr);
      if (atom_slot[tr[1]] >= 0) {
        auto& cell = t.times_atom[tr[0] * na + static_cast<std::size_t>(atom_slot[tr[1]])];
        if (cell >= 0 && static_cast<std::size_t>(cell) != tr[2]) {
          throw ValidationError("structure import: conflicting products for " + p.dump());
        }
        cell = static_cast<std::int32_t>(tr[2]);
      }
    }
    auto g = std::make_shared<TableStructure>(derive_tables(t));
    const auto& d = g->data();
    for (std::size_t s = 0; s < d.count; ++s) {
      if (lengths[s] >= 0 && lengths[s] != d.length[s]) {
        throw ValidationError("structure import: length of " + d.descriptions[s] + " is " + std::to_string(lengths[s]) +
                              " but the products give " + std::to_string(d.length[s]));
      }
    }
    for (const auto& tr : products) {
      const auto u = g->multiply(g->simple_at(tr[0]), g->simple_at(tr[1]));
      if (!u || u->index() != tr[2]) {
        throw ValidationError("structure import: product " + d.descriptions[tr[0]] + "*" + d.descriptions[tr[1]] +
                              " is inconsistent with the atom products");
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structure import: ") + e.what());
  }
}

nlohmann::json export_structure(const GarsideStructure& g) {
  if (!g.table_mode()) throw CapacityError("export needs a table-mode structure");
  nlohmann::json j;
  j["name"] = g.label();
  j["strands"] = g.strands();
  auto simples = nlohmann::json::array();
  auto lengths = nlohmann::json::object();
  auto products = nlohmann::json::array();
  for (std::size_t i = 0; i < g.simple_count(); ++i) {
    const Simple s = g.simple_at(i);
    simples.push_back(g.describe(s));
    lengths[g.describe(s)] = g.length(s);
    for (std::size_t a = 0; a < g.atom_count(); ++a) {
      if (auto u = g.times_atom(s, a)) products.push_back({g.describe(s), g.describe(g.atoms()[a]), g.describe(*u)});
    }
  }
  auto atoms = nlohmann::json::array();
  for (Simple a : g.atoms()) atoms.push_back(g.describe(a));
  j["simples"] = std::move(simples);
  j["identity"] = g.describe(g.identity());
  j["delta"] = g.describe(g.delta());
  j["atoms"] = std::move(atoms);
  j["lengths"] = std::move(lengths);
  j["products"] = std::move(products);
  return j;
}

// ---------------------------------------------------------------------------
// Validation

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json j;
  j["structure"] = structure;
  j["ok"] = ok();
  j["checks"] = checks;
  auto f = nlohmann::json::array();
  for (const auto& x : failures) f.push_back({{"axiom", x.axiom}, {"witnesses", x.witnesses}});
  j["failures"] = std::move(f);
  return j;
}

namespace {

constexpr std::size_t kExhaustiveLimit = 150;
constexpr std::size_t kSampledPairs = 20000;
constexpr std::size_t kSampledMeets = 2000;
constexpr std::size_t kMaxWitnesses = 5;

class Validator {
 public:
  Validator(const GarsideStructure& g, std::uint64_t seed) : g_(g), n_(g.simple_count()), rng_(seed) {
    report_.structure = g.label();
  }

  ValidationReport run() {
    check_basics();
    check_complement();
    check_sets();
    check_lengths();
    check_meet();
    check_tau();
    if (g_.name() == "g1") check_g1_matrix();
    return std::move(report_);
  }

 private:
  Simple at(std::size_t i) const { return g_.simple_at(i); }
  std::string str(Simple s) const { return g_.describe(s); }

  void fail(const std::string& axiom, const std::string& witness) {
    for (auto& f : report_.failures) {
      if (f.axiom == axiom) {
        if (f.witnesses.size() < kMaxWitnesses) f.witnesses.push_back(witness);
        return;
      }
    }
    report_.failures.push_back({axiom, {witness}});
  }

  // u is a left divisor of s, using only the atom tables
  bool prefix_of(Simple u, Simple s) const {
    for (std::size_t a : g_.atom_word(u)) {
      auto q = g_.atom_quotient(a, s);
      if (!q) return false;
      s = *q;
    }
    return true;
  }

  template <class F>
  void for_pairs(F&& f) {
    if (n_ <= kExhaustiveLimit) {
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) f(i, k);
      }
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
    for (std::size_t r = 0; r < kSampledPairs; ++r) f(pick(rng_), pick(rng_));
  }

  void check_basics() {
    report_.checks.push_back("identity and Delta");
    if (g_.length(g_.identity()) != 0 || g_.starting_set(g_.identity()) != 0) fail("identity", str(g_.identity()));
    if (g_.length(g_.delta()) != g_.delta_length()) fail("delta length", str(g_.delta()));
    if (g_.starting_set(g_.delta()) != g_.all_atoms() || g_.finishing_set(g_.delta()) != g_.all_atoms()) {
      fail("every atom divides Delta", str(g_.delta()));
    }
  }

  void check_complement() {
    report_.checks.push_back("complement bijective");
    report_.checks.push_back("s * complement(s) = Delta");
    std::vector<char> hit(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const Simple c = g_.complement(at(i));
      if (!g_.owns(c)) {
        fail("complement not bijective", str(at(i)) + " -> foreign simple");
        continue;
      }
      if (hit[c.index()]++) fail("complement not bijective", str(at(i)) + " -> " + str(c) + " (repeated)");
      const auto p = g_.multiply(at(i), c);
      if (!p || *p != g_.delta()) fail("s * complement(s) != Delta", str(at(i)));
    }
  }

  void check_sets() {
    report_.checks.push_back("starting and finishing sets");
    report_.checks.push_back("x a simple iff a in S(complement(x))");
    std::vector<AtomSet> finishing(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const Simple s = at(i);
      const AtomSet sc = g_.starting_set(g_.complement(s));
      for (std::size_t a = 0; a < g_.atom_count(); ++a) {
        const auto u = g_.times_atom(s, a);
        if (u) finishing[u->index()] |= AtomSet{1} << a;
        if (u.has_value() != (((sc >> a) & 1u) != 0)) {
          fail("x a simple iff a in S(complement(x))", str(s) + " * " + str(g_.atoms()[a]));
        }
        if (g_.atom_quotient(a, s).has_value() != (((g_.starting_set(s) >> a) & 1u) != 0)) {
          fail("starting set mismatch", str(s));
        }
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (finishing[i] != g_.finishing_set(at(i))) fail("finishing set mismatch", str(at(i)));
    }
  }

  void check_lengths() {
    report_.checks.push_back("length additivity");
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 0; a < g_.atom_count(); ++a) {
        if (auto u = g_.times_atom(at(i), a); u && g_.length(*u) != g_.length(at(i)) + g_.atom_weight(a)) {
          fail("length not additive", str(at(i)) + " * " + str(g_.atoms()[a]));
        }
      }
    }
    for_pairs([&](std::size_t i, std::size_t k) {
      if (auto u = g_.multiply(at(i), at(k)); u && g_.length(*u) != g_.length(at(i)) + g_.length(at(k))) {
        fail("length not additive", str(at(i)) + " * " + str(at(k)));
      }
    });
  }

  // sorted simple indices of the left divisors of s
  std::vector<std::uint64_t> divisors_of(Simple s) const {
    std::vector<std::uint64_t> found{g_.identity().index()};
    std::unordered_set<std::uint64_t> mark{g_.identity().index()};
    for (std::size_t i = 0; i < found.size(); ++i) {
      const Simple u = Simple::make(g_.tag(), found[i]);
      for (std::size_t a = 0; a < g_.atom_count(); ++a) {
        auto v = g_.times_atom(u, a);
        if (!v || mark.count(v->index()) || !prefix_of(*v, s)) continue;
        mark.insert(v->index());
        found.push_back(v->index());
      }
    }
    std::sort(found.begin(), found.end());
    return found;
  }

  void check_meet() {
    report_.checks.push_back("meet is the greatest common left divisor");
    std::vector<std::vector<std::uint64_t>> cache;
    const bool cached = n_ <= kExhaustiveLimit;
    if (cached) {
      for (std::size_t i = 0; i < n_; ++i) cache.push_back(divisors_of(at(i)));
    }
    std::size_t budget = cached ? n_ * n_ : kSampledMeets;
    for_pairs([&](std::size_t i, std::size_t k) {
      if (budget == 0) return;
      --budget;
      const Simple s = at(i), t = at(k);
      const Simple m = g_.meet(s, t);
      if (!prefix_of(m, s) || !prefix_of(m, t)) {
        fail("meet not a lower bound", str(s) + " ^ " + str(t) + " = " + str(m));
        return;
      }
      const auto ds = cached ? cache[i] : divisors_of(s);
      const auto dt = cached ? cache[k] : divisors_of(t);
      std::vector<std::uint64_t> common;
      std::set_intersection(ds.begin(), ds.end(), dt.begin(), dt.end(), std::back_inserter(common));
      for (std::uint64_t u : common) {
        if (!prefix_of(Simple::make(g_.tag(), u), m)) {
          fail("meet not greatest", str(s) + " ^ " + str(t) + " misses " + str(Simple::make(g_.tag(), u)));
          return;
        }
      }
    });
  }

  void check_tau() {
    report_.checks.push_back("tau = complement twice, automorphism of finite order");
    for (std::size_t i = 0; i < n_; ++i) {
      const Simple s = at(i);
      const Simple t = g_.tau(s, 1);
      if (g_.complement(g_.complement(s)) != t) fail("tau is not complement twice", str(s));
      if (g_.length(t) != g_.length(s)) fail("tau not an automorphism", str(s) + " changes length");
      Simple c = s;
      for (int p = 0; p < g_.central_power(); ++p) c = g_.tau(c, 1);
      if (c != s) fail("tau order", str(s));
    }
    for_pairs([&](std::size_t i, std::size_t k) {
      const Simple s = at(i), t = at(k);
      const auto u = g_.multiply(s, t);
      const auto v = g_.multiply(g_.tau(s, 1), g_.tau(t, 1));
      if (u.has_value() != v.has_value() || (u && g_.tau(*u, 1) != *v)) {
        fail("tau not an automorphism", str(s) + " * " + str(t));
      }
    });
  }

  void check_g1_matrix() {
    report_.checks.push_back("G1 transition matrix");
    for (std::size_t r = 0; r < kG1ProperSimples.size(); ++r) {
      for (std::size_t c = 0; c < kG1ProperSimples.size(); ++c) {
        const Simple a = g_.deserialize(kG1ProperSimples[r]);
        const Simple b = g_.deserialize(kG1ProperSimples[c]);
        const bool trivial = g_.meet(g_.complement(a), b) == g_.identity();
        const bool expected = kG1TransitionMatrix[r][c] == 1;
        if (trivial != expected || is_left_weighted(g_, a, b) != expected) {
          fail("G1 transition matrix", std::string(kG1ProperSimples[r]) + "," + kG1ProperSimples[c]);
        }
      }
    }
  }

  const GarsideStructure& g_;
  std::size_t n_;
  std::mt19937_64 rng_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_structure(const GarsideStructure& g, std::uint64_t seed) {
  if (!g.table_mode()) throw CapacityError("validation needs a table-mode structure");
  return Validator(g, seed).run();
}

}  // namespace garside

#include "garside/table_structure.hpp"

#include <deque>
#include <numeric>

#include "garside/error.hpp"

namespace garside {

TableData derive_tables(const AtomTable& table) {
  const std::size_t n = table.simple_count;
  const std::size_t na = table.atoms.size();
  if (n == 0 || table.identity >= n || table.delta >= n) {
    throw ValidationError("atom table: identity or delta out of range");
  }
  if (table.times_atom.size() != n * na || table.weights.size() != na) {
    throw ValidationError("atom table: table sizes do not match simple and atom counts");
  }

  TableData d;
  d.name = table.name;
  d.label = table.label;
  d.strands = table.strands;
  d.count = n;
  d.identity = table.identity;
  d.delta = table.delta;
  d.atoms = table.atoms;
  d.weights = table.weights;
  d.times_atom = table.times_atom;
  d.serialized = table.serialized;
  d.descriptions = table.descriptions;
  if (d.serialized.size() != n || d.descriptions.size() != n) {
    throw ValidationError("atom table: serialization tables do not match simple count");
  }

  // Spanning tree from the identity; gives lengths and one atom word per simple.
  d.parent.assign(n, -1);
  d.parent_atom.assign(n, -1);
  d.length.assign(n, -1);
  d.length[table.identity] = 0;
  std::deque<std::size_t> queue{table.identity};
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < na; ++a) {
      const std::int32_t t = d.times_atom[s * na + a];
      if (t < 0 || d.length[t] >= 0) continue;
      d.length[t] = d.length[s] + d.weights[a];
      d.parent[t] = static_cast<std::int32_t>(s);
      d.parent_atom[t] = static_cast<std::int32_t>(a);
      queue.push_back(static_cast<std::size_t>(t));
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (d.length[s] < 0) {
      throw ValidationError("atom table: simple " + d.descriptions[s] + " is not a product of atoms");
    }
  }

  auto word = [&](std::size_t s) {
    std::vector<std::size_t> w;
    while (s != table.identity) {
      w.push_back(static_cast<std::size_t>(d.parent_atom[s]));
      s = static_cast<std::size_t>(d.parent[s]);
    }
    return std::vector<std::size_t>(w.rbegin(), w.rend());
  };

  // Left multiplication by atoms, walked along a word of s.
  d.atom_quotient.assign(na * n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    const auto w = word(s);
    for (std::size_t a = 0; a < na; ++a) {
      std::int64_t cur = static_cast<std::int64_t>(table.atoms[a]);
      for (std::size_t b : w) {
        cur = d.times_atom[static_cast<std::size_t>(cur) * na + b];
        if (cur < 0) break;
      }
      if (cur >= 0) d.atom_quotient[a * n + static_cast<std::size_t>(cur)] = static_cast<std::int32_t>(s);
    }
  }

  d.starting.assign(n, 0);
  d.finishing.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < na; ++a) {
      if (d.atom_quotient[a * n + s] >= 0) d.starting[s] |= AtomSet{1} << a;
      const std::int32_t t = d.times_atom[s * na + a];
      if (t >= 0) d.finishing[static_cast<std::size_t>(t)] |= AtomSet{1} << a;
    }
  }

  // Complement: strip a word of s from Delta.
  d.complement.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    std::int64_t q = static_cast<std::int64_t>(table.delta);
    for (std::size_t b : word(s)) {
      q = d.atom_quotient[b * n + static_cast<std::size_t>(q)];
      if (q < 0) break;
    }
    if (q < 0) throw ValidationError("atom table: " + d.descriptions[s] + " does not divide Delta");
    d.complement[s] = static_cast<std::int32_t>(q);
  }

  // tau = complement twice; central power is its order.
  std::vector<std::int32_t> tau1(n);
  for (std::size_t s = 0; s < n; ++s) tau1[s] = d.complement[static_cast<std::size_t>(d.complement[s])];
  std::vector<bool> seen(n, false);
  std::int64_t order = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::int64_t len = 0;
    std::size_t c = s;
    while (!seen[c]) {
      seen[c] = true;
      c = static_cast<std::size_t>(tau1[c]);
      ++len;
    }
    order = std::lcm(order, len);
  }
  if (order > 1024) throw ValidationError("atom table: tau has order beyond 1024");
  d.central_power = static_cast<int>(order);
  d.tau.assign(static_cast<std::size_t>(order) * n, 0);
  for (std::size_t s = 0; s < n; ++s) d.tau[s] = static_cast<std::int32_t>(s);
  for (std::size_t p = 1; p < static_cast<std::size_t>(order); ++p) {
    for (std::size_t s = 0; s < n; ++s) {
      d.tau[p * n + s] = tau1[static_cast<std::size_t>(d.tau[(p - 1) * n + s])];
    }
  }
  return d;
}

GarsideStructure::Info TableStructure::make_info(const TableData& data) {
  Info info;
  info.name = data.name;
  info.label = data.label;
  info.strands = data.strands;
  info.central_power = data.central_power;
  info.delta_length = data.length.at(data.delta);
  info.weights = data.weights;
  return info;
}

TableStructure::TableStructure(TableData data) : GarsideStructure(make_info(data)), data_(std::move(data)) {
  const std::size_t n = data_.count;
  std::vector<Simple> atoms;
  for (std::size_t a : data_.atoms) atoms.push_back(at(static_cast<std::int64_t>(a)));
  set_elements(at(static_cast<std::int64_t>(data_.identity)), at(static_cast<std::int64_t>(data_.delta)),
               std::move(atoms));
  for (std::size_t s = 0; s < n; ++s) by_serialization_.emplace(data_.serialized[s].dump(), static_cast<std::int32_t>(s));

  if (n > kDenseLimit) return;
  meet_.assign(n * n, 0);
  product_.assign(n * n, -1);
  quotient_.assign(n * n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      meet_[s * n + t] = static_cast<std::int32_t>(greedy_meet(at(s), at(t)).index());
      if (auto p = GarsideStructure::multiply(at(s), at(t))) {
        product_[s * n + t] = static_cast<std::int32_t>(p->index());
        quotient_[s * n + p->index()] = static_cast<std::int32_t>(t);
      }
    }
  }
  dense_ = true;
}

Simple TableStructure::tau(Simple s, int power) const {
  const int c = data_.central_power;
  const int p = ((power % c) + c) % c;
  return at(data_.tau[static_cast<std::size_t>(p) * data_.count + s.index()]);
}

std::optional<Simple> TableStructure::times_atom(Simple s, std::size_t atom) const {
  const std::int32_t t = data_.times_atom[s.index() * data_.atoms.size() + atom];
  if (t < 0) return std::nullopt;
  return at(t);
}

std::optional<Simple> TableStructure::atom_quotient(std::size_t atom, Simple s) const {
  const std::int32_t t = data_.atom_quotient[atom * data_.count + s.index()];
  if (t < 0) return std::nullopt;
  return at(t);
}

Simple TableStructure::do_meet(Simple s, Simple t) const {
  if (dense_) return at(meet_[s.index() * data_.count + t.index()]);
  return greedy_meet(s, t);
}

std::optional<Simple> TableStructure::multiply(Simple x, Simple y) const {
  if (!dense_) return GarsideStructure::multiply(x, y);
  const std::int32_t p = product_[x.index() * data_.count + y.index()];
  if (p < 0) return std::nullopt;
  return at(p);
}

Simple TableStructure::left_quotient(Simple m, Simple y) const {
  if (!dense_) return GarsideStructure::left_quotient(m, y);
  const std::int32_t q = quotient_[m.index() * data_.count + y.index()];
  if (q < 0) throw UsageError("left_quotient: divisor does not divide");
  return at(q);
}

Simple TableStructure::deserialize(const nlohmann::json& j) const {
  if (auto it = by_serialization_.find(j.dump()); it != by_serialization_.end()) return at(it->second);
  throw ParseError("unknown simple element for " + label() + ": " + j.dump());
}

std::uint64_t TableStructure::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  h = fnv1a(h, data_.count);
  for (std::size_t s = 0; s < data_.count; ++s) {
    for (char c : data_.serialized[s].dump()) h = fnv1a(h, static_cast<unsigned char>(c));
    h = fnv1a(h, static_cast<std::uint64_t>(data_.complement[s]));
    h = fnv1a(h, static_cast<std::uint64_t>(data_.length[s]));
  }
  return h;
}

}  // namespace garside

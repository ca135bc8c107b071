#include "garside/structure.hpp"

#include <atomic>

#include "garside/error.hpp"

namespace garside {

namespace {
std::atomic<std::uint32_t> next_tag{1};
}

GarsideStructure::GarsideStructure(Info info)
    : name_(std::move(info.name)),
      label_(std::move(info.label)),
      strands_(info.strands),
      tag_(static_cast<std::uint16_t>(next_tag.fetch_add(1) & 0xffff)),
      weights_(std::move(info.weights)),
      central_power_(info.central_power),
      delta_length_(info.delta_length) {}

void GarsideStructure::set_elements(Simple identity, Simple delta, std::vector<Simple> atoms) {
  if (atoms.size() > 64) throw CapacityError("at most 64 atoms are supported");
  identity_ = identity;
  delta_ = delta;
  atoms_ = std::move(atoms);
}

void GarsideStructure::require_owned(Simple s) const {
  if (!owns(s)) {
    throw UsageError("simple element does not belong to structure " + label_);
  }
}

std::size_t GarsideStructure::atom_index(Simple a) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == a) return i;
  }
  throw UsageError("not an atom of " + label_ + ": " + describe(a));
}

Simple GarsideStructure::meet(Simple s, Simple t) const {
  require_owned(s);
  require_owned(t);
  return do_meet(s, t);
}

Simple GarsideStructure::do_meet(Simple s, Simple t) const { return greedy_meet(s, t); }

Simple GarsideStructure::greedy_meet(Simple s, Simple t) const {
  // d is a common left divisor; s = d s', t = d t'.
  Simple d = identity_;
  for (;;) {
    const AtomSet common = starting_set(s) & starting_set(t);
    if (common == 0) return d;
    const auto a = static_cast<std::size_t>(__builtin_ctzll(common));
    d = *times_atom(d, a);
    s = *atom_quotient(a, s);
    t = *atom_quotient(a, t);
  }
}

std::optional<Simple> GarsideStructure::multiply(Simple x, Simple y) const {
  Simple acc = x;
  for (std::size_t a : atom_word(y)) {
    auto next = times_atom(acc, a);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

Simple GarsideStructure::left_quotient(Simple m, Simple y) const {
  while (m != identity_) {
    const AtomSet s = starting_set(m);
    const auto a = static_cast<std::size_t>(__builtin_ctzll(s));
    auto q = atom_quotient(a, y);
    if (!q) throw UsageError("left_quotient: divisor does not divide");
    y = *q;
    m = *atom_quotient(a, m);
  }
  return y;
}

bool GarsideStructure::divides(Simple u, Simple s) const { return meet(u, s) == u; }

std::vector<std::size_t> GarsideStructure::atom_word(Simple s) const {
  std::vector<std::size_t> word;
  while (s != identity_) {
    const AtomSet start = starting_set(s);
    const auto a = static_cast<std::size_t>(__builtin_ctzll(start));
    word.push_back(a);
    s = *atom_quotient(a, s);
  }
  return word;
}

std::size_t GarsideStructure::simple_count() const {
  throw CapacityError(label_ + " is not in table mode; simples cannot be enumerated");
}

Simple GarsideStructure::simple_at(std::size_t) const {
  throw CapacityError(label_ + " is not in table mode; simples cannot be enumerated");
}

std::pair<Simple, Simple> left_weighted_pair(const GarsideStructure& g, Simple x, Simple y) {
  const Simple m = g.meet(g.complement(x), y);
  if (m == g.identity()) return {x, y};
  return {*g.multiply(x, m), g.left_quotient(m, y)};
}

}  // namespace garside

#include "oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

// the two points an atom (a transposition) moves, 1-based, smaller first
std::pair<int, int> moved_points(const garside::GarsideStructure& g, garside::Simple a) {
  const auto perm = g.serialize(a);
  std::vector<int> moved;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i].get<int>() != static_cast<int>(i) + 1) moved.push_back(static_cast<int>(i) + 1);
  }
  if (moved.size() != 2) throw std::logic_error("atom is not a transposition");
  return {moved[0], moved[1]};
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Presentation classical(const garside::GarsideStructure& g) {
  Presentation p;
  std::vector<int> index;  // atom -> i for sigma_i
  for (auto a : g.atoms()) {
    auto [lo, hi] = moved_points(g, a);
    if (hi != lo + 1) throw std::logic_error("not an Artin generator");
    index.push_back(lo);
    p.weights.push_back(1);
  }
  const auto m = static_cast<std::uint8_t>(index.size());
  for (std::uint8_t x = 0; x < m; ++x) {
    for (std::uint8_t y = x + 1; y < m; ++y) {
      if (std::abs(index[x] - index[y]) > 1) {
        p.relations.push_back({{x, y}, {y, x}});
      } else {
        p.relations.push_back({{x, y, x}, {y, x, y}});
      }
    }
  }
  return p;
}

Presentation bkl(const garside::GarsideStructure& g) {
  Presentation p;
  std::map<std::pair<int, int>, std::uint8_t> atom_of;  // (t, s), t > s
  std::vector<std::pair<int, int>> ts;
  for (std::size_t i = 0; i < g.atom_count(); ++i) {
    auto [s, t] = moved_points(g, g.atoms()[i]);
    atom_of[{t, s}] = static_cast<std::uint8_t>(i);
    ts.push_back({t, s});
    p.weights.push_back(1);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      auto [t, s] = ts[i];
      auto [r, q] = ts[j];
      if ((t - r) * (t - q) * (s - r) * (s - q) > 0) {
        p.relations.push_back({{atom_of[ts[i]], atom_of[ts[j]]}, {atom_of[ts[j]], atom_of[ts[i]]}});
      }
    }
  }
  const int n = g.strands();
  for (int t = 1; t <= n; ++t) {
    for (int s = 1; s < t; ++s) {
      for (int r = 1; r < s; ++r) {
        const auto a_ts = atom_of.at({t, s});
        const auto a_sr = atom_of.at({s, r});
        const auto a_tr = atom_of.at({t, r});
        p.relations.push_back({{a_ts, a_sr}, {a_tr, a_ts}});
        p.relations.push_back({{a_tr, a_ts}, {a_sr, a_tr}});
      }
    }
  }
  return p;
}

Presentation g1(const garside::GarsideStructure& g) {
  if (g.atom_count() != 2 || g.describe(g.atoms()[0]) != "A") throw std::logic_error("expected atoms A, B");
  return Presentation{{1, 2}, {{{0, 1, 0}, {1, 1}}}};
}

Presentation for_structure(const garside::GarsideStructure& g) {
  if (g.name() == "classical") return classical(g);
  if (g.name() == "bkl") return bkl(g);
  if (g.name() == "g1") return g1(g);
  throw std::logic_error("no presentation for " + g.name());
}

const Word& Rewriter::class_of(const Word& w) {
  if (auto it = seen_.find(w); it != seen_.end()) return it->second;
  std::set<Word> members{w};
  std::deque<Word> todo{w};
  while (!todo.empty()) {
    Word cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& [lhs, rhs] : p_.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const Word& from = dir == 0 ? lhs : rhs;
        const Word& to = dir == 0 ? rhs : lhs;
        if (from.size() > cur.size()) continue;
        for (std::size_t i = 0; i + from.size() <= cur.size(); ++i) {
          if (!std::equal(from.begin(), from.end(), cur.begin() + static_cast<std::ptrdiff_t>(i))) continue;
          Word next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
          next.insert(next.end(), to.begin(), to.end());
          next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(i + from.size()), cur.end());
          if (members.insert(next).second) todo.push_back(std::move(next));
        }
      }
    }
  }
  Word least = *std::min_element(members.begin(), members.end(), word_less);
  for (const auto& m : members) seen_.emplace(m, least);
  return seen_.at(w);
}

std::vector<Word> words_of_weight(const std::vector<int>& weights, int k) {
  std::vector<std::vector<Word>> by_weight(static_cast<std::size_t>(k) + 1);
  by_weight[0].push_back({});
  for (int r = 1; r <= k; ++r) {
    for (std::size_t a = 0; a < weights.size(); ++a) {
      if (weights[a] > r) continue;
      for (const auto& w : by_weight[static_cast<std::size_t>(r - weights[a])]) {
        Word v = w;
        v.push_back(static_cast<std::uint8_t>(a));
        by_weight[static_cast<std::size_t>(r)].push_back(std::move(v));
      }
    }
  }
  return by_weight[static_cast<std::size_t>(k)];
}

std::size_t brute_force_count(Rewriter& r, int k) {
  std::set<Word> classes;
  for (const auto& w : words_of_weight(r.presentation().weights, k)) classes.insert(r.class_of(w));
  return classes.size();
}

Word expand(const garside::CanonicalForm& x) {
  const auto& g = x.structure();
  Word out;
  auto append = [&](garside::Simple s) {
    for (auto a : g.atom_word(s)) out.push_back(static_cast<std::uint8_t>(a));
  };
  for (std::int64_t i = 0; i < x.inf(); ++i) append(g.delta());
  for (auto s : x.factors()) append(s);
  return out;
}

}  // namespace oracle

#include "garside/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

#include "garside/error.hpp"

namespace garside {

std::int64_t AtomWord::weight() const {
  std::int64_t k = 0;
  for (auto a : letters) k += structure->atom_weight(a);
  return k;
}

AtomWord make_word(const GarsideStructure& g, std::vector<std::uint8_t> letters) {
  for (auto a : letters) {
    if (a >= g.atom_count()) throw UsageError("letter " + std::to_string(a) + " is not an atom of " + g.label());
  }
  return AtomWord{&g, std::move(letters)};
}

namespace {

// Deltas at the front become the infimum; identities are dropped.
CanonicalForm collect(const GarsideStructure& g, std::int64_t inf, const std::vector<Simple>& seq) {
  std::vector<Simple> factors;
  factors.reserve(seq.size());
  std::size_t i = 0;
  while (i < seq.size() && seq[i] == g.delta()) {
    ++inf;
    ++i;
  }
  for (; i < seq.size(); ++i) {
    if (seq[i] == g.delta()) throw std::logic_error("normal form: Delta after a proper factor");
    if (seq[i] != g.identity()) factors.push_back(seq[i]);
  }
  return CanonicalForm::trusted(g, inf, std::move(factors));
}

}  // namespace

CanonicalForm normal_form_baseline(const AtomWord& w) {
  const GarsideStructure& g = *w.structure;
  std::vector<Simple> seq;
  seq.reserve(w.letters.size());
  for (auto a : w.letters) seq.push_back(g.atoms()[a]);
  if (seq.size() < 2) return collect(g, 0, seq);

  auto rewrite = [&](std::size_t i) {
    const auto [a, b] = left_weighted_pair(g, seq[i], seq[i + 1]);
    if (a == seq[i]) return false;
    seq[i] = a;
    seq[i + 1] = b;
    return true;
  };
  // right-to-left sweeps carry changes (and Deltas) to the front in one pass;
  // left-to-right sweeps move identities to the back
  bool changed = true;
  bool leftward = true;
  while (changed) {
    changed = false;
    if (leftward) {
      for (std::size_t i = seq.size() - 1; i-- > 0;) changed |= rewrite(i);
    } else {
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) changed |= rewrite(i);
    }
    leftward = !leftward;
  }
  return collect(g, 0, seq);
}

// ---------------------------------------------------------------------------
// Linear algorithm

namespace {

struct Entry {
  Simple s;
  int l;  // Delta power to the left of s, modulo the central power
};

class LinearNormalForm {
 public:
  LinearNormalForm(const AtomWord& w, LinearOptions options)
      : w_(w), g_(*w.structure), c_(g_.central_power()), options_(options) {}

  CanonicalForm run() {
    stack_.reserve(w_.letters.size());
    for (std::size_t pos = 0; pos < w_.letters.size(); ++pos) {
      step(g_.atoms()[w_.letters[pos]]);
      if (options_.check_invariant) check(pos + 1);
    }
    return finish(stack_, pending_, inf_);
  }

 private:
  // Delta^l moved from between `left` and its right neighbour to the left of `left`
  void push_into(Entry& left, int l) const {
    if (l == 0) return;
    left.s = g_.tau(left.s, l);
    left.l = (left.l + l) % c_;
  }

  Simple meet_complement(Simple x, Simple y) const { return g_.meet(g_.complement(x), y); }

  void step(Simple letter) {
    Entry next{letter, pending_};
    pending_ = 0;
    if (stack_.empty()) {
      stack_.push_back(next);
      return;
    }
    // the pair compared below must not have a Delta power between it
    push_into(stack_.back(), next.l);
    next.l = 0;

    Simple m = meet_complement(stack_.back().s, next.s);
    if (m != g_.identity()) {
      stack_.back().s = *g_.multiply(stack_.back().s, m);
      next.s = g_.left_quotient(m, next.s);
      std::size_t j = stack_.size() - 1;
      if (j > 0) push_left(j);
      while (stack_[j].s != g_.delta() && j > 0 &&
             (m = meet_complement(stack_[j - 1].s, stack_[j].s)) != g_.identity()) {
        stack_[j - 1].s = *g_.multiply(stack_[j - 1].s, m);
        stack_[j].s = g_.left_quotient(m, stack_[j].s);
        --j;
        if (j > 0) push_left(j);
      }
      if (stack_[j].s == g_.delta()) {
        // delete the Delta; its power moves right, the counter records it
        const int carry = (stack_[j].l + 1) % c_;
        if (j + 1 < stack_.size()) {
          stack_[j + 1].l = (stack_[j + 1].l + carry) % c_;
        } else {
          next.l = (next.l + carry) % c_;
        }
        ++inf_;
        stack_.erase(stack_.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
    if (next.s == g_.identity()) {
      pending_ = next.l;  // carried to the following letter
    } else {
      stack_.push_back(next);
    }
  }

  void push_left(std::size_t j) {
    push_into(stack_[j - 1], stack_[j].l);
    stack_[j].l = 0;
  }

  // Final backward pass: all Delta powers to the front.
  CanonicalForm finish(std::vector<Entry> st, int pending, std::int64_t inf) const {
    if (pending != 0 && !st.empty()) push_into(st.back(), pending);
    for (std::size_t j = st.size(); j-- > 1;) {
      push_into(st[j - 1], st[j].l);
      st[j].l = 0;
    }
    std::vector<Simple> seq;
    seq.reserve(st.size());
    for (const auto& e : st) seq.push_back(e.s);
    return collect(g_, inf, seq);
  }

  void check(std::size_t consumed) const {
    for (const auto& e : stack_) {
      if (e.s == g_.identity()) throw std::logic_error("linear normal form: identity left in the prefix");
    }
    AtomWord prefix{&g_, std::vector<std::uint8_t>(w_.letters.begin(), w_.letters.begin() + consumed)};
    if (finish(stack_, pending_, inf_) != normal_form_baseline(prefix)) {
      throw std::logic_error("linear normal form: invariant violated after letter " + std::to_string(consumed));
    }
  }

  const AtomWord& w_;
  const GarsideStructure& g_;
  const int c_;
  LinearOptions options_;
  std::vector<Entry> stack_;
  int pending_ = 0;
  std::int64_t inf_ = 0;
};

}  // namespace

CanonicalForm normal_form_linear(const AtomWord& w, LinearOptions options) {
  return LinearNormalForm(w, options).run();
}

// ---------------------------------------------------------------------------
// Right multiplication by a simple

namespace {

// Rewrites x * s from the right. `record` receives (s_i, m_i) for each
// non-trivial step, rightmost first.
template <class Record>
void multiply_from_right(CanonicalForm& x, Simple s, Record&& record) {
  const GarsideStructure& g = x.structure();
  if (s == g.identity()) return;
  auto& f = x.mutable_factors();
  if (s == g.delta()) {
    for (Simple& t : f) t = g.tau(t, 1);
    x.set_inf(x.inf() + 1);
    return;
  }
  f.push_back(s);
  for (std::size_t j = f.size() - 1; j > 0; --j) {
    const Simple m = g.meet(g.complement(f[j - 1]), f[j]);
    if (m == g.identity()) break;
    record(f[j - 1], m);
    f[j - 1] = *g.multiply(f[j - 1], m);
    f[j] = g.left_quotient(m, f[j]);
    if (f[j - 1] == g.delta()) {
      // x_1 ... x_{j-1} Delta = Delta tau(x_1) ... tau(x_{j-1})
      for (std::size_t i = 0; i + 1 < j; ++i) f[i] = g.tau(f[i], 1);
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(j - 1));
      x.set_inf(x.inf() + 1);
      break;
    }
  }
  if (!f.empty() && f.back() == g.identity()) f.pop_back();
}

}  // namespace

void multiply_simple_in_place(CanonicalForm& x, Simple s) {
  x.structure().require_owned(s);
  multiply_from_right(x, s, [](Simple, Simple) {});
}

CanonicalForm multiply_simple(const CanonicalForm& x, Simple s) {
  CanonicalForm y = x;
  multiply_simple_in_place(y, s);
  return y;
}

CanonicalForm normal_form_by_multiplication(const AtomWord& w) {
  const GarsideStructure& g = *w.structure;
  CanonicalForm x(g);
  for (auto a : w.letters) multiply_from_right(x, g.atoms()[a], [](Simple, Simple) {});
  return x;
}

// ---------------------------------------------------------------------------
// Penetration distance

int penetration_distance(const CanonicalForm& x, const CanonicalForm& xy) {
  const GarsideStructure& g = x.structure();
  if (&g != &xy.structure()) throw UsageError("penetration distance: mixed structures");
  // x Delta^{-p} has factors tau^{-p}(x_i); compare x_i with tau^{p-q}(z_i)
  const auto shift = static_cast<int>((x.inf() - xy.inf()) % g.central_power());
  const auto& a = x.factors();
  const auto& b = xy.factors();
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == g.tau(b[common], shift)) ++common;
  return static_cast<int>(a.size() - common);
}

int penetration_distance(const CanonicalForm& x, Simple y) { return penetration_distance(x, multiply_simple(x, y)); }

int penetration_distance(const CanonicalForm& x, const AtomWord& y) {
  if (y.structure != &x.structure()) throw UsageError("penetration distance: mixed structures");
  CanonicalForm xy = x;
  for (auto a : y.letters) multiply_from_right(xy, x.structure().atoms()[a], [](Simple, Simple) {});
  return penetration_distance(x, xy);
}

std::pair<CanonicalForm, PenetrationRecord> pd_tracked(const CanonicalForm& x, Simple s) {
  const GarsideStructure& g = x.structure();
  g.require_owned(s);
  if (s == g.identity()) throw UsageError("pd_tracked: the multiplier must not be the identity");
  PenetrationRecord rec;
  CanonicalForm y = x;
  if (s == g.delta()) {
    multiply_from_right(y, s, [](Simple, Simple) {});
    return {std::move(y), std::move(rec)};
  }
  multiply_from_right(y, s, [&](Simple si, Simple mi) { rec.trail.emplace_back(si, mi); });
  std::reverse(rec.trail.begin(), rec.trail.end());
  rec.pd = static_cast<int>(rec.trail.size());
  return {std::move(y), std::move(rec)};
}

bool is_penetration_sequence(const GarsideStructure& g, const std::vector<std::pair<Simple, Simple>>& trail) {
  const Simple one = g.identity();
  const Simple delta = g.delta();
  for (std::size_t i = 0; i < trail.size(); ++i) {
    const auto [s, m] = trail[i];
    if (s == one || s == delta || m == one || m == delta) return false;
    const auto sm = g.multiply(s, m);
    if (!sm) return false;
    if (i > 0 && *sm == delta) return false;
    if (i + 1 < trail.size()) {
      const auto [s2, m2] = trail[i + 1];
      if (!is_left_weighted(g, s, s2)) return false;
      const auto s2m2 = g.multiply(s2, m2);
      if (!s2m2 || g.meet(g.complement(s), *s2m2) != m) return false;
    }
  }
  return true;
}

}  // namespace garside

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "garside/error.hpp"
#include "garside/normal_form.hpp"
#include "garside/rng.hpp"
#include "garside/sampling.hpp"
#include "garside/structures.hpp"
#include "enumerate.hpp"
#include "oracle.hpp"

using namespace garside;
using oracle::forms_up_to;
using oracle::proper_simples;

namespace {

AtomWord random_word(const GarsideStructure& g, std::size_t len, Rng& rng) {
  std::vector<std::uint8_t> letters(len);
  for (auto& l : letters) l = static_cast<std::uint8_t>(rng.below(g.atom_count()));
  return make_word(g, std::move(letters));
}

AtomWord word_of(const GarsideStructure& g, const oracle::Word& w) { return make_word(g, w); }

struct Case {
  StructurePtr g;
  int max_weight;
};

std::vector<Case> exhaustive_cases() {
  return {{build_classical(3), 7}, {build_classical(4), 5}, {build_bkl(3), 6}, {build_bkl(4), 4}, {build_g1(), 9},
          {build_classical(2), 5}, {build_bkl(2), 5}};
}

}  // namespace

// the normal form is a complete invariant of the rewriting classes
TEST(NormalForm, AgreesWithWordOracle) {
  for (const auto& [g, kmax] : exhaustive_cases()) {
    oracle::Rewriter r(oracle::for_structure(*g));
    for (int k = 0; k <= kmax; ++k) {
      std::map<oracle::Word, CanonicalForm> by_class;
      for (const auto& w : oracle::words_of_weight(r.presentation().weights, k)) {
        const CanonicalForm x = normal_form_linear(word_of(*g, w));
        ASSERT_EQ(x.weighted_length(), k);
        ASSERT_EQ(r.class_of(oracle::expand(x)), r.class_of(w)) << g->label() << " " << x.to_string();
        auto [it, fresh] = by_class.emplace(r.class_of(w), x);
        ASSERT_EQ(it->second, x) << g->label();
      }
      std::set<std::string> distinct;
      for (const auto& [_, x] : by_class) distinct.insert(x.to_json().dump());
      EXPECT_EQ(distinct.size(), by_class.size()) << g->label() << " k=" << k;
    }
  }
}

TEST(NormalForm, ThreeAlgorithmsAgreeOnRandomWords) {
  std::vector<StructurePtr> gs{build_classical(3), build_classical(5), build_bkl(4), build_bkl(5), build_g1(),
                               build_classical(2), build_bkl(2), build_classical(8)};
  for (const auto& g : gs) {
    for (std::uint64_t i = 0; i < 150; ++i) {
      Rng rng = Rng::stream(99, i);
      const AtomWord w = random_word(*g, rng.below(120), rng);
      const CanonicalForm lin = normal_form_linear(w);
      EXPECT_EQ(lin, normal_form_baseline(w)) << g->label();
      EXPECT_EQ(lin, normal_form_by_multiplication(w)) << g->label();
      EXPECT_EQ(lin.weighted_length(), w.weight());
    }
  }
}

TEST(NormalForm, InvariantCheckMode) {
  for (const auto& g : {build_classical(4), build_bkl(4), build_g1()}) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      Rng rng = Rng::stream(5, i);
      const AtomWord w = random_word(*g, 40, rng);
      EXPECT_NO_THROW(normal_form_linear(w, {.check_invariant = true}));
    }
  }
}

TEST(NormalForm, DeltaPowers) {
  auto b2 = build_classical(2);
  auto x = normal_form_linear(make_word(*b2, {0, 0, 0}));
  EXPECT_EQ(x.inf(), 3);
  EXPECT_EQ(x.cl(), 0u);
  auto b3 = build_classical(3);
  // s1 s2 s1 s2 s1 s2 = Delta^2
  auto d2 = normal_form_linear(make_word(*b3, {0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(d2.inf(), 2);
  EXPECT_EQ(d2.cl(), 0u);
  // s1 Delta = Delta s2
  auto y = normal_form_linear(make_word(*b3, {0, 0, 1, 0}));
  EXPECT_EQ(y.inf(), 1);
  ASSERT_EQ(y.cl(), 1u);
  EXPECT_EQ(y.factors()[0], b3->atoms()[1]);
  auto g1 = build_g1();
  auto z = normal_form_linear(make_word(*g1, {1, 1, 1, 0}));
  EXPECT_EQ(z.inf(), 1);
  EXPECT_EQ(z.cl(), 1u);
}

TEST(NormalForm, EmptyWord) {
  auto g = build_bkl(4);
  auto x = normal_form_linear(make_word(*g, {}));
  EXPECT_TRUE(x.is_identity());
  EXPECT_EQ(x, normal_form_baseline(make_word(*g, {})));
  EXPECT_EQ(x.starting_set(), 0u);
}

TEST(NormalForm, MakeWordChecksLetters) {
  auto g = build_classical(3);
  EXPECT_THROW(make_word(*g, {0, 2}), UsageError);
}

TEST(CanonicalForm, CheckedConstruction) {
  auto g = build_classical(3);
  const Simple s1 = g->atoms()[0];
  EXPECT_NO_THROW(CanonicalForm(*g, 0, {s1, s1}));
  // s1 s2 is not left-weighted: s1 s2 is simple
  EXPECT_THROW(CanonicalForm(*g, 0, {s1, g->atoms()[1]}), ValidationError);
  EXPECT_THROW(CanonicalForm(*g, 0, {g->delta()}), ValidationError);
  EXPECT_THROW(CanonicalForm(*g, 0, {g->identity()}), ValidationError);
  EXPECT_THROW(CanonicalForm(*g, -1, {}), ValidationError);
}

TEST(CanonicalForm, AccessorsAndJson) {
  auto g = build_classical(4);
  Rng rng(11);
  const auto x = normal_form_linear(random_word(*g, 60, rng));
  ASSERT_GE(x.cl(), 2u);
  EXPECT_EQ(x.lambda(1), x.factors().front());
  EXPECT_EQ(x.rho(1), x.factors().back());
  EXPECT_EQ(x.lambda(x.cl() + 1), g->identity());
  EXPECT_EQ(x.rho(x.cl() + 1), g->identity());
  EXPECT_EQ(x.sup(), x.inf() + static_cast<std::int64_t>(x.cl()));
  EXPECT_EQ(CanonicalForm::from_json(*g, x.to_json()), x);
  EXPECT_THROW(CanonicalForm::from_json(*g, nlohmann::json::parse(R"({"inf":0})")), ParseError);
}

TEST(Penetration, TrackedAgreesWithDefinition) {
  for (const auto& g : {build_classical(3), build_classical(4), build_bkl(4), build_g1()}) {
    const auto forms = forms_up_to(*g, g->simple_count() > 10 ? 2 : 4);
    std::vector<Simple> multipliers;
    for (std::size_t i = 0; i < g->simple_count(); ++i) {
      if (g->simple_at(i) != g->identity()) multipliers.push_back(g->simple_at(i));
    }
    EXPECT_THROW(pd_tracked(forms.back(), g->identity()), UsageError);
    for (const auto& x : forms) {
      for (auto s : multipliers) {
        auto [xy, rec] = pd_tracked(x, s);
        oracle::Word w = oracle::expand(x);
        for (auto a : g->atom_word(s)) w.push_back(static_cast<std::uint8_t>(a));
        const auto direct = normal_form_baseline(make_word(*g, w));
        ASSERT_EQ(xy, direct);
        ASSERT_EQ(xy, multiply_simple(x, s));
        ASSERT_EQ(rec.pd, penetration_distance(x, s));
        ASSERT_EQ(rec.pd, penetration_distance(x, direct));
        if (s == g->delta()) {
          EXPECT_EQ(rec.pd, 0);
          EXPECT_TRUE(rec.trail.empty());
        } else {
          EXPECT_TRUE(is_penetration_sequence(*g, rec.trail)) << g->label() << " " << x.to_string();
        }
      }
    }
  }
}

TEST(Penetration, G1BoundedByTwo) {
  auto g = build_g1();
  int max_pd = 0;
  for (const auto& x : forms_up_to(*g, 5)) {
    for (auto a : g->atoms()) max_pd = std::max(max_pd, penetration_distance(x, a));
  }
  EXPECT_EQ(max_pd, 2);
}

TEST(Penetration, WordMultiplier) {
  auto g = build_classical(4);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng::stream(3, i);
    const auto x = normal_form_linear(random_word(*g, 30, rng));
    const auto y = random_word(*g, 4, rng);
    oracle::Word w = oracle::expand(x);
    w.insert(w.end(), y.letters.begin(), y.letters.end());
    EXPECT_EQ(penetration_distance(x, y), penetration_distance(x, normal_form_linear(make_word(*g, w))));
  }
}

TEST(Penetration, SequenceConditions) {
  auto g = build_g1();
  const auto ps = proper_simples(*g);
  // every single pair (s, m) with s m simple and proper m is a sequence
  for (auto s : ps) {
    for (auto m : ps) {
      const bool ok = g->multiply(s, m).has_value();
      EXPECT_EQ(is_penetration_sequence(*g, {{s, m}}), ok);
    }
  }
  EXPECT_FALSE(is_penetration_sequence(*g, {{g->identity(), ps[0]}}));
}

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <sstream>

#include "garside/error.hpp"
#include "garside/normal_form.hpp"
#include "garside/rng.hpp"
#include "garside/sampling.hpp"
#include "garside/structures.hpp"
#include "oracle.hpp"

using namespace garside;

namespace {

double chi_square_p(const std::map<std::string, int>& hits, std::size_t cells, int draws) {
  const double expected = static_cast<double>(draws) / static_cast<double>(cells);
  double stat = 0;
  for (const auto& [_, h] : hits) stat += (h - expected) * (h - expected) / expected;
  stat += static_cast<double>(cells - hits.size()) * expected;  // empty cells
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST(Counting, MatchesWordOracle) {
  struct Case {
    StructurePtr g;
    int kmax;
  };
  for (const auto& [g, kmax] : std::vector<Case>{{build_classical(3), 8}, {build_classical(4), 6},
                                                {build_bkl(3), 8}, {build_g1(), 8}}) {
    oracle::Rewriter r(oracle::for_structure(*g));
    LengthCountTable table(*g, kmax);
    for (int k = 0; k <= kmax; ++k) {
      const auto expected = oracle::brute_force_count(r, k);
      EXPECT_EQ(table.count_elements(k), expected) << g->label() << " k=" << k;
      EXPECT_EQ(count_elements(*g, k), expected);
      EXPECT_EQ(brute_force_elements(*g, k).size(), expected);
    }
  }
  EXPECT_EQ(count_elements(*build_classical(3), 2), 4);
  EXPECT_EQ(count_elements(*build_classical(3), 3), 7);
}

TEST(Counting, LargeLengthsAreExact) {
  // B3+ has F(k+3) - 1 elements of length k
  auto g = build_classical(3);
  LengthCountTable table(*g, 300);
  mpz_class fib;
  mpz_fib_ui(fib.get_mpz_t(), 303);
  EXPECT_EQ(table.count_elements(300), fib - 1);
  mpz_fib_ui(fib.get_mpz_t(), 11);
  EXPECT_EQ(table.count_elements(8), fib - 1);
  EXPECT_THROW(table.count_elements(301), UsageError);
}

TEST(Counting, NeedsTables) {
  EXPECT_THROW(count_elements(*build_classical(5, TableMode::permutation), 3), CapacityError);
  EXPECT_THROW(LengthCountTable(*build_classical(5), 100, 10), CapacityError);
}

TEST(WordSampler, Counts) {
  auto b4 = build_classical(4);
  WordSampler ws(*b4, 10);
  EXPECT_EQ(ws.word_count(10), 59049);
  // A = 1, B = 2: Fibonacci
  auto g1 = build_g1();
  WordSampler wg(*g1, 30);
  EXPECT_EQ(wg.word_count(0), 1);
  EXPECT_EQ(wg.word_count(1), 1);
  EXPECT_EQ(wg.word_count(30), 1346269);
  Rng rng(4);
  for (int k = 0; k <= 30; ++k) EXPECT_EQ(wg.sample(k, rng).weight(), k);
  EXPECT_THROW(wg.sample(31, rng), UsageError);
}

TEST(WordSampler, UniformOverWeightedWords) {
  auto g = build_g1();
  WordSampler ws(*g, 6);
  std::map<std::string, int> hits;
  const int draws = 13000;
  for (int i = 0; i < draws; ++i) {
    Rng rng = Rng::stream(17, static_cast<std::uint64_t>(i));
    auto w = ws.sample(6, rng);
    hits[std::string(w.letters.begin(), w.letters.end())]++;
  }
  EXPECT_EQ(hits.size(), 13u);
  EXPECT_GT(chi_square_p(hits, 13, draws), 1e-3);
}

TEST(Urb, UniformOnSmallLengths) {
  for (auto [g, k] : std::vector<std::pair<StructurePtr, int>>{{build_classical(4), 3}, {build_g1(), 5}, {build_bkl(4), 2}}) {
    LengthCountTable table(*g, k);
    const auto cells = table.count_elements(k).get_ui();
    std::map<std::string, int> hits;
    const int draws = 200 * static_cast<int>(cells);
    for (int i = 0; i < draws; ++i) {
      Rng rng = Rng::stream(23, static_cast<std::uint64_t>(i));
      const CanonicalForm x = table.sample(k, rng);
      ASSERT_EQ(x.weighted_length(), k);
      hits[x.to_json().dump()]++;
    }
    EXPECT_EQ(hits.size(), cells) << g->label();
    EXPECT_GT(chi_square_p(hits, cells, draws), 1e-3) << g->label();
  }
}

TEST(Urb, ContinuationCounts) {
  // each factor's continuation count depends only on S(∂s)
  auto g = build_classical(4);
  LengthCountTable table(*g, 12);
  for (std::size_t i = 0; i < g->simple_count(); ++i) {
    for (std::size_t j = 0; j < g->simple_count(); ++j) {
      const Simple s = g->simple_at(i), t = g->simple_at(j);
      if (s == g->identity() || t == g->identity() || s == g->delta() || t == g->delta()) continue;
      if (g->starting_set(g->complement(s)) != g->starting_set(g->complement(t))) continue;
      for (int r = 0; r <= 12; ++r) EXPECT_EQ(table.count_after(s, r), table.count_after(t, r));
    }
  }
  // summing over Delta powers and first factors recovers count_elements
  for (int k = 1; k <= 12; ++k) {
    mpz_class total = 0;
    for (std::int64_t inf = 0; inf * 6 <= k; ++inf) {
      const std::int64_t rest = k - inf * 6;
      if (rest == 0) {
        total += 1;
        continue;
      }
      for (std::size_t i = 0; i < g->simple_count(); ++i) {
        const Simple s = g->simple_at(i);
        if (s == g->identity() || s == g->delta() || g->length(s) > rest) continue;
        total += table.count_after(s, rest - g->length(s));
      }
    }
    EXPECT_EQ(total, table.count_elements(k)) << k;
  }
}

TEST(Samples, DeterministicAcrossThreads) {
  auto g = build_classical(4);
  for (auto m : {SampleMethod::urb, SampleMethod::word}) {
    auto a = generate_samples(g, m, 40, 50, 9, 1);
    auto b = generate_samples(g, m, 40, 50, 9, 3);
    auto c = generate_samples(g, m, 40, 50, 10, 1);
    EXPECT_EQ(a.items, b.items);
    EXPECT_NE(a.items, c.items);
    for (const auto& x : a.items) EXPECT_EQ(x.weighted_length(), 40);
  }
}

TEST(Samples, TrivialLength) {
  auto s = generate_samples(build_classical(3), SampleMethod::word, 0, 5, 1);
  ASSERT_EQ(s.items.size(), 5u);
  for (const auto& x : s.items) EXPECT_TRUE(x.is_identity());
  EXPECT_THROW(generate_samples(build_classical(3), SampleMethod::urb, -1, 5, 1), UsageError);
}

TEST(Samples, FileRoundTrip) {
  auto g = build_bkl(4);
  auto s = generate_samples(g, SampleMethod::urb, 25, 20, 3);
  std::stringstream io;
  write_samples(io, s);
  const std::string text = io.str();
  auto back = read_samples(io, structure_from_header);
  EXPECT_EQ(back.k, 25);
  EXPECT_EQ(back.seed, 3u);
  EXPECT_EQ(back.method, SampleMethod::urb);
  ASSERT_EQ(back.items.size(), s.items.size());
  for (std::size_t i = 0; i < s.items.size(); ++i) EXPECT_EQ(back.items[i].to_json(), s.items[i].to_json());
  std::stringstream again;
  write_samples(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(Samples, ParseErrorsCarryLineNumbers) {
  auto s = generate_samples(build_classical(3), SampleMethod::word, 6, 3, 1);
  std::stringstream io;
  write_samples(io, s);
  std::string text = io.str();
  // break the third line (second item)
  std::size_t pos = 0;
  for (int i = 0; i < 2; ++i) pos = text.find('\n', pos) + 1;
  text.insert(pos, "{oops");
  std::stringstream bad(text);
  try {
    read_samples(bad, structure_from_header);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream empty;
  EXPECT_THROW(read_samples(empty, structure_from_header), ParseError);
}

TEST(Samples, RejectsWrongLengths) {
  auto g = build_classical(3);
  auto s = generate_samples(g, SampleMethod::word, 6, 2, 1);
  s.items[1] = normal_form_linear(make_word(*g, {0}));
  std::stringstream io;
  write_samples(io, s);
  EXPECT_THROW(read_samples(io, structure_from_header), ValidationError);
}

TEST(Rng, StreamsAreIndependentOfOrder) {
  Rng a = Rng::stream(5, 7);
  Rng b = Rng::stream(5, 7);
  Rng c = Rng::stream(5, 8);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(3), 3u);
  mpz_class big("100000000000000000000000000000");
  for (int i = 0; i < 100; ++i) EXPECT_LT(random_below(r, big), big);
}

#include "gog/free_words.hpp"
#include "support/random_graphs.hpp"

#include <gtest/gtest.h>

namespace {

using gog::Word;

// one entry per letter, +-gen
std::vector<int> expand(const Word& w) {
  std::vector<int> out;
  for (const auto& l : w) {
    const long n = static_cast<long>(gog::abs(l.exp));
    for (long i = 0; i < n; ++i) out.push_back(l.exp > 0 ? l.gen : -l.gen);
  }
  return out;
}

std::vector<int> naive_reduce(std::vector<int> xs) {
  std::vector<int> out;
  for (int x : xs) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<int> naive_cyclic_core(std::vector<int> xs) {
  xs = naive_reduce(xs);
  std::size_t lo = 0, hi = xs.size();
  while (hi - lo >= 2 && xs[lo] == -xs[hi - 1]) {
    ++lo;
    --hi;
  }
  return {xs.begin() + static_cast<std::ptrdiff_t>(lo), xs.begin() + static_cast<std::ptrdiff_t>(hi)};
}

// smallest period dividing the length
std::size_t naive_period(const std::vector<int>& xs) {
  for (std::size_t d = 1; d <= xs.size(); ++d) {
    if (xs.size() % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < xs.size() && ok; ++i) ok = xs[i] == xs[i - d];
    if (ok) return d;
  }
  return xs.size();
}

Word random_word(gogtest::Rng& rng, int rank, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({gogtest::uniform(rng, 1, rank), gogtest::nonzero(rng, 3)});
  return w;
}

TEST(FreeWords, ReduceMatchesLetterByLetterCancellation) {
  gogtest::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 2, gogtest::uniform(rng, 0, 8));
    EXPECT_EQ(expand(gog::free_reduce(w)), naive_reduce(expand(w)));
  }
}

TEST(FreeWords, InverseAndConcat) {
  const Word a{{1, 2}, {2, -1}};
  EXPECT_TRUE(gog::free_reduce(gog::concat(a, gog::inverse(a))).empty());
  EXPECT_EQ(gog::conjugate(Word{{2, 1}}, Word{{1, 2}}), (Word{{2, 1}, {1, 2}, {2, -1}}));
  EXPECT_EQ(gog::letter_length(a), 3);
}

TEST(FreeWords, RankCheck) {
  EXPECT_THROW(gog::free_reduce(Word{{3, 1}}, 2), gog::Error);
  try {
    gog::free_reduce(Word{{3, 1}}, 2);
  } catch (const gog::Error& e) {
    EXPECT_EQ(e.kind(), gog::ErrorKind::UnknownGenerator);
  }
}

TEST(FreeWords, CyclicReduceCore) {
  gogtest::Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Word w = random_word(rng, 2, gogtest::uniform(rng, 1, 8));
    const auto [h, core] = gog::cyclic_reduce(w);
    EXPECT_EQ(expand(gog::free_reduce(gog::conjugate(h, core))), naive_reduce(expand(w)));
    EXPECT_EQ(expand(core).size(), naive_cyclic_core(expand(w)).size());
  }
}

TEST(FreeWords, ConjugatedSquareHasRootA) {
  const auto r = gog::primitive_root(Word{{2, 1}, {1, 2}, {2, -1}});
  EXPECT_EQ(r.root, (Word{{1, 1}}));
  EXPECT_EQ(r.conjugator, (Word{{2, 1}}));
  EXPECT_EQ(r.exponent, 2);
}

TEST(FreeWords, PrimitiveRootReconstructsAndIsNotAProperPower) {
  gogtest::Rng rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    Word base = random_word(rng, 2, gogtest::uniform(rng, 1, 4));
    if (gog::free_reduce(base).empty()) continue;
    const Word w = gog::free_reduce(gog::power(base, gogtest::uniform(rng, 1, 3)));
    const auto r = gog::primitive_root(w);
    EXPECT_EQ(gog::free_reduce(gog::conjugate(r.conjugator, gog::power(r.root, r.exponent))), w);
    const auto root_letters = expand(r.root);
    EXPECT_EQ(naive_period(root_letters), root_letters.size());
    EXPECT_EQ(naive_cyclic_core(root_letters).size(), root_letters.size());
    const auto core = naive_cyclic_core(expand(w));
    EXPECT_EQ(gog::abs(r.exponent) * root_letters.size(), core.size());
  }
}

TEST(FreeWords, RootIsInvariantUnderConjugationInversionAndPowers) {
  gogtest::Rng rng(14);
  for (int trial = 0; trial < 400; ++trial) {
    const Word w = gog::free_reduce(random_word(rng, 2, gogtest::uniform(rng, 1, 5)));
    if (w.empty()) continue;
    const Word g = random_word(rng, 2, gogtest::uniform(rng, 0, 3));
    const auto r = gog::primitive_root(w);
    const auto rc = gog::primitive_root(gog::free_reduce(gog::conjugate(g, w)));
    const auto ri = gog::primitive_root(gog::inverse(w));
    const auto rp = gog::primitive_root(gog::power(w, 3));
    EXPECT_EQ(rc.root, r.root);
    EXPECT_EQ(rc.exponent, r.exponent);
    EXPECT_EQ(ri.root, r.root);
    EXPECT_EQ(ri.exponent, -r.exponent);
    EXPECT_EQ(rp.root, r.root);
    EXPECT_EQ(rp.exponent, 3 * r.exponent);
  }
}

TEST(FreeWords, TrivialWordHasNoRoot) { EXPECT_THROW(gog::primitive_root(Word{{1, 1}, {1, -1}}), gog::Error); }

TEST(FreeWords, CyclicConjugacyFindsConjugator) {
  gogtest::Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const Word u = random_word(rng, 2, gogtest::uniform(rng, 1, 5));
    const Word g = random_word(rng, 2, gogtest::uniform(rng, 0, 4));
    const Word v = gog::free_reduce(gog::conjugate(g, u));
    const auto c = gog::cyclic_conjugacy(u, v);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(gog::free_reduce(gog::conjugate(*c, u)), v);
  }
  EXPECT_FALSE(gog::cyclic_conjugacy(Word{{1, 1}}, Word{{2, 1}}).has_value());
  EXPECT_FALSE(gog::cyclic_conjugacy(Word{{1, 1}}, Word{{1, -1}}).has_value());
}

TEST(FreeWords, PowerExponent) {
  const Word ab{{1, 1}, {2, 1}};
  EXPECT_EQ(gog::power_exponent(gog::power(ab, 4), ab), 4);
  EXPECT_EQ(gog::power_exponent(gog::power(ab, -2), ab), -2);
  EXPECT_FALSE(gog::power_exponent(Word{{1, 1}}, ab).has_value());
  EXPECT_EQ(gog::power_exponent(Word{{1, 6}}, Word{{1, 2}}), 3);
  EXPECT_FALSE(gog::power_exponent(Word{{1, 5}}, Word{{1, 2}}).has_value());
}

TEST(FreeWords, CommensurabilityData) {
  const auto c = gog::commensurability_data(Word{{2, 1}, {1, 2}, {2, -1}}, Word{{1, -3}});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->root, (Word{{1, 1}}));
  EXPECT_EQ(c->p, 2);
  EXPECT_EQ(c->q, -3);
  EXPECT_EQ(c->sign, -1);
  EXPECT_FALSE(gog::commensurability_data(Word{{1, 1}}, Word{{2, 1}}).has_value());
}

TEST(FreeWords, WordOrderIsTotal) {
  gogtest::Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    const Word a = gog::free_reduce(random_word(rng, 2, 3));
    const Word b = gog::free_reduce(random_word(rng, 2, 3));
    EXPECT_EQ(gog::compare_words(a, b), -gog::compare_words(b, a));
    EXPECT_EQ(gog::compare_words(a, b) == 0, a == b);
  }
}

}  // namespace

#include <gtest/gtest.h>

#include <set>

#include <bubblescope/freegrp.hpp>
#include <bubblescope/random.hpp>

using namespace bubblescope;

TEST(FreeGroup, ReductionCancelsPairs) {
  const Word w = parse_word("a1 a2 a2^-1 a1^-1 a2");
  EXPECT_EQ(reduce(w), parse_word("a2"));
  EXPECT_TRUE(reduce(w * inverse(w)).empty());
  EXPECT_TRUE(is_reduced(parse_word("a1 a2 a1")));
  EXPECT_FALSE(is_reduced(parse_word("a1 a1^-1")));
}

TEST(FreeGroup, TextRoundTrip) {
  const Word w = parse_word("a1^2 a2^-3 a1");
  EXPECT_EQ(parse_word(to_string(w)), w);
  EXPECT_EQ(w.size(), 6u);
}

TEST(FreeGroup, CyclicReduction) {
  const Word w = parse_word("a2 a1 a1 a2^-1");
  const auto c = cyclic_reduce(w);
  EXPECT_EQ(c.core, parse_word("a1^2"));
  EXPECT_EQ(reduce(c.conjugator * c.core * inverse(c.conjugator)), reduce(w));
}

TEST(FreeGroup, ConjugacyExamples) {
  EXPECT_TRUE(conjugate_test(parse_word("a1 a2"), parse_word("a2 a1")));
  EXPECT_TRUE(conjugate_test(parse_word("a1"), parse_word("a2 a1 a2^-1")));
  EXPECT_FALSE(conjugate_test(parse_word("a1 a2"), parse_word("a1 a2^-1")));
  EXPECT_FALSE(conjugate_test(parse_word("a1^2"), parse_word("a1")));
  EXPECT_FALSE(conjugate_test(parse_word("a1 a2 a1^-1 a2^-1"), parse_word("a1 a2^-1 a1^-1 a2 a2")));
}

TEST(FreeGroup, EnumerationCounts) {
  // 1 + 4 + 12 + 36 + 108 + 324 reduced words over two generators.
  EXPECT_EQ(enumerate_reduced_words(2, 3).size(), 53u);
  EXPECT_EQ(enumerate_reduced_words(2, 5).size(), 485u);
}

TEST(FreeGroup, AgreesWithBruteForce) {
  const auto words = enumerate_reduced_words(2, 3);
  for (const Word& u : words)
    for (const Word& v : words)
      ASSERT_EQ(conjugate_test(u, v), conjugate_bruteforce(u, v, 2, 5)) << to_string(u) << " ~ " << to_string(v);
}

TEST(FreeGroup, ConjugatorBoundSevenSuffices) {
  // Restricted to words of length <= 5, conjugating by words of length <= 8
  // reaches nothing that length <= 7 does not.
  const auto words = enumerate_reduced_words(2, 5);
  const auto c7 = enumerate_reduced_words(2, 7);
  const auto c8 = enumerate_reduced_words(2, 8);
  const auto orbit = [&](const Word& u, const std::vector<Word>& cs) {
    std::set<Word> out;
    for (const Word& c : cs) {
      Word v = reduce(c * u * inverse(c));
      if (v.size() <= 5) out.insert(std::move(v));
    }
    return out;
  };
  for (const Word& u : words) ASSERT_EQ(orbit(u, c7), orbit(u, c8)) << to_string(u);
}

TEST(FreeGroup, RandomWordsAreReduced) {
  Philox rng(13, 0);
  for (int i = 0; i < 100; ++i) {
    const Word w = random_reduced_word(3, 12, rng);
    EXPECT_EQ(w.size(), 12u);
    EXPECT_TRUE(is_reduced(w));
  }
}

TEST(FreeGroup, DecompositionFamily) {
  const auto fam = decomposition_family(3, 0, 4);
  ASSERT_EQ(fam.size(), 5u);
  for (const auto& m : fam) {
    EXPECT_EQ(m.conjugators.size(), 3u);
    EXPECT_EQ(witness_product(m), m.word);
  }
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) EXPECT_FALSE(conjugate_test(fam[i].word, fam[j].word));
}

TEST(FreeGroup, AbelianCheck) {
  EXPECT_TRUE(abelian_decomposition_check({3, 0}, {{1, 0}, {1, 0}, {1, 0}}));
  EXPECT_FALSE(abelian_decomposition_check({3, 1}, {{1, 0}, {2, 0}}));
}

TEST(SurfaceGroup, TauKillsRelator) {
  for (int g = 1; g <= 3; ++g) EXPECT_TRUE(tau(surface_relator(g)).empty());
  const SurfaceWord w = surface_a(1, 2) * surface_b(2, 2) * surface_a(2, 2);
  EXPECT_EQ(tau(w), parse_word("a1 a2"));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mevo/moea.hpp"
#include "mevo/selfies.hpp"

namespace mevo {
namespace {

Genome genome_of(std::initializer_list<const char*> symbols) {
  Genome g;
  for (const char* s : symbols) g.emplace_back(s);
  return g;
}

TEST(Crossover, ChildrenAreCutRecombinations) {
  Rng rng(11);
  const Genome a = genome_of({"[C]", "[C]", "[C]", "[C]"});
  const Genome b = genome_of({"[O]", "[N]", "[S]"});
  for (int trial = 0; trial < 200; ++trial) {
    auto [c1, c2] = one_point_crossover(a, b, rng, 100);
    // c1 = prefix of a + suffix of b; total symbols conserved across the pair.
    EXPECT_EQ(c1.size() + c2.size(), a.size() + b.size());
    // c1's leading symbols come from a, trailing from b.
    std::size_t cut = 0;
    while (cut < c1.size() && c1[cut] == "[C]") ++cut;
    for (std::size_t i = cut; i < c1.size(); ++i) EXPECT_NE(c1[i], "[C]");
    EXPECT_LE(cut, a.size());
  }
}

TEST(Crossover, RespectsLengthCap) {
  Rng rng(12);
  const Genome a(60, std::string("[C]"));
  const Genome b(70, std::string("[O]"));
  for (int trial = 0; trial < 100; ++trial) {
    auto [c1, c2] = one_point_crossover(a, b, rng, 100);
    EXPECT_LE(c1.size(), 100u);
    EXPECT_LE(c2.size(), 100u);
  }
}

TEST(Crossover, EmptyParentThrows) {
  Rng rng(13);
  const Genome a = genome_of({"[C]"});
  EXPECT_THROW(one_point_crossover(Genome{}, a, rng, 100), std::invalid_argument);
  EXPECT_THROW(one_point_crossover(a, Genome{}, rng, 100), std::invalid_argument);
}

TEST(Crossover, CutAtEndsReproducesParents) {
  // Over many trials, both pure-parent children must appear (cut 0 / cut len).
  Rng rng(14);
  const Genome a = genome_of({"[C]", "[C]"});
  const Genome b = genome_of({"[O]", "[O]"});
  bool saw_a = false, saw_b = false;
  for (int trial = 0; trial < 500; ++trial) {
    auto [c1, c2] = one_point_crossover(a, b, rng, 100);
    if (c1 == a) saw_a = true;
    if (c1 == b) saw_b = true;
  }
  EXPECT_TRUE(saw_a);
  EXPECT_TRUE(saw_b);
}

TEST(Mutate, SingleEditDistance) {
  Rng rng(21);
  const std::vector<std::string> alphabet = selfies_alphabet();
  const Genome g = genome_of({"[C]", "[O]", "[N]", "[C]", "[Branch1]"});
  for (int trial = 0; trial < 500; ++trial) {
    const Genome m = mutate(g, rng, alphabet, 1.0, 100);
    const long diff = static_cast<long>(m.size()) - static_cast<long>(g.size());
    EXPECT_GE(diff, -1);
    EXPECT_LE(diff, 1);
    if (diff == 0) {
      // Substitution: at most one position differs.
      int changed = 0;
      for (std::size_t i = 0; i < g.size(); ++i) changed += m[i] != g[i] ? 1 : 0;
      EXPECT_LE(changed, 1);
    }
    // Every symbol still comes from the closed alphabet.
    for (const auto& s : m)
      EXPECT_NE(std::find(alphabet.begin(), alphabet.end(), s), alphabet.end()) << s;
  }
}

TEST(Mutate, RateZeroIsIdentity) {
  Rng rng(22);
  const Genome g = genome_of({"[C]", "[O]"});
  for (int trial = 0; trial < 50; ++trial) {
    EXPECT_EQ(mutate(g, rng, selfies_alphabet(), 0.0, 100), g);
  }
}

TEST(Mutate, NeverProducesEmptyGenome) {
  Rng rng(23);
  const std::vector<std::string> alphabet = selfies_alphabet();
  Genome g = genome_of({"[C]"});
  for (int trial = 0; trial < 300; ++trial) {
    g = mutate(g, rng, alphabet, 1.0, 4);
    ASSERT_FALSE(g.empty());
    ASSERT_LE(g.size(), 4u);
  }
}

TEST(Mutate, EmptyAlphabetThrows) {
  Rng rng(24);
  EXPECT_THROW(mutate(genome_of({"[C]"}), rng, {}, 1.0, 100), std::invalid_argument);
}

TEST(Mutate, CapFallsBackToSubstitution) {
  Rng rng(25);
  const std::vector<std::string> alphabet = selfies_alphabet();
  const Genome g(6, std::string("[C]"));
  for (int trial = 0; trial < 300; ++trial) {
    const Genome m = mutate(g, rng, alphabet, 1.0, 6);
    EXPECT_LE(m.size(), 6u);  // inserts at the cap become substitutions
  }
}

TEST(Rng, DeterministicAndBounded) {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = 1 + a.next() % 97;
    Rng c(b.next());
    const std::uint64_t v = c.below(n);
    EXPECT_LT(v, n);
  }
  Rng d(7), e(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(d.next(), e.next());
  EXPECT_EQ(Rng(1).below(1), 0u);
  EXPECT_EQ(Rng(1).below(0), 0u);
}

TEST(Rng, MixSeedSeparatesStreams) {
  EXPECT_NE(mix_seed(1, "refdirs"), mix_seed(1, "sample"));
  EXPECT_NE(mix_seed(1, "refdirs"), mix_seed(2, "refdirs"));
  EXPECT_EQ(mix_seed(1, "refdirs"), mix_seed(1, "refdirs"));
}

}  // namespace
}  // namespace mevo

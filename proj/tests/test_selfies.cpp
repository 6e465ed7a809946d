#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "mevo/molgraph.hpp"
#include "mevo/rng.hpp"
#include "mevo/selfies.hpp"

namespace mevo {
namespace {

std::string decode_to_smiles(const std::string& text) {
  return canonical_key(decode_selfies(tokenize_selfies(text)));
}

TEST(SelfiesDecode, PlainChains) {
  EXPECT_EQ(decode_to_smiles("[C]"), "C");
  EXPECT_EQ(decode_to_smiles("[C][C]"), "CC");
  EXPECT_EQ(decode_to_smiles("[C][O][C]"), "COC");
  EXPECT_EQ(decode_to_smiles("[C][=C]"), "C=C");
  EXPECT_EQ(decode_to_smiles("[C][#C]"), "C#C");
}

TEST(SelfiesDecode, BondOrderClampsToCapacity) {
  // Oxygen has capacity two: once saturated the derivation stops.
  EXPECT_EQ(decode_to_smiles("[O][=O]"), canonical_key(parse_smiles("O=O")));
  EXPECT_EQ(decode_to_smiles("[O][=O][=O]"), canonical_key(parse_smiles("O=O")));
  // Fluorine caps at one bond, so a '#' prefix still yields a single bond.
  EXPECT_EQ(decode_to_smiles("[C][#F]"), canonical_key(parse_smiles("CF")));
}

TEST(SelfiesDecode, DerivationStopsWhenSaturated) {
  // F-F uses up both atoms; the trailing carbons are unreachable.
  EXPECT_EQ(decode_to_smiles("[F][F][C][C]"), canonical_key(parse_smiles("FF")));
}

TEST(SelfiesDecode, ZeroCapacityAtomSkipped) {
  // A fully hydrogenated nitrogen cannot bond; derivation skips it and
  // continues from the previous atom.
  EXPECT_EQ(decode_to_smiles("[C][NH3][C]"), "CC");
}

TEST(SelfiesDecode, ExplicitHydrogenCounts) {
  EXPECT_EQ(decode_to_smiles("[CH3][CH3]"), "CC");
  // [CH4] has zero remaining capacity: as the first atom it terminates
  // derivation immediately (state 0).
  MolGraph m = decode_selfies(tokenize_selfies("[CH4][C][C]"));
  EXPECT_EQ(m.atom_count(), 1);
}

TEST(SelfiesDecode, BranchBasics) {
  // [Branch1] + [C] (index 0) -> budget of one symbol inside the branch; the
  // atom after the branch continues from the branching atom.
  EXPECT_EQ(decode_to_smiles("[C][Branch1][C][F][C]"),
            canonical_key(parse_smiles("CC(F)")));
  // A branch token at state <= 1 is ignored WITHOUT consuming the index
  // symbol; both following carbons are then plain chain atoms.
  EXPECT_EQ(decode_to_smiles("[F][Branch1][C][C]"),
            canonical_key(parse_smiles("FCC")));
}

TEST(SelfiesDecode, BranchIndexSymbolsNotConsumedWhenIgnored) {
  // prev < 0: leading branch token is ignored entirely.
  EXPECT_EQ(decode_to_smiles("[Branch1][C][C]"), "CC");
}

TEST(SelfiesDecode, RingClosureBasics) {
  EXPECT_EQ(decode_to_smiles("[C][C][C][Ring1][Ring1]"),
            canonical_key(parse_smiles("C1CC1")));
  // Benzene via alternating double bonds and a ring closure.
  EXPECT_EQ(decode_to_smiles("[C][=C][C][=C][C][=C][Ring1][=Branch1]"),
            canonical_key(parse_smiles("c1ccccc1")));
}

TEST(SelfiesDecode, RingAlwaysConsumesIndexSymbols) {
  // prev < 0: the ring token is unusable but still consumes its index
  // symbol, so the [C] after it does NOT become an atom.
  MolGraph m = decode_selfies(tokenize_selfies("[Ring1][C][C]"));
  EXPECT_EQ(m.atom_count(), 1);
}

TEST(SelfiesDecode, DuplicateRingBondSkipped) {
  // Second closure over an existing bond is a no-op.
  EXPECT_EQ(decode_to_smiles("[C][C][C][Ring1][Ring1][Ring1][Ring1]"),
            canonical_key(parse_smiles("C1CC1")));
}

TEST(SelfiesDecode, StereoMarkersDropped) {
  EXPECT_EQ(decode_to_smiles("[C][C@H1][C]"),
            decode_to_smiles("[C][CH1][C]"));
}

TEST(SelfiesDecode, EmptyGenome) {
  EXPECT_TRUE(decode_selfies(Genome{}).empty());
}

TEST(SelfiesDecode, IndexAlphabetBase16) {
  // [=C] is digit 12: a ring of length 14 via one index symbol.
  Genome g;
  for (int i = 0; i < 14; ++i) g.push_back("[C]");
  g.push_back("[Ring1]");
  g.push_back("[=C]");
  MolGraph m = decode_selfies(g);
  ASSERT_EQ(m.atom_count(), 14);
  EXPECT_EQ(m.bond_count(), 14);  // chain (13) + closure = 14-ring
  EXPECT_EQ(selfies_symbol_index("[=C]"), 12);
  EXPECT_EQ(selfies_symbol_index("[C]"), 0);
  EXPECT_EQ(selfies_symbol_index("[S]"), 14);
  EXPECT_EQ(selfies_symbol_index("[P]"), 15);
  // Unlisted symbols count as digit 0.
  EXPECT_EQ(selfies_symbol_index("[F]"), 0);
}

TEST(SelfiesDecode, IndexSymbolsRoundTrip) {
  for (int value : {0, 1, 15, 16, 17, 255, 256, 4095}) {
    const int width = value < 16 ? 1 : value < 256 ? 2 : 3;
    auto symbols = selfies_index_symbols(value, width);
    ASSERT_EQ(static_cast<int>(symbols.size()), width);
    int back = 0;
    for (const auto& s : symbols) back = back * 16 + selfies_symbol_index(s);
    EXPECT_EQ(back, value);
  }
}

TEST(SelfiesDecode, TotalityOnRandomTokenStreams) {
  // Any sequence over the alphabet decodes to a connected, valence-valid
  // molecule (possibly empty) without throwing.
  const auto& alphabet = selfies_alphabet();
  Rng rng(0x5eedf00dULL);
  for (int trial = 0; trial < 2000; ++trial) {
    Genome g;
    const std::size_t len = 1 + rng.below(60);
    for (std::size_t i = 0; i < len; ++i)
      g.push_back(alphabet[rng.index(alphabet.size())]);
    MolGraph m;
    ASSERT_NO_THROW(m = decode_selfies(g));
    EXPECT_TRUE(m.valence_valid());
    if (m.atom_count() > 0) {
      EXPECT_EQ(m.components().second, 1) << join_selfies(g);
    }
  }
}

TEST(SelfiesEncode, RoundTripsRepresentativeMolecules) {
  const char* cases[] = {
      "C", "CC", "CCO", "COC", "C=O", "C#N", "CCl", "FC(F)F",
      "c1ccccc1", "Oc1ccccc1", "c1ccncc1", "c1ccc2ccccc2c1",
      "CC(=O)Nc1ccccc1", "CS(=O)(=O)c1ccc(N2CCOCC2)cc1",
      "OC1(CN(C1)C(=O)c1ccc(F)c(F)c1Nc1ccc(I)cc1F)C1CCCCN1",
      "CCc1ccc(CCOc2ccc(CC3SC(=O)NC3=O)cc2)nc1",
      "COc1ccccc1OCC(O)CN1CCN(CC(=O)Nc2c(C)cccc2C)CC1",
  };
  for (const char* s : cases) {
    MolGraph m = parse_smiles(s);
    Genome g = encode_selfies(m);
    MolGraph back = decode_selfies(g);
    EXPECT_EQ(canonical_key(back), canonical_key(m)) << s;
    // Re-encoding the decoded graph is stable.
    EXPECT_EQ(encode_selfies(back), g) << s;
  }
}

TEST(SelfiesEncode, LargestFragmentWins) {
  MolGraph m = parse_smiles("C.CCO");
  Genome g = encode_selfies(m);
  EXPECT_EQ(canonical_key(decode_selfies(g)), canonical_key(parse_smiles("CCO")));
}

TEST(SelfiesEncode, EmptyGraph) {
  EXPECT_TRUE(encode_selfies(MolGraph{}).empty());
}

TEST(SelfiesTokenize, RejectsMalformedText) {
  EXPECT_THROW(tokenize_selfies("C"), ParseError);
  EXPECT_THROW(tokenize_selfies("[C"), ParseError);
  EXPECT_THROW(tokenize_selfies("[C][Qx]"), ParseError);
  EXPECT_EQ(tokenize_selfies("").size(), 0u);
}

TEST(SelfiesAlphabet, AtomSubsetNonEmptyAndClosed) {
  const auto& all = selfies_alphabet();
  const auto& atoms = selfies_atom_alphabet();
  EXPECT_FALSE(all.empty());
  EXPECT_FALSE(atoms.empty());
  std::set<std::string> all_set(all.begin(), all.end());
  for (const auto& a : atoms) EXPECT_TRUE(all_set.count(a)) << a;
}

}  // namespace
}  // namespace mevo

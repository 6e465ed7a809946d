#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "mevo/fingerprint.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {
namespace {

TEST(Fingerprint, SelfSimilarityIsOne) {
  for (const char* smiles : {"CCO", "c1ccccc1", "CC(=O)Nc1ccc(O)cc1",
                             "FC(F)(F)c1ccc(N2CCOCC2)cc1"}) {
    MolGraph m = parse_smiles(smiles);
    EXPECT_DOUBLE_EQ(tanimoto(ecfp6(m), ecfp6(m)), 1.0) << smiles;
    EXPECT_DOUBLE_EQ(tanimoto(fcfp4(m), fcfp4(m)), 1.0) << smiles;
  }
}

TEST(Fingerprint, BothEmptyIsOne) {
  MolGraph empty;
  EXPECT_DOUBLE_EQ(tanimoto(ecfp6(empty), ecfp6(empty)), 1.0);
  // One empty, one populated: no intersection.
  EXPECT_DOUBLE_EQ(tanimoto(ecfp6(empty), ecfp6(parse_smiles("CCO"))), 0.0);
}

TEST(Fingerprint, MismatchedKindsThrow) {
  MolGraph m = parse_smiles("CCO");
  EXPECT_THROW(tanimoto(ecfp6(m), fcfp4(m)), std::invalid_argument);
  EXPECT_THROW(tanimoto(ecfp6(m, 2048), ecfp6(m, 1024)), std::invalid_argument);
}

TEST(Fingerprint, AtomOrderInvariance) {
  // Same molecule entered with different atom numberings must hash
  // identically.
  const std::pair<const char*, const char*> pairs[] = {
      {"CCO", "OCC"},
      {"c1ccccc1O", "Oc1ccccc1"},
      {"CC(=O)Nc1ccc(O)cc1", "Oc1ccc(NC(C)=O)cc1"},
      {"CN1CCN(CC1)c1ccccc1", "c1ccccc1N1CCN(C)CC1"},
  };
  for (const auto& [a, b] : pairs) {
    const Fingerprint fa = ecfp6(parse_smiles(a));
    const Fingerprint fb = ecfp6(parse_smiles(b));
    EXPECT_EQ(fa.words, fb.words) << a << " vs " << b;
    EXPECT_DOUBLE_EQ(tanimoto(fa, fb), 1.0);
    EXPECT_DOUBLE_EQ(tanimoto(fcfp4(parse_smiles(a)), fcfp4(parse_smiles(b))),
                     1.0);
  }
}

TEST(Fingerprint, DistinguishesDifferentMolecules) {
  const Fingerprint ethanol = ecfp6(parse_smiles("CCO"));
  const Fingerprint ether = ecfp6(parse_smiles("COC"));
  EXPECT_LT(tanimoto(ethanol, ether), 1.0);
  const Fingerprint benzene = ecfp6(parse_smiles("c1ccccc1"));
  const Fingerprint pyridine = ecfp6(parse_smiles("c1ccncc1"));
  EXPECT_LT(tanimoto(benzene, pyridine), 1.0);
}

TEST(Fingerprint, SimilarityOrdersByStructure) {
  // Toluene should sit closer to benzene than to cyclohexane.
  const Fingerprint toluene = ecfp6(parse_smiles("Cc1ccccc1"));
  const Fingerprint benzene = ecfp6(parse_smiles("c1ccccc1"));
  const Fingerprint cyclohexane = ecfp6(parse_smiles("C1CCCCC1"));
  EXPECT_GT(tanimoto(toluene, benzene), tanimoto(toluene, cyclohexane));
}

TEST(Fingerprint, FcfpCoarserThanEcfp) {
  // All carbons share one pharmacophore role, so propane and butane collapse
  // to heavily overlapping FCFP feature sets, while ECFP separates CH3 from
  // CH2 and drives the similarity down.  Counted by hand on the update rule:
  // FCFP4 gives 4 shared of 5 total features, ECFP6 3 of 9.
  MolGraph a = parse_smiles("CCC");
  MolGraph b = parse_smiles("CCCC");
  const double f = tanimoto(fcfp4(a), fcfp4(b));
  const double e = tanimoto(ecfp6(a), ecfp6(b));
  EXPECT_NEAR(f, 0.8, 1e-12);
  EXPECT_NEAR(e, 1.0 / 3.0, 1e-12);
  EXPECT_GT(f, e);
}

TEST(Fingerprint, Determinism) {
  // Bit patterns are fixed across calls (seedless hashing).
  MolGraph m = parse_smiles("COc1ccc(CNC(=O)C2CC2)cc1");
  const Fingerprint first = ecfp6(m);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(ecfp6(m).words, first.words);
  }
  EXPECT_GT(first.popcount(), 0);
  EXPECT_EQ(first.n_bits, 2048);
  EXPECT_EQ(static_cast<int>(first.words.size()), 2048 / 64);
}

TEST(Fingerprint, MorganEnvironmentCounts) {
  // Methane: a single heavy atom contributes its radius-0 environment once;
  // no larger environment exists.
  const auto methane = morgan_environments(parse_smiles("C"), 2);
  ASSERT_EQ(methane.size(), 1u);
  EXPECT_EQ(methane[0].second, 1);

  // Ethane: both carbons share one radius-0 environment (count 2) and one
  // radius-1 environment (count 2).
  const auto ethane = morgan_environments(parse_smiles("CC"), 2);
  ASSERT_EQ(ethane.size(), 2u);
  EXPECT_EQ(ethane[0].second + ethane[1].second, 4);

  // Benzene by symmetry: one unique environment per radius round, each with
  // count 6.
  const auto benzene = morgan_environments(parse_smiles("c1ccccc1"), 2);
  ASSERT_EQ(benzene.size(), 3u);
  for (const auto& [env, count] : benzene) EXPECT_EQ(count, 6) << env;
}

TEST(Fingerprint, EnvironmentsSaturateWithMoleculeSize) {
  // Once every atom's environment covers the whole molecule, further rounds
  // add nothing new.
  const auto r2 = morgan_environments(parse_smiles("CCO"), 2);
  const auto r5 = morgan_environments(parse_smiles("CCO"), 5);
  EXPECT_EQ(r2.size(), r5.size());
}

TEST(Fingerprint, RadiusGrowsFeatureSet) {
  MolGraph m = parse_smiles("CCOC(=O)c1ccc(N)cc1");
  const auto r1 = morgan_environments(m, 1);
  const auto r3 = morgan_environments(m, 3);
  EXPECT_GT(r3.size(), r1.size());
}

}  // namespace
}  // namespace mevo

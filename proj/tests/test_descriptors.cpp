#include <gtest/gtest.h>

#include <cmath>

#include "mevo/descriptors.hpp"
#include "mevo/molgraph.hpp"
#include "mevo/qed.hpp"

namespace mevo {
namespace {

// Hand-verified reference values.  Molecular weights from standard atomic
// masses; logP values worked through the Wildman-Crippen contribution table
// by hand; TPSA from the Ertl fragment contributions.
struct Golden {
  const char* smiles;
  double mw;
  double logp;
  double tpsa;
  int hbd;
  int hba;
  int rtb;
  int aromatic_rings;
};

const Golden kGolden[] = {
    {"C", 16.043, 0.6361, 0.0, 0, 0, 0, 0},
    {"CC", 30.070, 1.0262, 0.0, 0, 0, 0, 0},
    {"CCCC", 58.124, 1.8064, 0.0, 0, 0, 1, 0},
    {"c1ccccc1", 78.114, 1.6866, 0.0, 0, 0, 0, 1},
    {"CCO", 46.069, -0.0014, 20.23, 1, 1, 0, 0},
    {"COC", 46.069, 0.2626, 9.23, 0, 1, 0, 0},
    {"Oc1ccccc1", 94.113, 1.3922, 20.23, 1, 1, 0, 1},
    {"Nc1ccccc1", 93.129, 1.2688, 26.02, 2, 1, 0, 1},
    {"c1ccncc1", 79.102, 1.0816, 12.89, 0, 1, 0, 1},
    {"c1ccc2ccccc2c1", 128.174, 2.8398, 0.0, 0, 0, 0, 2},
};

TEST(Descriptors, GoldenMolecularWeight) {
  for (const Golden& g : kGolden) {
    EXPECT_NEAR(molecular_weight(parse_smiles(g.smiles)), g.mw, 5e-3) << g.smiles;
  }
}

TEST(Descriptors, GoldenCrippenLogP) {
  for (const Golden& g : kGolden) {
    EXPECT_NEAR(crippen_logp(parse_smiles(g.smiles)), g.logp, 0.05) << g.smiles;
  }
}

TEST(Descriptors, GoldenTpsa) {
  for (const Golden& g : kGolden) {
    EXPECT_NEAR(tpsa(parse_smiles(g.smiles)), g.tpsa, 1e-9) << g.smiles;
  }
}

TEST(Descriptors, GoldenCounts) {
  for (const Golden& g : kGolden) {
    MolGraph m = parse_smiles(g.smiles);
    EXPECT_EQ(hbd(m), g.hbd) << g.smiles;
    EXPECT_EQ(hba(m), g.hba) << g.smiles;
    EXPECT_EQ(rotatable_bonds(m), g.rtb) << g.smiles;
    EXPECT_EQ(aromatic_ring_count(m), g.aromatic_rings) << g.smiles;
  }
}

TEST(Descriptors, HbaExclusions) {
  // Pyrrole-type nitrogen is not an acceptor; amide carbonyl oxygen is not
  // an acceptor in this counting model.
  EXPECT_EQ(hba(parse_smiles("c1cc[nH]1")), 0);
  EXPECT_EQ(hba(parse_smiles("Cn1cccc1")), 0);
  EXPECT_EQ(hba(parse_smiles("CC(=O)NC")), 1);  // only the nitrogen
  EXPECT_EQ(hba(parse_smiles("CC(=O)C")), 1);   // ketone oxygen counts
}

TEST(Descriptors, RotatableBondExclusions) {
  // Amide C-N bonds and ring bonds are not rotatable; terminal bonds are not.
  EXPECT_EQ(rotatable_bonds(parse_smiles("CC(=O)NC")), 0);
  EXPECT_EQ(rotatable_bonds(parse_smiles("CCCC")), 1);
  EXPECT_EQ(rotatable_bonds(parse_smiles("C1CCCCC1C1CCCCC1")), 1);
  EXPECT_EQ(rotatable_bonds(parse_smiles("CCOC")), 2);
}

TEST(Descriptors, AlertCounting) {
  EXPECT_EQ(alert_count(parse_smiles("CCO")), 0);
  // Nitro group in charged form hits nitro, nitroso/nitro, and charged N.
  EXPECT_GE(alert_count(parse_smiles("CC[N+](=O)[O-]")), 2);
  // An aldehyde is exactly one alert.
  EXPECT_EQ(alert_count(parse_smiles("CC=O")), 1);
  // Thiophene's aromatic sulfur is not a thiocarbonyl.
  EXPECT_EQ(alert_count(parse_smiles("c1ccsc1")), 0);
  // Alkyl chloride flags; aryl chloride does not.
  EXPECT_EQ(alert_count(parse_smiles("CCCl")), 1);
  EXPECT_EQ(alert_count(parse_smiles("Clc1ccccc1")), 0);
}

TEST(Descriptors, FluorineCount) {
  EXPECT_EQ(fluorine_count(parse_smiles("FC(F)(F)c1ccc(F)cc1")), 4);
  EXPECT_EQ(fluorine_count(parse_smiles("CC")), 0);
}

TEST(Descriptors, VectorAndNameLookup) {
  MolGraph m = parse_smiles("CC(=O)Nc1ccc(O)cc1");  // paracetamol
  DescriptorVector d = compute_descriptors(m);
  EXPECT_NEAR(d.mw, 151.165, 5e-3);
  EXPECT_EQ(d.hbd, 2);
  EXPECT_EQ(d.hba, 2);  // hydroxyl O + amide N; carbonyl O excluded
  EXPECT_EQ(d.rotatable_bonds, 0);
  EXPECT_EQ(d.aromatic_rings, 1);
  EXPECT_EQ(descriptor_value(m, d, "mw"), d.mw);
  EXPECT_EQ(descriptor_value(m, d, "logp"), d.logp);
  EXPECT_EQ(descriptor_value(m, d, "rtb"), d.rotatable_bonds);
  EXPECT_EQ(descriptor_value(m, d, "ar"), d.aromatic_rings);
  EXPECT_THROW(descriptor_value(m, d, "nope"), std::invalid_argument);
}

// The QED desirability math against an independently evaluated oracle: the
// asymmetric double sigmoid was computed for these inputs with 64-bit floats
// outside this code base.
TEST(Qed, DesirabilityOracle) {
  EXPECT_NEAR(qed_desirability("MW", 300.0), 0.997172586127, 1e-9);
  EXPECT_NEAR(qed_desirability("ALOGP", 2.5), 0.993294958449, 1e-9);
  EXPECT_NEAR(qed_desirability("HBA", 3.0), 0.984802758001, 1e-9);
  EXPECT_NEAR(qed_desirability("HBD", 1.0), 0.986596391664, 1e-9);
  EXPECT_NEAR(qed_desirability("PSA", 80.0), 0.873926776546, 1e-9);
  EXPECT_NEAR(qed_desirability("ROTB", 4.0), 0.969695010477, 1e-9);
  EXPECT_NEAR(qed_desirability("AROM", 2.0), 0.937733051201, 1e-9);
  EXPECT_NEAR(qed_desirability("ALERTS", 0.0), 0.842467599330, 1e-9);
  EXPECT_THROW(qed_desirability("BOGUS", 1.0), std::invalid_argument);
}

TEST(Qed, GeometricMeanAndBounds) {
  // Values verified against the same oracle for the benzene descriptor row.
  MolGraph benzene = parse_smiles("c1ccccc1");
  EXPECT_NEAR(qed(benzene), 0.302118576418, 1e-9);
  MolGraph drug = parse_smiles("CC(=O)Nc1ccc(O)cc1");
  const double q = qed(drug);
  EXPECT_GT(q, 0.0);
  EXPECT_LT(q, 1.0);
  EXPECT_EQ(qed(MolGraph{}), 0.0);
}

}  // namespace
}  // namespace mevo

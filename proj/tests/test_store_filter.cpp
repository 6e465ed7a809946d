#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "mevo/appraise.hpp"
#include "mevo/filter.hpp"
#include "mevo/molgraph.hpp"
#include "mevo/store.hpp"

namespace mevo {
namespace {

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + name;
}

// -- CompoundStore ------------------------------------------------------------

TEST(CompoundStore, AddContainsAndDuplicateRejection) {
  CompoundStore store;
  EXPECT_EQ(store.size(), 0u);
  EXPECT_TRUE(store.add("CCO", "chembl:1"));
  EXPECT_TRUE(store.add("c1ccccc1", "corpus:7"));
  EXPECT_FALSE(store.add("CCO", "other:9"));  // key already present
  EXPECT_EQ(store.size(), 2u);
  EXPECT_TRUE(store.contains("CCO"));
  EXPECT_FALSE(store.contains("CCN"));
  EXPECT_EQ(store.entries().at("CCO"), "chembl:1");  // first writer wins
}

TEST(CompoundStore, SaveLoadRoundTrip) {
  CompoundStore store;
  store.add("CCO", "a");
  store.add("CCN", "b");
  store.add("c1ccccc1", "");
  const std::string path = temp_path("store_roundtrip.tsv");
  store.save(path);

  CompoundStore loaded = CompoundStore::load(path);
  EXPECT_EQ(loaded.size(), store.size());
  for (const auto& [key, source] : store.entries()) {
    EXPECT_TRUE(loaded.contains(key)) << key;
    EXPECT_EQ(loaded.entries().at(key), source) << key;
  }
  std::remove(path.c_str());
}

TEST(CompoundStore, LoadToleratesKeyOnlyRows) {
  const std::string path = temp_path("store_keys_only.tsv");
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "CCO\n";
    out << "CCN\tsourced\n";
  }
  CompoundStore store = CompoundStore::load(path);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.entries().at("CCO"), "");
  EXPECT_EQ(store.entries().at("CCN"), "sourced");
  std::remove(path.c_str());
}

// -- FilterChain --------------------------------------------------------------

std::string reason_of(const FilterChain& chain, const std::string& smiles) {
  return chain.check(parse_smiles(smiles)).reason;
}

TEST(FilterChain, DefaultWindowAndOrderingOfRules) {
  FilterChain chain;
  EXPECT_EQ(chain.check(MolGraph{}).reason, "empty");
  EXPECT_EQ(reason_of(chain, "C.C"), "fragments");
  EXPECT_EQ(reason_of(chain, "CCI"), "element:I");
  EXPECT_EQ(reason_of(chain, "CC[N+](C)(C)C"), "charge");
  EXPECT_EQ(reason_of(chain, "C1CCCCCCCC1"), "ring_size");  // nine-membered ring
  EXPECT_EQ(reason_of(chain, "c1ccccc1"), "mw_low");
  EXPECT_EQ(reason_of(chain, "CCCCCCCCCCCCCCCCCCCCCCCCCCCCCC"), "mw_high");
  // Icosane sits inside the weight window but far above the logP ceiling.
  EXPECT_EQ(reason_of(chain, "CCCCCCCCCCCCCCCCCCCC"), "logp");
}

TEST(FilterChain, AlertsFireOnceEarlierRulesPass) {
  FilterConfig cfg;
  cfg.mw_min = 0.0;
  cfg.mw_max = 1000.0;
  cfg.logp_max = 100.0;
  FilterChain chain(cfg);
  EXPECT_EQ(reason_of(chain, "CC=O"), "alert:aldehyde");
  EXPECT_EQ(reason_of(chain, "CCCl"), "alert:alkyl_halide");
  EXPECT_EQ(reason_of(chain, "CCS"), "alert:thiol");

  cfg.reject_alerts = false;
  FilterChain permissive(cfg);
  EXPECT_TRUE(permissive.check(parse_smiles("CC=O")).pass);
}

TEST(FilterChain, ConfigSwitchesRelaxIndividualRules) {
  FilterConfig cfg;
  cfg.mw_min = 0.0;
  cfg.mw_max = 1000.0;
  cfg.logp_max = 100.0;
  cfg.reject_alerts = false;

  cfg.allow_charged_atoms = true;
  EXPECT_TRUE(FilterChain(cfg).check(parse_smiles("CC[N+](C)(C)C")).pass);

  cfg.allow_fragments = true;
  EXPECT_TRUE(FilterChain(cfg).check(parse_smiles("C.C")).pass);

  cfg.max_ring_size = 12;
  EXPECT_TRUE(FilterChain(cfg).check(parse_smiles("C1CCCCCCCC1")).pass);

  cfg.allowed_elements.push_back(Element::I);
  EXPECT_TRUE(FilterChain(cfg).check(parse_smiles("CCI")).pass);
}

TEST(FilterChain, DrugLikeCompoundPasses) {
  // Diphenhydramine: C17H21NO, MW 255.4, moderate logP, neutral, alert free.
  FilterChain chain;
  FilterDecision d = chain.check(parse_smiles("CN(C)CCOC(c1ccccc1)c1ccccc1"));
  EXPECT_TRUE(d.pass) << d.reason;
  EXPECT_TRUE(d.reason.empty());
}

// -- Appraisal ----------------------------------------------------------------

TEST(Appraise, LipinskiRulesOnKnownCompounds) {
  // Paracetamol obeys all four rules and matches no alert pattern.
  Appraisal a = appraise_compound(parse_smiles("CC(=O)Nc1ccc(O)cc1"));
  EXPECT_NEAR(a.descriptors.mw, 151.165, 5e-3);
  EXPECT_TRUE(a.mw_ok);
  EXPECT_TRUE(a.logp_ok);
  EXPECT_TRUE(a.hbd_ok);
  EXPECT_TRUE(a.hba_ok);
  EXPECT_TRUE(a.lipinski_pass);
  EXPECT_TRUE(a.alerts.empty());
  EXPECT_FALSE(a.novel);  // novelty is the store's call, not the appraiser's

  // Triacontane overshoots the logP ceiling.
  Appraisal fat = appraise_compound(parse_smiles("CCCCCCCCCCCCCCCCCCCCCCCCCCCCCC"));
  EXPECT_FALSE(fat.logp_ok);
  EXPECT_FALSE(fat.lipinski_pass);

  // Acetaldehyde is flagged by name.
  Appraisal ald = appraise_compound(parse_smiles("CC=O"));
  ASSERT_EQ(ald.alerts.size(), 1u);
  EXPECT_EQ(ald.alerts[0], "aldehyde");
}

TEST(Appraise, FileSummaryCountsAndHeader) {
  const std::string csv = temp_path("pareto_for_appraise.csv");
  {
    std::ofstream out(csv);
    out << "# comment\n";
    out << "rank,smiles,score\n";
    out << "0,CC(=O)Nc1ccc(O)cc1,0.9\n";   // lipinski pass, known to the store
    out << "0,CCO,0.8\n";                   // lipinski pass, novel
    out << "1,CC=O,0.7\n";                  // alert, lipinski pass, novel
    out << "1,,0.0\n";                      // empty smiles: counted, skipped
  }
  CompoundStore store;
  store.add(write_smiles(parse_smiles("CC(=O)Nc1ccc(O)cc1")), "corpus");

  const std::string out_csv = temp_path("appraise_out.csv");
  AppraiseSummary s = appraise_file(csv, store, out_csv);
  EXPECT_EQ(s.total, 4);
  EXPECT_EQ(s.lipinski_pass, 3);
  EXPECT_EQ(s.alert_free, 2);
  EXPECT_EQ(s.novel, 2);
  EXPECT_EQ(s.novel_lipinski_pass, 2);

  std::ifstream in(out_csv);
  ASSERT_TRUE(in.good());
  std::string line;
  std::getline(in, line);  // "# source: ..." comment
  EXPECT_EQ(line.rfind("# source:", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line,
            "smiles,mw,logp,hbd,hba,mw_ok,logp_ok,hbd_ok,hba_ok,lipinski_pass,alerts,novel");

  std::remove(csv.c_str());
  std::remove(out_csv.c_str());
}

TEST(Appraise, FileWithoutSmilesColumnThrows) {
  const std::string csv = temp_path("no_smiles_col.csv");
  {
    std::ofstream out(csv);
    out << "rank,key,score\n";
    out << "0,CCO,0.8\n";
  }
  CompoundStore store;
  EXPECT_THROW(appraise_file(csv, store, temp_path("unused_out.csv")), std::runtime_error);
  std::remove(csv.c_str());
}

}  // namespace
}  // namespace mevo

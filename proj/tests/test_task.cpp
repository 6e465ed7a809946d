#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "mevo/qed.hpp"
#include "mevo/sascore.hpp"
#include "mevo/task.hpp"

namespace mevo {
namespace {

std::string write_temp_task(const std::string& body) {
  static int counter = 0;
  const std::string path =
      (std::filesystem::temp_directory_path() /
       ("mevo_task_" + std::to_string(counter++) + ".task"))
          .string();
  std::ofstream out(path);
  out << body;
  return path;
}

TEST(Task, BundledTasksLoadWithQedAndSaLeading) {
  const std::vector<std::string> names = bundled_task_names();
  ASSERT_EQ(names.size(), 5u);
  for (const char* expected : {"cobimetinib", "fexofenadine", "osimertinib",
                               "pioglitazone", "ranolazine"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end())
        << expected;
  }
  for (const std::string& name : names) {
    const TaskSpec task = load_task(name);
    EXPECT_EQ(task.name, name);
    ASSERT_GE(task.dimensions(), 3) << name;
    EXPECT_LE(task.dimensions(), 7) << name;
    EXPECT_EQ(task.components[0].source, TaskComponent::Source::Qed) << name;
    EXPECT_EQ(task.components[1].source, TaskComponent::Source::SaNormalized)
        << name;
    const auto cols = task.objective_names();
    ASSERT_EQ(static_cast<int>(cols.size()), task.dimensions());
    EXPECT_EQ(cols[0], "QED");
    EXPECT_EQ(cols[1], "SA");
    EXPECT_FALSE(task.target_smiles.empty()) << name;
    EXPECT_NO_THROW(parse_smiles(task.target_smiles)) << name;
  }
}

TEST(Task, LoadIsCaseInsensitiveForBundledNames) {
  EXPECT_EQ(load_task("Cobimetinib").name, "cobimetinib");
  EXPECT_EQ(load_task("PIOGLITAZONE").name, "pioglitazone");
  EXPECT_THROW(load_task("no_such_task"), std::invalid_argument);
}

TEST(Task, EvaluateDimensionsAndRange) {
  for (const std::string& name : bundled_task_names()) {
    const TaskSpec task = load_task(name);
    const MolGraph m = parse_smiles("COc1ccc(CNC(=O)C2CC2)cc1");
    const std::vector<double> scores = evaluate(m, task);
    ASSERT_EQ(static_cast<int>(scores.size()), task.dimensions()) << name;
    for (double s : scores) {
      EXPECT_GE(s, 0.0) << name;
      EXPECT_LE(s, 1.0) << name;
    }
    EXPECT_NEAR(scores[0], qed(m), 1e-12) << name;
    EXPECT_NEAR(scores[1], sa_normalized(m), 1e-12) << name;
  }
}

TEST(Task, TargetSimilarityComponentsHitModifierAtOne) {
  // The task's own reference compound has Tanimoto 1.0 against every
  // similarity target, so each similarity score must equal the component
  // modifier evaluated at 1.0.  (Some components penalize high similarity on
  // purpose — e.g. a min_gaussian atom-level dissimilarity term — so the
  // expected value is not always 1.0.)
  for (const std::string& name : bundled_task_names()) {
    const TaskSpec task = load_task(name);
    const MolGraph target = parse_smiles(task.target_smiles);
    const std::vector<double> scores = evaluate(target, task);
    bool saw_similarity = false;
    for (int i = 0; i < task.dimensions(); ++i) {
      const TaskComponent& c = task.components[static_cast<std::size_t>(i)];
      if (c.source != TaskComponent::Source::Similarity) continue;
      saw_similarity = true;
      EXPECT_NEAR(scores[static_cast<std::size_t>(i)], c.modifier.apply(1.0),
                  1e-12)
          << name << " component " << c.name;
    }
    EXPECT_TRUE(saw_similarity) << name;
  }
}

TEST(Task, FingerprintSpecParsesNames) {
  EXPECT_EQ(fingerprint_spec("fcfp4"), (std::pair{FpKind::Fcfp, 2}));
  EXPECT_EQ(fingerprint_spec("fcfp6"), (std::pair{FpKind::Fcfp, 3}));
  EXPECT_EQ(fingerprint_spec("ecfp4"), (std::pair{FpKind::Ecfp, 2}));
  EXPECT_EQ(fingerprint_spec("ecfp6"), (std::pair{FpKind::Ecfp, 3}));
  EXPECT_THROW(fingerprint_spec("maccs"), std::invalid_argument);
}

TEST(Task, ParseFileDescriptorAndSimilarityComponents) {
  const std::string path = write_temp_task(
      "name demo\n"
      "target CCO\n"
      "component SIM similarity fcfp4 thresholded_linear 0.7\n"
      "component MW descriptor mw gaussian 46 5\n");
  const TaskSpec task = parse_task_file(path);
  EXPECT_EQ(task.name, "demo");
  EXPECT_FALSE(task.approximate);
  ASSERT_EQ(task.dimensions(), 4);  // QED, SA auto-prepended
  EXPECT_EQ(task.components[2].name, "SIM");
  EXPECT_EQ(task.components[2].source, TaskComponent::Source::Similarity);
  EXPECT_EQ(task.components[2].fp_kind, FpKind::Fcfp);
  EXPECT_EQ(task.components[2].fp_radius, 2);
  EXPECT_EQ(task.components[3].source, TaskComponent::Source::Descriptor);
  EXPECT_EQ(task.components[3].descriptor, "mw");

  // Ethanol itself: similarity 1.0 -> thresholded at 0.7 -> 1.0; MW within a
  // fraction of a sigma of 46.
  const std::vector<double> scores = evaluate(parse_smiles("CCO"), task);
  EXPECT_DOUBLE_EQ(scores[2], 1.0);
  EXPECT_GT(scores[3], 0.99);
  std::filesystem::remove(path);
}

TEST(Task, ComboAveragesItsParts) {
  const std::string path = write_temp_task(
      "name combodemo\n"
      "target CCO\n"
      "approximate\n"
      "combo BLEND identity\n"
      "part descriptor mw max_gaussian 100 10\n"
      "part descriptor hbd min_gaussian 0 1\n"
      "end\n");
  const TaskSpec task = parse_task_file(path);
  EXPECT_TRUE(task.approximate);
  ASSERT_EQ(task.dimensions(), 3);
  const TaskComponent& combo = task.components[2];
  EXPECT_EQ(combo.source, TaskComponent::Source::Combo);
  EXPECT_EQ(combo.name, "BLEND");
  ASSERT_EQ(combo.parts.size(), 2u);

  // Ethanol: mw 46.07 -> max_gaussian(100,10) = exp(-0.5 * 5.393^2); hbd 1 ->
  // min_gaussian(0,1) = exp(-0.5).  The combo is their arithmetic mean.
  const MolGraph m = parse_smiles("CCO");
  const double mw_part = std::exp(-0.5 * std::pow((100.0 - 46.069) / 10.0, 2));
  const double hbd_part = std::exp(-0.5);
  const std::vector<double> scores = evaluate(m, task);
  EXPECT_NEAR(scores[2], (mw_part + hbd_part) / 2.0, 1e-6);
}

TEST(Task, ParseErrors) {
  // Unknown directive.
  EXPECT_THROW(parse_task_file(write_temp_task("name x\nbogus line\n")),
               std::invalid_argument);
  // Similarity component without a target molecule.
  EXPECT_THROW(parse_task_file(write_temp_task(
                   "name x\ncomponent S similarity fcfp4 identity\n")),
               std::invalid_argument);
  // Unknown modifier must fail at parse time.
  EXPECT_THROW(parse_task_file(write_temp_task(
                   "name x\ntarget CCO\ncomponent M descriptor mw frobnicate 1\n")),
               std::invalid_argument);
  // Unterminated combo block.
  EXPECT_THROW(parse_task_file(write_temp_task(
                   "name x\ntarget CCO\ncombo C identity\npart descriptor mw identity\n")),
               std::invalid_argument);
  // A part outside any combo block.
  EXPECT_THROW(parse_task_file(write_temp_task(
                   "name x\ntarget CCO\npart descriptor mw identity\n")),
               std::invalid_argument);
  // A nameless task file.
  EXPECT_THROW(parse_task_file(write_temp_task("target CCO\n")),
               std::invalid_argument);
  // Missing file.
  EXPECT_THROW(parse_task_file("/nonexistent/path.task"), std::runtime_error);
}

}  // namespace
}  // namespace mevo

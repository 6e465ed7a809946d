#pragma once

#include <string>
#include <vector>

#include "mevo/fingerprint.hpp"
#include "mevo/modifiers.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

struct TaskComponent {
  enum class Source { Qed, SaNormalized, Descriptor, Similarity, Combo };
  Source source = Source::Qed;
  std::string name;        // column label, e.g. "QED", "FCFP4", "CNS"
  std::string descriptor;  // for Source::Descriptor
  std::string fp_name;     // "fcfp4", "ecfp4", "ecfp6", "fcfp6"
  FpKind fp_kind = FpKind::Fcfp;
  int fp_radius = 2;
  Fingerprint target;      // precomputed for Source::Similarity
  ScoreModifier modifier;
  std::vector<TaskComponent> parts;  // Source::Combo: mean of parts
};

struct TaskSpec {
  std::string name;
  std::string target_smiles;
  bool approximate = false;
  std::vector<TaskComponent> components;  // QED and SA always lead

  int dimensions() const { return static_cast<int>(components.size()); }
  std::vector<std::string> objective_names() const;
};

std::vector<std::string> bundled_task_names();

// Accepts a bundled task name (case-insensitive) or a task file path.
TaskSpec load_task(const std::string& name_or_path);
TaskSpec parse_task_file(const std::string& path);

std::vector<double> evaluate(const MolGraph& m, const TaskSpec& task);

// Parses "fcfp4"-style names into (kind, radius); throws on unknown names.
std::pair<FpKind, int> fingerprint_spec(const std::string& name);

}  // namespace mevo

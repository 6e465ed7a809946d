#include "mevo/task.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mevo/data.hpp"
#include "mevo/descriptors.hpp"
#include "mevo/qed.hpp"
#include "mevo/sascore.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

ScoreModifier parse_modifier(std::istringstream& in, const std::string& context) {
  std::string kind;
  if (!(in >> kind)) throw std::invalid_argument("missing modifier in " + context);
  std::vector<double> params;
  double v = 0.0;
  while (in >> v) params.push_back(v);
  return ScoreModifier::parse(kind, params);
}

TaskComponent make_similarity(const std::string& label, const std::string& fp_name,
                              ScoreModifier mod) {
  TaskComponent c;
  c.source = TaskComponent::Source::Similarity;
  c.name = label;
  c.fp_name = lower(fp_name);
  auto [kind, radius] = fingerprint_spec(c.fp_name);
  c.fp_kind = kind;
  c.fp_radius = radius;
  c.modifier = mod;
  return c;
}

TaskComponent make_descriptor(const std::string& label, const std::string& desc,
                              ScoreModifier mod) {
  TaskComponent c;
  c.source = TaskComponent::Source::Descriptor;
  c.name = label;
  c.descriptor = lower(desc);
  c.modifier = mod;
  return c;
}

// Fingerprints are computed lazily per (kind, radius) so a task with several
// similarity components against the same fingerprint reuses one computation.
class FpCache {
 public:
  explicit FpCache(const MolGraph& m) : m_(m) {}

  const Fingerprint& get(FpKind kind, int radius) {
    auto key = std::make_pair(static_cast<int>(kind), radius);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, circular_fingerprint(m_, kind, radius)).first;
    return it->second;
  }

 private:
  const MolGraph& m_;
  std::map<std::pair<int, int>, Fingerprint> cache_;
};

double eval_component(const TaskComponent& c, const MolGraph& m,
                      const DescriptorVector& d, FpCache& fps) {
  switch (c.source) {
    case TaskComponent::Source::Qed:
      return m.atom_count() == 0 ? 0.0 : qed(d);
    case TaskComponent::Source::SaNormalized:
      return sa_normalized(m);
    case TaskComponent::Source::Descriptor:
      return c.modifier.apply(descriptor_value(m, d, c.descriptor));
    case TaskComponent::Source::Similarity: {
      const Fingerprint& fp = fps.get(c.fp_kind, c.fp_radius);
      return c.modifier.apply(tanimoto(fp, c.target));
    }
    case TaskComponent::Source::Combo: {
      double sum = 0.0;
      for (const auto& part : c.parts) sum += eval_component(part, m, d, fps);
      double mean = c.parts.empty() ? 0.0 : sum / static_cast<double>(c.parts.size());
      return c.modifier.apply(mean);
    }
  }
  return 0.0;
}

}  // namespace

std::vector<std::string> TaskSpec::objective_names() const {
  std::vector<std::string> names;
  names.reserve(components.size());
  for (const auto& c : components) names.push_back(c.name);
  return names;
}

std::pair<FpKind, int> fingerprint_spec(const std::string& name) {
  if (name == "fcfp4") return {FpKind::Fcfp, 2};
  if (name == "fcfp6") return {FpKind::Fcfp, 3};
  if (name == "ecfp4") return {FpKind::Ecfp, 2};
  if (name == "ecfp6") return {FpKind::Ecfp, 3};
  throw std::invalid_argument("unknown fingerprint name: " + name);
}

std::vector<std::string> bundled_task_names() {
  return {"cobimetinib", "fexofenadine", "osimertinib", "pioglitazone", "ranolazine"};
}

TaskSpec parse_task_file(const std::string& path) {
  TaskSpec task;
  std::vector<TaskComponent> combos_open;  // nesting depth at most 1

  for (const std::string& line : read_table_lines(path)) {
    std::istringstream in(line);
    std::string head;
    in >> head;
    if (head == "name") {
      std::string rest;
      std::getline(in, rest);
      auto b = rest.find_first_not_of(" \t");
      task.name = b == std::string::npos ? "" : rest.substr(b);
    } else if (head == "target") {
      in >> task.target_smiles;
    } else if (head == "approximate") {
      task.approximate = true;
    } else if (head == "component" || head == "part") {
      std::string label;
      std::string source;
      if (head == "component") {
        if (!(in >> label)) throw std::invalid_argument("component without label: " + line);
      }
      if (!(in >> source)) throw std::invalid_argument("component without source: " + line);
      TaskComponent c;
      if (source == "similarity") {
        std::string fp_name;
        if (!(in >> fp_name)) throw std::invalid_argument("similarity without fingerprint: " + line);
        c = make_similarity(label, fp_name, parse_modifier(in, line));
      } else if (source == "descriptor") {
        std::string desc;
        if (!(in >> desc)) throw std::invalid_argument("descriptor without name: " + line);
        c = make_descriptor(label.empty() ? desc : label, desc, parse_modifier(in, line));
      } else if (source == "qed") {
        c.source = TaskComponent::Source::Qed;
        c.name = label.empty() ? "QED" : label;
      } else if (source == "sa_normalized") {
        c.source = TaskComponent::Source::SaNormalized;
        c.name = label.empty() ? "SA" : label;
      } else {
        throw std::invalid_argument("unknown component source '" + source + "' in: " + line);
      }
      if (head == "part") {
        if (combos_open.empty()) throw std::invalid_argument("part outside combo: " + line);
        combos_open.back().parts.push_back(std::move(c));
      } else {
        task.components.push_back(std::move(c));
      }
    } else if (head == "combo") {
      TaskComponent c;
      c.source = TaskComponent::Source::Combo;
      if (!(in >> c.name)) throw std::invalid_argument("combo without label: " + line);
      c.modifier = parse_modifier(in, line);
      combos_open.push_back(std::move(c));
    } else if (head == "end") {
      if (combos_open.empty()) throw std::invalid_argument("end without combo: " + line);
      task.components.push_back(std::move(combos_open.back()));
      combos_open.pop_back();
    } else {
      throw std::invalid_argument("unknown task directive '" + head + "' in " + path);
    }
  }
  if (!combos_open.empty()) throw std::invalid_argument("unterminated combo in " + path);
  if (task.name.empty()) throw std::invalid_argument("task file missing name: " + path);

  // Every task is scored against QED and normalized synthetic accessibility in
  // addition to its own components.
  TaskComponent sa;
  sa.source = TaskComponent::Source::SaNormalized;
  sa.name = "SA";
  task.components.insert(task.components.begin(), std::move(sa));
  TaskComponent q;
  q.source = TaskComponent::Source::Qed;
  q.name = "QED";
  task.components.insert(task.components.begin(), std::move(q));

  // Precompute target fingerprints for similarity components.
  MolGraph target;
  bool have_target = false;
  auto fill_targets = [&](auto&& self, std::vector<TaskComponent>& cs) -> void {
    for (auto& c : cs) {
      if (c.source == TaskComponent::Source::Similarity) {
        if (!have_target) {
          if (task.target_smiles.empty())
            throw std::invalid_argument("task has similarity components but no target: " + path);
          target = parse_smiles(task.target_smiles);
          have_target = true;
        }
        c.target = circular_fingerprint(target, c.fp_kind, c.fp_radius);
      }
      if (!c.parts.empty()) self(self, c.parts);
    }
  };
  fill_targets(fill_targets, task.components);
  return task;
}

TaskSpec load_task(const std::string& name_or_path) {
  std::string key = lower(name_or_path);
  for (const auto& known : bundled_task_names()) {
    if (key == known) return parse_task_file(data_path("tasks/" + known + ".task"));
  }
  if (std::filesystem::exists(name_or_path)) return parse_task_file(name_or_path);
  std::string names;
  for (const auto& n : bundled_task_names()) names += (names.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown task '" + name_or_path + "' (bundled: " + names +
                              "; or pass a task file path)");
}

std::vector<double> evaluate(const MolGraph& m, const TaskSpec& task) {
  const MolGraph* p = &m;
  MolGraph storage;
  if (!m.perceived() && m.atom_count() > 0) {
    storage = perceived_copy(m);
    p = &storage;
  }
  DescriptorVector d = compute_descriptors(*p);
  FpCache fps(*p);
  std::vector<double> out;
  out.reserve(task.components.size());
  for (const auto& c : task.components) out.push_back(eval_component(c, *p, d, fps));
  return out;
}

}  // namespace mevo

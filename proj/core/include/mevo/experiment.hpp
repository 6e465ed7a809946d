#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mevo/metrics.hpp"
#include "mevo/moea.hpp"
#include "mevo/store.hpp"

namespace mevo {

struct ExperimentPlan {
  std::vector<std::string> tasks = {"cobimetinib"};
  std::vector<Algorithm> algorithms = {Algorithm::Nsga2, Algorithm::Nsga3, Algorithm::Moead};
  std::vector<int> pop_sizes = {100};
  int generations = 200;
  int repeats = 1;
  std::uint64_t base_seed = 1;
  int running_window = 0;  // 0 -> max(2, generations / 5)
  AlgorithmConfig base;    // rates and limits shared by every run
  // Forces one duplicate policy for all algorithms; unset keeps the
  // per-algorithm defaults.
  std::optional<DuplicatePolicy> duplicate_policy;
  BubOptions bub;
  std::string corpus_path;  // empty -> bundled corpus
  std::string store_path;   // empty -> bundled compound store
};

struct RunSpec {
  std::string task;
  Algorithm algorithm = Algorithm::Nsga2;
  int pop_size = 100;
  int generations = 200;
  int repeat = 0;
};

// The sample seed deliberately ignores the algorithm: every algorithm of a
// (task, pop_size, repeat) cell evolves the same initial sample.
std::uint64_t sample_seed(const ExperimentPlan& plan, const RunSpec& spec);
std::uint64_t run_seed(const ExperimentPlan& plan, const RunSpec& spec);

std::vector<std::string> load_corpus(const std::string& path);

// Draws n corpus molecules with distinct canonical keys in seeded order and
// encodes each as a SELFIES genome.
std::vector<Genome> sample_initial(const std::vector<std::string>& corpus_smiles, int n,
                                   std::uint64_t seed);

struct RunOutput {
  RunSpec spec;
  std::uint64_t sample_seed_used = 0;
  std::uint64_t run_seed_used = 0;
  std::vector<std::string> objective_names;
  Population initial;
  Population final_population;
  Population archive;  // MOEA/D external archive; empty otherwise
  Population pareto;   // front 0 of the final population, deduplicated
  std::vector<bool> novel;  // per pareto member: absent from store and sample
  FrontHistory history;     // per-generation front objective snapshots
  std::vector<std::vector<std::string>> history_smiles;
  std::vector<double> similarity_series;
  RunningMetricResult running;
  long long evaluations = 0;
  std::size_t distinct_phenotypes = 0;
  std::string duplicate_policy;  // policy the run actually used
  double seconds = 0.0;
};

RunOutput execute_run(const ExperimentPlan& plan, const RunSpec& spec,
                      const std::vector<std::string>& corpus, const CompoundStore& store);

// Writes run.json, initial.csv, population.csv, pareto.csv, fronts.csv,
// running_metric.csv, and similarity.csv under `dir`. Headers are stable;
// see the README for the column contract.
void write_run_artifacts(const RunOutput& run, const std::string& dir);

// Reads fronts.csv back into a history (inverse of write_run_artifacts).
FrontHistory read_fronts_csv(const std::string& path,
                             std::vector<std::vector<std::string>>* smiles_out = nullptr);

// Executes the full plan grid and writes per-cell comparison.csv plus a
// plan-level summary.csv.
void run_experiment(const ExperimentPlan& plan, const std::string& out_dir);

}  // namespace mevo

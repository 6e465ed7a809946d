#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mevo/fingerprint.hpp"
#include "mevo/rng.hpp"
#include "mevo/selfies.hpp"
#include "mevo/task.hpp"

namespace mevo {

// ---------------------------------------------------------------------------
// Non-dominated sorting and crowding (maximization throughout).

// a dominates b iff a >= b component-wise and a > b in at least one component.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Returns fronts of indices into `objectives`; front 0 is the non-dominated
// set, front k+1 is non-dominated once fronts 0..k are removed.
std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives);

// Crowding distance within one front. Boundary solutions per objective get
// +inf; zero-span objectives contribute nothing.
std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front);

// ---------------------------------------------------------------------------
// Reference directions: n points on the unit simplex in R^m spread by
// minimizing Riesz s-energy. Per-objective extreme points are pinned.
std::vector<std::vector<double>> riesz_reference_directions(int m, int n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Variation operators on SELFIES genomes.

// One-point crossover with independent cut points; children are truncated to
// max_len symbols. Cut at 0 or at the end reproduces a parent.
std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b, Rng& rng,
                                              int max_len);

// With probability p_m applies one edit: insert, delete, or substitute a
// symbol drawn uniformly from `alphabet`. Deleting from a single-symbol
// genome substitutes instead; inserting into a full genome (>= max_len)
// falls back to substitution.
Genome mutate(const Genome& g, Rng& rng, const std::vector<std::string>& alphabet, double p_m,
              int max_len);

// ---------------------------------------------------------------------------
// Engine.

enum class Algorithm { Nsga2, Nsga3, Moead };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

enum class DuplicatePolicy { Phenotype, GenomeString, None };

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::Nsga2;
  int pop_size = 100;
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = 0.8;
  int max_genome_length = 100;
  std::uint64_t rng_seed = 1;
  // Duplicate handling during offspring admission. NSGA-II rejects compounds
  // already present by canonical key; NSGA-III rejects repeated genome
  // strings (different strings may still encode the same compound); MOEA/D
  // admits everything and relies on its similarity gate.
  DuplicatePolicy duplicate_policy = DuplicatePolicy::Phenotype;
  int duplicate_retry_budget = 10;
  // MOEA/D parameters.
  int neighborhood_size = 0;  // 0 -> min(pop_size, 20)
  double replacement_similarity_threshold = 0.95;

  // Sets `algorithm` and its per-algorithm duplicate policy, leaving sizes,
  // rates, and seeds untouched.
  void apply_defaults(Algorithm a);
};

struct Individual {
  Genome genome;
  std::string key;     // canonical phenotype key ("" for the empty molecule)
  std::string smiles;  // canonical SMILES of the decoded phenotype
  std::vector<double> objectives;
  int rank = 0;
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

// Decodes, canonicalizes, and scores genomes, memoizing by canonical key so
// repeated phenotypes are evaluated once per run.
class Evaluator {
 public:
  explicit Evaluator(const TaskSpec& task);

  const TaskSpec& task() const { return task_; }

  // Fills key/smiles/objectives for a genome.
  Individual realize(const Genome& g);

  // Fingerprint used by MOEA/D's similarity gate, memoized by key.
  const Fingerprint& gate_fingerprint(const Individual& ind);

  std::size_t distinct_phenotypes() const { return scores_.size(); }

 private:
  struct Scored {
    std::string smiles;
    std::vector<double> objectives;
  };
  TaskSpec task_;
  std::map<std::string, Scored> scores_;
  std::map<std::string, Fingerprint> gate_fps_;
  std::map<std::string, MolGraph> mols_;
};

class Engine {
 public:
  Engine(const TaskSpec& task, const AlgorithmConfig& cfg, const std::vector<Genome>& initial,
         std::vector<std::string> alphabet = selfies_alphabet());

  void step();  // advances one generation
  void run();   // steps through cfg.generations

  int generation() const { return generation_; }
  const AlgorithmConfig& config() const { return cfg_; }
  const Population& population() const { return pop_; }
  // MOEA/D external archive (empty for the NSGA variants).
  const Population& archive() const { return archive_; }
  // Non-dominated members of the current population, deduplicated by
  // canonical key.
  Population pareto_set() const;

  Evaluator& evaluator() { return eval_; }
  long long evaluations() const { return evaluations_; }
  const std::vector<std::vector<double>>& reference_directions() const { return dirs_; }

 private:
  void init_population(const std::vector<Genome>& initial);
  Individual realize(const Genome& g);
  Genome vary(const Genome& a, const Genome& b);
  void assign_rank_crowding(Population& pop) const;

  void step_nsga2();
  void step_nsga3();
  void step_moead();

  std::vector<Individual> make_offspring_nsga(int count);
  const Individual& tournament();
  void dedup_pool(Population& pool) const;
  Population environmental_nsga2(Population pool) const;
  Population environmental_nsga3(Population pool);
  void archive_insert(const Individual& ind);

  TaskSpec task_;
  AlgorithmConfig cfg_;
  Evaluator eval_;
  Rng rng_;
  std::vector<std::string> alphabet_;
  Population pop_;
  Population archive_;
  int generation_ = 0;
  long long evaluations_ = 0;
  // NSGA-III / MOEA/D reference directions and MOEA/D state.
  std::vector<std::vector<double>> dirs_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<double> ideal_;
};

}  // namespace mevo

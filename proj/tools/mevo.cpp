// Command line front end: subset building, sampling, evolution runs, metric
// recomputation, compound appraisal, and SA fragment table generation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mevo/appraise.hpp"
#include "mevo/data.hpp"
#include "mevo/experiment.hpp"
#include "mevo/filter.hpp"
#include "mevo/sascore.hpp"
#include "mevo/molgraph.hpp"
#include "mevo/store.hpp"

namespace fs = std::filesystem;
using namespace mevo;

namespace {

struct RunOptions {
  std::string task = "cobimetinib";
  std::string algorithm = "all";
  std::vector<int> pop_sizes = {100};
  int generations = 200;
  int repeats = 1;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string corpus;
  std::string store;
  std::string config;
};

void apply_config_file(ExperimentPlan& plan, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("crossover_rate")) plan.base.crossover_rate = j["crossover_rate"].get<double>();
  if (j.contains("mutation_rate")) plan.base.mutation_rate = j["mutation_rate"].get<double>();
  if (j.contains("max_genome_length"))
    plan.base.max_genome_length = j["max_genome_length"].get<int>();
  if (j.contains("duplicate_retry_budget"))
    plan.base.duplicate_retry_budget = j["duplicate_retry_budget"].get<int>();
  if (j.contains("neighborhood_size"))
    plan.base.neighborhood_size = j["neighborhood_size"].get<int>();
  if (j.contains("replacement_similarity_threshold"))
    plan.base.replacement_similarity_threshold =
        j["replacement_similarity_threshold"].get<double>();
  if (j.contains("running_window")) plan.running_window = j["running_window"].get<int>();
  if (j.contains("bub_gamma")) plan.bub.gamma = j["bub_gamma"].get<int>();
  if (j.contains("bub_weighted")) plan.bub.weighted = j["bub_weighted"].get<bool>();
  if (j.contains("duplicate_policy")) {
    const std::string p = j["duplicate_policy"].get<std::string>();
    if (p == "phenotype") plan.duplicate_policy = DuplicatePolicy::Phenotype;
    else if (p == "genome") plan.duplicate_policy = DuplicatePolicy::GenomeString;
    else if (p == "none") plan.duplicate_policy = DuplicatePolicy::None;
    else throw std::runtime_error("config: unknown duplicate_policy '" + p + "'");
  }
}

int cmd_subset_build(const std::vector<std::string>& inputs, const std::string& out_path,
                     const std::string& store_path, FilterConfig fcfg) {
  FilterChain chain(std::move(fcfg));
  CompoundStore store;
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write corpus: " + out_path);
  out << "# canonical_smiles<TAB>source_id\n";

  std::map<std::string, long long> rejected;
  long long total = 0, kept = 0, duplicates = 0;
  for (const auto& input : inputs) {
    long long line_no = 0;
    for (const std::string& line : read_table_lines(input)) {
      ++line_no;
      ++total;
      auto tab = line.find('\t');
      std::string smiles = tab == std::string::npos ? line : line.substr(0, tab);
      MolGraph m;
      try {
        m = parse_smiles(smiles);
      } catch (const std::exception&) {
        ++rejected["parse_error"];
        continue;
      }
      FilterDecision decision = chain.check(m);
      if (!decision.pass) {
        ++rejected[decision.reason];
        continue;
      }
      std::string key = canonical_key(m);
      std::string source = fs::path(input).filename().string() + ":" + std::to_string(line_no);
      if (!store.add(key, source)) {
        ++duplicates;
        continue;
      }
      out << key << '\t' << source << '\n';
      ++kept;
    }
  }
  store.save(store_path);

  std::cout << "subset: kept " << kept << " of " << total << " (" << duplicates
            << " duplicates)\n";
  for (const auto& [reason, count] : rejected)
    std::cout << "  rejected " << reason << ": " << count << '\n';
  return 0;
}

int cmd_sample(const std::string& corpus_path, int n, std::uint64_t seed,
               const std::string& out_path) {
  auto corpus = load_corpus(corpus_path);
  auto genomes = sample_initial(corpus, n, seed);
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sample: " + out_path);
  out << "# seed: " << seed << "\n";
  out << "smiles,selfies\n";
  for (const auto& g : genomes) {
    MolGraph m = decode_selfies(g);
    out << canonical_key(m) << ',' << join_selfies(g) << '\n';
  }
  std::cout << "sample: wrote " << genomes.size() << " compounds to " << out_path << '\n';
  return 0;
}

int cmd_run(const RunOptions& opt) {
  ExperimentPlan plan;
  plan.tasks = {opt.task};
  if (opt.algorithm == "all") {
    plan.algorithms = {Algorithm::Nsga2, Algorithm::Nsga3, Algorithm::Moead};
  } else {
    plan.algorithms = {algorithm_from_name(opt.algorithm)};
  }
  plan.pop_sizes = opt.pop_sizes;
  plan.generations = opt.generations;
  plan.repeats = opt.repeats;
  plan.base_seed = opt.seed;
  plan.corpus_path = opt.corpus;
  plan.store_path = opt.store;
  if (!opt.config.empty()) apply_config_file(plan, opt.config);
  run_experiment(plan, opt.out);
  std::cout << "run: artifacts in " << opt.out << '\n';
  return 0;
}

int cmd_metrics(const std::string& run_dir, int window_override, int bub_gamma,
                bool bub_unweighted) {
  std::vector<std::vector<std::string>> smiles_history;
  FrontHistory history = read_fronts_csv(run_dir + "/fronts.csv", &smiles_history);

  nlohmann::json meta;
  {
    std::ifstream in(run_dir + "/run.json");
    if (!in) throw std::runtime_error("cannot read " + run_dir + "/run.json");
    in >> meta;
  }
  int generations = meta["generations"].get<int>();
  int window = window_override > 0 ? window_override : std::max(2, generations / 5);

  RunOutput shell;
  shell.spec.task = meta["task"].get<std::string>();
  shell.spec.algorithm = algorithm_from_name(meta["algorithm"].get<std::string>());
  shell.spec.pop_size = meta["pop_size"].get<int>();
  shell.spec.generations = generations;
  shell.spec.repeat = meta["repeat"].get<int>();
  shell.sample_seed_used = meta["sample_seed"].get<std::uint64_t>();
  shell.run_seed_used = meta["run_seed"].get<std::uint64_t>();
  shell.history = history;

  shell.running = running_metric(history, window);

  BubOptions bub;
  bub.gamma = bub_gamma;
  bub.weighted = !bub_unweighted;
  for (const auto& gen_smiles : smiles_history) {
    std::vector<Fingerprint> fps;
    fps.reserve(gen_smiles.size());
    for (const auto& s : gen_smiles) {
      if (s.empty()) {
        MolGraph empty;
        fps.push_back(circular_fingerprint(empty, FpKind::Ecfp, 3));
      } else {
        fps.push_back(ecfp6(parse_smiles(s)));
      }
    }
    shell.similarity_series.push_back(extended_bub(fps, bub));
  }

  // Rewrite just the two derived artifacts.
  {
    std::ofstream out(run_dir + "/running_metric.csv", std::ios::trunc);
    out << "# task: " << shell.spec.task << '\n';
    out << "# algorithm: " << algorithm_name(shell.spec.algorithm) << '\n';
    out << "# pop_size: " << shell.spec.pop_size << '\n';
    out << "# generations: " << shell.spec.generations << '\n';
    out << "# repeat: " << shell.spec.repeat << '\n';
    out << "# sample_seed: " << shell.sample_seed_used << '\n';
    out << "# run_seed: " << shell.run_seed_used << '\n';
    out << "# window: " << shell.running.window << '\n';
    out << "checkpoint,generation,igd,delta\n";
    char buf[64];
    for (const auto& win : shell.running.windows) {
      for (std::size_t i = 0; i < win.generations.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", win.igd_values[i]);
        out << win.checkpoint << ',' << win.generations[i] << ',' << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.12g", win.delta);
        out << buf << '\n';
      }
    }
  }
  {
    std::ofstream out(run_dir + "/similarity.csv", std::ios::trunc);
    out << "# task: " << shell.spec.task << '\n';
    out << "# algorithm: " << algorithm_name(shell.spec.algorithm) << '\n';
    out << "# pop_size: " << shell.spec.pop_size << '\n';
    out << "# generations: " << shell.spec.generations << '\n';
    out << "# repeat: " << shell.spec.repeat << '\n';
    out << "# sample_seed: " << shell.sample_seed_used << '\n';
    out << "# run_seed: " << shell.run_seed_used << '\n';
    out << "generation,front_size,similarity\n";
    char buf[64];
    for (std::size_t g = 0; g < shell.similarity_series.size(); ++g) {
      std::snprintf(buf, sizeof(buf), "%.12g", shell.similarity_series[g]);
      out << (g + 1) << ',' << shell.history[g].size() << ',' << buf << '\n';
    }
  }
  std::cout << "metrics: recomputed running_metric.csv and similarity.csv in " << run_dir
            << '\n';
  return 0;
}

int cmd_appraise(const std::string& pareto_csv, const std::string& store_path,
                 const std::string& out_csv) {
  CompoundStore store =
      CompoundStore::load(store_path.empty() ? data_path("corpus_index.tsv") : store_path);
  AppraiseSummary s = appraise_file(pareto_csv, store, out_csv);
  std::cout << "appraise: " << s.total << " compounds\n"
            << "  lipinski_pass: " << s.lipinski_pass << '\n'
            << "  alert_free: " << s.alert_free << '\n'
            << "  novel: " << s.novel << '\n'
            << "  novel_and_lipinski: " << s.novel_lipinski_pass << '\n'
            << "  report: " << out_csv << '\n';
  return 0;
}

int cmd_satable(const std::string& corpus_path, const std::string& out_path) {
  auto corpus = load_corpus(corpus_path);
  std::vector<MolGraph> mols;
  mols.reserve(corpus.size());
  for (const auto& smiles : corpus) {
    try {
      mols.push_back(parse_smiles(smiles));
    } catch (const std::exception& e) {
      log_warn("satable: skipping '" + smiles + "': " + e.what());
    }
  }
  SaFragmentTable table = build_sa_table(mols);
  write_sa_table(table, out_path);
  std::cout << "satable: " << table.size() << " fragment scores from " << mols.size()
            << " molecules -> " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular multi-objective evolutionary optimization"};
  app.require_subcommand(1);

  // subset build
  auto* subset = app.add_subcommand("subset", "Working-subset management");
  subset->require_subcommand(1);
  auto* build = subset->add_subcommand("build", "Filter raw SMILES into the working subset");
  std::vector<std::string> inputs;
  std::string corpus_out = "corpus.smi";
  std::string store_out = "corpus_index.tsv";
  FilterConfig fcfg;
  build->add_option("--input", inputs, "Raw SMILES files")->required()->expected(-1);
  build->add_option("--out", corpus_out, "Output corpus path");
  build->add_option("--store", store_out, "Output compound store path");
  build->add_option("--mw-min", fcfg.mw_min, "Lower molecular weight bound");
  build->add_option("--mw-max", fcfg.mw_max, "Upper molecular weight bound");
  build->add_option("--logp-max", fcfg.logp_max, "LogP ceiling (exclusive)");
  build->add_option("--max-ring", fcfg.max_ring_size, "Maximum ring size");
  build->add_flag("--allow-charged", fcfg.allow_charged_atoms, "Keep charged atoms");
  bool no_alerts = false;
  build->add_flag("--no-alerts", no_alerts, "Skip structural alert rejection");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw a seeded sample from the corpus");
  std::string sample_corpus;
  int sample_n = 100;
  std::uint64_t sample_seed_value = 1;
  std::string sample_out = "sample.csv";
  sample->add_option("--corpus", sample_corpus, "Corpus path (default: bundled)");
  sample->add_option("--n", sample_n, "Sample size");
  sample->add_option("--seed", sample_seed_value, "Sample seed");
  sample->add_option("--out", sample_out, "Output CSV");

  // run
  auto* run = app.add_subcommand("run", "Evolve compounds against a task");
  RunOptions ropt;
  run->add_option("--task", ropt.task, "Task name or task file path");
  run->add_option("--algorithm", ropt.algorithm, "nsga2, nsga3, moead, or all");
  run->add_option("--pop-size", ropt.pop_sizes, "Population size(s)")->expected(-1);
  run->add_option("--generations", ropt.generations, "Generations per run");
  run->add_option("--repeats", ropt.repeats, "Repeats per cell");
  run->add_option("--seed", ropt.seed, "Base seed");
  run->add_option("--out", ropt.out, "Output directory");
  run->add_option("--corpus", ropt.corpus, "Corpus path (default: bundled)");
  run->add_option("--store", ropt.store, "Compound store path (default: bundled)");
  run->add_option("--config", ropt.config, "JSON config file with engine overrides");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Recompute metrics from saved artifacts");
  std::string metrics_dir;
  int metrics_window = 0;
  int metrics_gamma = -1;
  bool metrics_unweighted = false;
  metrics->add_option("--run-dir", metrics_dir, "Run directory holding fronts.csv + run.json")
      ->required();
  metrics->add_option("--window", metrics_window, "Running-metric window override");
  metrics->add_option("--bub-gamma", metrics_gamma, "Coincidence threshold (-1: N mod 2)");
  metrics->add_flag("--bub-unweighted", metrics_unweighted, "Unweighted similarity counters");

  // appraise
  auto* appraise = app.add_subcommand("appraise", "Rule-based report for a Pareto CSV");
  std::string appraise_pareto;
  std::string appraise_store;
  std::string appraise_out = "appraise.csv";
  appraise->add_option("--pareto", appraise_pareto, "pareto.csv from a run")->required();
  appraise->add_option("--store", appraise_store, "Compound store (default: bundled)");
  appraise->add_option("--out", appraise_out, "Output CSV");

  // satable
  auto* satable = app.add_subcommand("satable", "Build the SA fragment frequency table");
  std::string satable_corpus;
  std::string satable_out = "sa_fragments.tsv";
  satable->add_option("--corpus", satable_corpus, "Corpus path (default: bundled)");
  satable->add_option("--out", satable_out, "Output table path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      fcfg.reject_alerts = !no_alerts;
      return cmd_subset_build(inputs, corpus_out, store_out, fcfg);
    }
    if (sample->parsed())
      return cmd_sample(sample_corpus.empty() ? data_path("corpus.smi") : sample_corpus,
                        sample_n, sample_seed_value, sample_out);
    if (run->parsed()) return cmd_run(ropt);
    if (metrics->parsed())
      return cmd_metrics(metrics_dir, metrics_window, metrics_gamma, metrics_unweighted);
    if (appraise->parsed()) return cmd_appraise(appraise_pareto, appraise_store, appraise_out);
    if (satable->parsed())
      return cmd_satable(satable_corpus.empty() ? data_path("corpus.smi") : satable_corpus,
                         satable_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

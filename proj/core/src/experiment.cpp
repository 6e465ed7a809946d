#include "mevo/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "mevo/data.hpp"
#include "mevo/molgraph.hpp"

namespace mevo {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else
      out += '_';
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write artifact: " + path);
  return out;
}

void write_meta(std::ofstream& out, const RunOutput& run) {
  out << "# task: " << run.spec.task << '\n';
  out << "# algorithm: " << algorithm_name(run.spec.algorithm) << '\n';
  out << "# pop_size: " << run.spec.pop_size << '\n';
  out << "# generations: " << run.spec.generations << '\n';
  out << "# repeat: " << run.spec.repeat << '\n';
  out << "# sample_seed: " << run.sample_seed_used << '\n';
  out << "# run_seed: " << run.run_seed_used << '\n';
}

std::string objective_header(const RunOutput& run) {
  std::string h;
  for (const auto& name : run.objective_names) h += "," + name;
  return h;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double sum = 0.0;
  for (double x : v) sum += (x - m) * (x - m);
  return std::sqrt(sum / static_cast<double>(v.size() - 1));
}

std::string duplicate_policy_name(DuplicatePolicy p) {
  switch (p) {
    case DuplicatePolicy::Phenotype: return "phenotype";
    case DuplicatePolicy::GenomeString: return "genome";
    case DuplicatePolicy::None: return "none";
  }
  return "phenotype";
}

}  // namespace

std::uint64_t sample_seed(const ExperimentPlan& plan, const RunSpec& spec) {
  return mix_seed(plan.base_seed, "sample|" + spec.task + "|" + std::to_string(spec.pop_size) +
                                      "|" + std::to_string(spec.repeat));
}

std::uint64_t run_seed(const ExperimentPlan& plan, const RunSpec& spec) {
  return mix_seed(plan.base_seed, "run|" + spec.task + "|" + algorithm_name(spec.algorithm) +
                                      "|" + std::to_string(spec.pop_size) + "|" +
                                      std::to_string(spec.repeat));
}

std::vector<std::string> load_corpus(const std::string& path) {
  std::vector<std::string> out;
  for (const std::string& line : read_table_lines(path)) {
    auto tab = line.find('\t');
    out.push_back(tab == std::string::npos ? line : line.substr(0, tab));
  }
  return out;
}

std::vector<Genome> sample_initial(const std::vector<std::string>& corpus_smiles, int n,
                                   std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("sample size must be positive");
  Rng rng(seed);
  std::vector<std::size_t> order(corpus_smiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  std::vector<Genome> out;
  out.reserve(static_cast<std::size_t>(n));
  std::set<std::string> keys;
  for (std::size_t i : order) {
    if (static_cast<int>(out.size()) == n) break;
    try {
      MolGraph m = parse_smiles(corpus_smiles[i]);
      if (!keys.insert(canonical_key(m)).second) continue;
      out.push_back(encode_selfies(m));
    } catch (const std::exception& e) {
      log_warn("sample: skipping corpus entry '" + corpus_smiles[i] + "': " + e.what());
    }
  }
  if (static_cast<int>(out.size()) < n)
    throw std::runtime_error("corpus holds fewer than " + std::to_string(n) +
                             " distinct usable compounds");
  return out;
}

RunOutput execute_run(const ExperimentPlan& plan, const RunSpec& spec,
                      const std::vector<std::string>& corpus, const CompoundStore& store) {
  RunOutput out;
  out.spec = spec;
  out.sample_seed_used = sample_seed(plan, spec);
  out.run_seed_used = run_seed(plan, spec);

  TaskSpec task = load_task(spec.task);
  out.objective_names = task.objective_names();

  AlgorithmConfig cfg = plan.base;
  cfg.apply_defaults(spec.algorithm);
  if (plan.duplicate_policy) cfg.duplicate_policy = *plan.duplicate_policy;
  cfg.pop_size = spec.pop_size;
  cfg.generations = spec.generations;
  cfg.rng_seed = out.run_seed_used;
  out.duplicate_policy = duplicate_policy_name(cfg.duplicate_policy);

  auto genomes = sample_initial(corpus, spec.pop_size, out.sample_seed_used);

  auto t0 = std::chrono::steady_clock::now();
  Engine engine(task, cfg, genomes);
  out.initial = engine.population();
  std::set<std::string> initial_keys;
  for (const auto& ind : out.initial) initial_keys.insert(ind.key);

  for (int g = 0; g < cfg.generations; ++g) {
    engine.step();
    Population front = engine.pareto_set();
    FrontSnapshot snap;
    std::vector<std::string> smiles;
    std::vector<Fingerprint> fps;
    snap.reserve(front.size());
    for (const auto& ind : front) {
      // Round objectives through the CSV format so metrics recomputed from
      // fronts.csv reproduce the archived running metric bit for bit.
      std::vector<double> objs;
      objs.reserve(ind.objectives.size());
      for (double v : ind.objectives) objs.push_back(std::stod(fmt(v)));
      snap.push_back(std::move(objs));
      smiles.push_back(ind.smiles);
      fps.push_back(engine.evaluator().gate_fingerprint(ind));
    }
    out.history.push_back(std::move(snap));
    out.history_smiles.push_back(std::move(smiles));
    out.similarity_series.push_back(extended_bub(fps, plan.bub));
  }

  out.final_population = engine.population();
  out.archive = engine.archive();
  out.pareto = engine.pareto_set();
  out.novel.reserve(out.pareto.size());
  for (const auto& ind : out.pareto)
    out.novel.push_back(!store.contains(ind.key) && !initial_keys.count(ind.key));

  int window = plan.running_window > 0 ? plan.running_window
                                       : std::max(2, spec.generations / 5);
  out.running = running_metric(out.history, window);
  out.evaluations = engine.evaluations();
  out.distinct_phenotypes = engine.evaluator().distinct_phenotypes();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void write_run_artifacts(const RunOutput& run, const std::string& dir) {
  fs::create_directories(dir);

  {
    nlohmann::json j;
    j["task"] = run.spec.task;
    j["algorithm"] = algorithm_name(run.spec.algorithm);
    j["pop_size"] = run.spec.pop_size;
    j["generations"] = run.spec.generations;
    j["repeat"] = run.spec.repeat;
    j["sample_seed"] = run.sample_seed_used;
    j["run_seed"] = run.run_seed_used;
    j["objectives"] = run.objective_names;
    j["evaluations"] = run.evaluations;
    j["distinct_phenotypes"] = run.distinct_phenotypes;
    j["duplicate_policy"] = run.duplicate_policy;
    j["pareto_size"] = run.pareto.size();
    j["archive_size"] = run.archive.size();
    j["seconds"] = run.seconds;
    j["data_dir"] = data_dir();
    std::ofstream out(dir + "/run.json", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + dir + "/run.json");
    out << j.dump(2) << '\n';
  }

  {
    auto out = open_csv(dir + "/initial.csv");
    write_meta(out, run);
    out << "smiles,selfies\n";
    for (const auto& ind : run.initial)
      out << ind.smiles << ',' << join_selfies(ind.genome) << '\n';
  }

  {
    auto out = open_csv(dir + "/population.csv");
    write_meta(out, run);
    out << "source,smiles,selfies,rank,crowding" << objective_header(run) << '\n';
    auto row = [&](const char* source, const Individual& ind) {
      out << source << ',' << ind.smiles << ',' << join_selfies(ind.genome) << ',' << ind.rank
          << ',' << fmt(ind.crowding);
      for (double v : ind.objectives) out << ',' << fmt(v);
      out << '\n';
    };
    for (const auto& ind : run.final_population) row("population", ind);
    for (const auto& ind : run.archive) row("archive", ind);
  }

  {
    auto out = open_csv(dir + "/pareto.csv");
    write_meta(out, run);
    out << "smiles,selfies,novel" << objective_header(run) << '\n';
    for (std::size_t i = 0; i < run.pareto.size(); ++i) {
      const auto& ind = run.pareto[i];
      out << ind.smiles << ',' << join_selfies(ind.genome) << ','
          << (run.novel[i] ? 1 : 0);
      for (double v : ind.objectives) out << ',' << fmt(v);
      out << '\n';
    }
  }

  {
    auto out = open_csv(dir + "/fronts.csv");
    write_meta(out, run);
    out << "generation,smiles" << objective_header(run) << '\n';
    for (std::size_t g = 0; g < run.history.size(); ++g) {
      for (std::size_t i = 0; i < run.history[g].size(); ++i) {
        out << (g + 1) << ',' << run.history_smiles[g][i];
        for (double v : run.history[g][i]) out << ',' << fmt(v);
        out << '\n';
      }
    }
  }

  {
    auto out = open_csv(dir + "/running_metric.csv");
    write_meta(out, run);
    out << "# window: " << run.running.window << '\n';
    out << "checkpoint,generation,igd,delta\n";
    for (const auto& win : run.running.windows) {
      for (std::size_t i = 0; i < win.generations.size(); ++i) {
        out << win.checkpoint << ',' << win.generations[i] << ',' << fmt(win.igd_values[i])
            << ',' << fmt(win.delta) << '\n';
      }
    }
  }

  {
    auto out = open_csv(dir + "/similarity.csv");
    write_meta(out, run);
    out << "generation,front_size,similarity\n";
    for (std::size_t g = 0; g < run.similarity_series.size(); ++g) {
      out << (g + 1) << ',' << run.history[g].size() << ',' << fmt(run.similarity_series[g])
          << '\n';
    }
  }
}

FrontHistory read_fronts_csv(const std::string& path,
                             std::vector<std::vector<std::string>>* smiles_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  FrontHistory history;
  if (smiles_out) smiles_out->clear();
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("generation,smiles", 0) != 0)
        throw std::runtime_error(path + ": unexpected fronts.csv header: " + line);
      header_seen = true;
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() < 3) throw std::runtime_error(path + ": short row: " + line);
    int gen = std::stoi(fields[0]);
    if (gen <= 0) throw std::runtime_error(path + ": bad generation: " + line);
    if (static_cast<std::size_t>(gen) > history.size()) {
      history.resize(static_cast<std::size_t>(gen));
      if (smiles_out) smiles_out->resize(static_cast<std::size_t>(gen));
    }
    std::vector<double> objs;
    objs.reserve(fields.size() - 2);
    for (std::size_t i = 2; i < fields.size(); ++i) objs.push_back(std::stod(fields[i]));
    history[static_cast<std::size_t>(gen - 1)].push_back(std::move(objs));
    if (smiles_out) (*smiles_out)[static_cast<std::size_t>(gen - 1)].push_back(fields[1]);
  }
  return history;
}

void run_experiment(const ExperimentPlan& plan, const std::string& out_dir) {
  auto corpus =
      load_corpus(plan.corpus_path.empty() ? data_path("corpus.smi") : plan.corpus_path);
  CompoundStore store = CompoundStore::load(
      plan.store_path.empty() ? data_path("corpus_index.tsv") : plan.store_path);
  fs::create_directories(out_dir);

  std::map<std::tuple<std::string, std::string, int, std::string>, std::vector<double>> acc;

  for (const auto& task : plan.tasks) {
    const std::string tslug = slug(task);
    for (int pop : plan.pop_sizes) {
      for (int rep = 0; rep < plan.repeats; ++rep) {
        const std::string cell =
            out_dir + "/" + tslug + "/N" + std::to_string(pop) + "_r" + std::to_string(rep);
        std::vector<FrontHistory> histories;
        std::vector<std::string> algs;
        for (Algorithm alg : plan.algorithms) {
          RunSpec spec;
          spec.task = task;
          spec.algorithm = alg;
          spec.pop_size = pop;
          spec.generations = plan.generations;
          spec.repeat = rep;
          log_info("run " + tslug + " " + algorithm_name(alg) + " N=" + std::to_string(pop) +
                   " rep=" + std::to_string(rep));
          RunOutput run = execute_run(plan, spec, corpus, store);
          write_run_artifacts(run, cell + "/" + algorithm_name(alg));
          histories.push_back(run.history);
          algs.push_back(algorithm_name(alg));

          auto key = [&](const std::string& metric) {
            return std::make_tuple(tslug, algorithm_name(alg), pop, metric);
          };
          acc[key("pareto_size")].push_back(static_cast<double>(run.pareto.size()));
          for (std::size_t j = 0; j < run.objective_names.size(); ++j) {
            double lo = 0.0, hi = 0.0, sum = 0.0;
            if (!run.pareto.empty()) {
              lo = hi = run.pareto[0].objectives[j];
              for (const auto& ind : run.pareto) {
                lo = std::min(lo, ind.objectives[j]);
                hi = std::max(hi, ind.objectives[j]);
                sum += ind.objectives[j];
              }
              sum /= static_cast<double>(run.pareto.size());
            }
            acc[key(run.objective_names[j] + "_min")].push_back(lo);
            acc[key(run.objective_names[j] + "_max")].push_back(hi);
            acc[key(run.objective_names[j] + "_avg")].push_back(sum);
          }
          if (!run.similarity_series.empty())
            acc[key("similarity_final")].push_back(run.similarity_series.back());
          if (!run.running.windows.empty()) {
            acc[key("delta_first")].push_back(run.running.windows.front().delta);
            acc[key("delta_final")].push_back(run.running.windows.back().delta);
          }
          long long novel_count = 0;
          for (bool b : run.novel) novel_count += b ? 1 : 0;
          acc[key("novel_pareto")].push_back(static_cast<double>(novel_count));
        }

        auto trajectories = cross_algorithm_running_metric(histories);
        auto out = open_csv(cell + "/comparison.csv");
        out << "# cell: " << tslug << " N" << pop << " r" << rep << '\n';
        out << "algorithm,generation,igd\n";
        for (std::size_t a = 0; a < trajectories.size(); ++a) {
          for (std::size_t g = 0; g < trajectories[a].generations.size(); ++g) {
            out << algs[a] << ',' << trajectories[a].generations[g] << ','
                << fmt(trajectories[a].igd_values[g]) << '\n';
          }
        }
      }
    }
  }

  auto out = open_csv(out_dir + "/summary.csv");
  out << "# base_seed: " << plan.base_seed << '\n';
  out << "# repeats: " << plan.repeats << '\n';
  out << "task,algorithm,pop_size,metric,mean,std\n";
  for (const auto& [key, values] : acc) {
    out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
        << std::get<3>(key) << ',' << fmt(mean_of(values)) << ',' << fmt(stddev_of(values))
        << '\n';
  }
  log_info("experiment written to " + out_dir);
}

}  // namespace mevo

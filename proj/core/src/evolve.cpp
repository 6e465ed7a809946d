#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "mevo/moea.hpp"

namespace mevo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> objectives_of(const Population& pop) {
  std::vector<std::vector<double>> objs;
  objs.reserve(pop.size());
  for (const auto& ind : pop) objs.push_back(ind.objectives);
  return objs;
}

// Solves A u = 1 by Gaussian elimination with partial pivoting; returns false
// when the system is (near) singular.
bool solve_unit_rhs(std::vector<std::vector<double>> a, std::vector<double>& u) {
  const int m = static_cast<int>(a.size());
  std::vector<double> rhs(static_cast<std::size_t>(m), 1.0);
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = col + 1; r < m; ++r) {
      double factor = a[r][col] / a[col][col];
      for (int c = col; c < m; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  u.assign(static_cast<std::size_t>(m), 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double v = rhs[r];
    for (int c = r + 1; c < m; ++c) v -= a[r][c] * u[c];
    u[r] = v / a[r][r];
    if (!std::isfinite(u[r])) return false;
  }
  return true;
}

double tchebycheff(const std::vector<double>& f, const std::vector<double>& lambda,
                   const std::vector<double>& ideal) {
  double g = -kInf;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double w = std::max(lambda[j], 1e-6);
    g = std::max(g, w * (ideal[j] - f[j]));
  }
  return g;
}

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
  std::string k;
  for (char c : name)
    if (c != '-' && c != '_' && c != '/') k += static_cast<char>(std::tolower(c));
  if (k == "nsga2" || k == "nsgaii") return Algorithm::Nsga2;
  if (k == "nsga3" || k == "nsgaiii") return Algorithm::Nsga3;
  if (k == "moead") return Algorithm::Moead;
  throw std::invalid_argument("unknown algorithm: " + name +
                              " (expected nsga2, nsga3, or moead)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Nsga2: return "nsga2";
    case Algorithm::Nsga3: return "nsga3";
    case Algorithm::Moead: return "moead";
  }
  return "nsga2";
}

void AlgorithmConfig::apply_defaults(Algorithm a) {
  algorithm = a;
  switch (a) {
    case Algorithm::Nsga2:
      duplicate_policy = DuplicatePolicy::Phenotype;
      break;
    case Algorithm::Nsga3:
      duplicate_policy = DuplicatePolicy::GenomeString;
      break;
    case Algorithm::Moead:
      duplicate_policy = DuplicatePolicy::None;
      break;
  }
}

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(const TaskSpec& task) : task_(task) {}

Individual Evaluator::realize(const Genome& g) {
  Individual ind;
  ind.genome = g;
  MolGraph m = decode_selfies(g);
  if (m.atom_count() == 0) {
    ind.objectives = evaluate(m, task_);
    return ind;
  }
  MolGraph p = perceived_copy(m);
  ind.key = write_smiles(p);  // canonical SMILES doubles as the phenotype key
  ind.smiles = ind.key;
  auto it = scores_.find(ind.key);
  if (it == scores_.end()) {
    Scored s;
    s.smiles = ind.smiles;
    s.objectives = evaluate(p, task_);
    it = scores_.emplace(ind.key, std::move(s)).first;
    mols_.emplace(ind.key, std::move(p));
  }
  ind.objectives = it->second.objectives;
  return ind;
}

const Fingerprint& Evaluator::gate_fingerprint(const Individual& ind) {
  auto it = gate_fps_.find(ind.key);
  if (it == gate_fps_.end()) {
    auto mit = mols_.find(ind.key);
    if (mit != mols_.end()) {
      it = gate_fps_.emplace(ind.key, ecfp6(mit->second)).first;
    } else {
      MolGraph empty;
      it = gate_fps_.emplace(ind.key, circular_fingerprint(empty, FpKind::Ecfp, 3)).first;
    }
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(const TaskSpec& task, const AlgorithmConfig& cfg,
               const std::vector<Genome>& initial, std::vector<std::string> alphabet)
    : task_(task), cfg_(cfg), eval_(task), rng_(cfg.rng_seed), alphabet_(std::move(alphabet)) {
  if (cfg_.pop_size < 2) throw std::invalid_argument("pop_size must be at least 2");
  if (alphabet_.empty()) throw std::invalid_argument("empty mutation alphabet");

  init_population(initial);

  if (cfg_.algorithm != Algorithm::Nsga2) {
    dirs_ = riesz_reference_directions(task_.dimensions(), cfg_.pop_size,
                                       mix_seed(cfg_.rng_seed, "refdirs"));
  }
  if (cfg_.algorithm == Algorithm::Moead) {
    int t = cfg_.neighborhood_size > 0 ? cfg_.neighborhood_size
                                       : std::min(cfg_.pop_size, 20);
    t = std::min(t, cfg_.pop_size);
    neighbors_.resize(dirs_.size());
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
      std::vector<std::pair<double, int>> by_dist;
      by_dist.reserve(dirs_.size());
      for (std::size_t j = 0; j < dirs_.size(); ++j) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dirs_[i].size(); ++k) {
          double diff = dirs_[i][k] - dirs_[j][k];
          d2 += diff * diff;
        }
        by_dist.emplace_back(d2, static_cast<int>(j));
      }
      std::sort(by_dist.begin(), by_dist.end());
      for (int k = 0; k < t; ++k) neighbors_[i].push_back(by_dist[static_cast<std::size_t>(k)].second);
    }
    ideal_.assign(static_cast<std::size_t>(task_.dimensions()), -kInf);
    for (const auto& ind : pop_)
      for (std::size_t j = 0; j < ideal_.size(); ++j)
        ideal_[j] = std::max(ideal_[j], ind.objectives[j]);
  }
}

Individual Engine::realize(const Genome& g) {
  ++evaluations_;
  return eval_.realize(g);
}

void Engine::init_population(const std::vector<Genome>& initial) {
  if (static_cast<int>(initial.size()) != cfg_.pop_size)
    throw std::invalid_argument("initial population size " + std::to_string(initial.size()) +
                                " does not match pop_size " + std::to_string(cfg_.pop_size));
  pop_.reserve(initial.size());
  std::set<std::string> seen;
  for (const auto& g : initial) {
    if (g.empty()) throw std::invalid_argument("initial genomes must be non-empty");
    Individual ind = realize(g);
    if (cfg_.duplicate_policy == DuplicatePolicy::Phenotype) {
      if (!seen.insert(ind.key).second)
        throw std::invalid_argument("initial population repeats phenotype " + ind.key);
    } else if (cfg_.duplicate_policy == DuplicatePolicy::GenomeString) {
      if (!seen.insert(join_selfies(ind.genome)).second)
        throw std::invalid_argument("initial population repeats genome " + join_selfies(ind.genome));
    }
    pop_.push_back(std::move(ind));
  }
  if (cfg_.algorithm != Algorithm::Moead) assign_rank_crowding(pop_);
}

void Engine::assign_rank_crowding(Population& pop) const {
  auto fronts = fast_nondominated_sort(objectives_of(pop));
  for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
    std::vector<std::vector<double>> fobjs;
    fobjs.reserve(fronts[fi].size());
    for (int idx : fronts[fi]) fobjs.push_back(pop[static_cast<std::size_t>(idx)].objectives);
    auto cd = crowding_distance(fobjs);
    for (std::size_t k = 0; k < fronts[fi].size(); ++k) {
      auto& ind = pop[static_cast<std::size_t>(fronts[fi][k])];
      ind.rank = static_cast<int>(fi);
      ind.crowding = cd[k];
    }
  }
}

Genome Engine::vary(const Genome& a, const Genome& b) {
  Genome child;
  if (rng_.chance(cfg_.crossover_rate)) {
    child = one_point_crossover(a, b, rng_, cfg_.max_genome_length).first;
    if (child.empty()) child = a;  // degenerate cut pair; fall back to a parent
  } else {
    child = a;
  }
  return mutate(child, rng_, alphabet_, cfg_.mutation_rate, cfg_.max_genome_length);
}

const Individual& Engine::tournament() {
  const Individual& x = pop_[rng_.index(pop_.size())];
  const Individual& y = pop_[rng_.index(pop_.size())];
  if (x.rank != y.rank) return x.rank < y.rank ? x : y;
  if (x.crowding != y.crowding) return x.crowding > y.crowding ? x : y;
  return rng_.chance(0.5) ? x : y;
}

std::vector<Individual> Engine::make_offspring_nsga(int count) {
  std::set<std::string> seen;
  auto id_of = [&](const Individual& ind) {
    return cfg_.duplicate_policy == DuplicatePolicy::Phenotype ? ind.key
                                                               : join_selfies(ind.genome);
  };
  if (cfg_.duplicate_policy != DuplicatePolicy::None)
    for (const auto& ind : pop_) seen.insert(id_of(ind));

  std::vector<Individual> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    Individual child;
    bool accepted = false;
    for (int attempt = 0; attempt <= cfg_.duplicate_retry_budget; ++attempt) {
      const Individual& pa = tournament();
      const Individual& pb = tournament();
      child = realize(vary(pa.genome, pb.genome));
      if (cfg_.duplicate_policy == DuplicatePolicy::None || !seen.count(id_of(child))) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Retry budget exhausted: salt with forced mutations and admit the
      // result; environmental selection removes any residual duplicate.
      Genome g = child.genome;
      for (int salt = 0; salt < 3; ++salt) {
        g = mutate(g, rng_, alphabet_, 1.0, cfg_.max_genome_length);
        child = realize(g);
        if (!seen.count(id_of(child))) break;
      }
    }
    if (cfg_.duplicate_policy != DuplicatePolicy::None) seen.insert(id_of(child));
    out.push_back(std::move(child));
  }
  return out;
}

void Engine::dedup_pool(Population& pool) const {
  if (cfg_.duplicate_policy == DuplicatePolicy::None) return;
  std::set<std::string> seen;
  Population out;
  out.reserve(pool.size());
  for (auto& ind : pool) {
    std::string id = cfg_.duplicate_policy == DuplicatePolicy::Phenotype
                         ? ind.key
                         : join_selfies(ind.genome);
    if (seen.insert(std::move(id)).second) out.push_back(std::move(ind));
  }
  pool = std::move(out);
}

Population Engine::environmental_nsga2(Population pool) const {
  dedup_pool(pool);
  const std::size_t n = static_cast<std::size_t>(cfg_.pop_size);
  auto fronts = fast_nondominated_sort(objectives_of(pool));
  Population next;
  next.reserve(n);
  for (const auto& front : fronts) {
    if (next.size() == n) break;
    if (next.size() + front.size() <= n) {
      for (int idx : front) next.push_back(pool[static_cast<std::size_t>(idx)]);
      continue;
    }
    // Truncate the overflowing front by descending crowding distance; ties
    // keep the earlier pool position.
    std::vector<std::vector<double>> fobjs;
    fobjs.reserve(front.size());
    for (int idx : front) fobjs.push_back(pool[static_cast<std::size_t>(idx)].objectives);
    auto cd = crowding_distance(fobjs);
    std::vector<std::size_t> order(front.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    for (std::size_t i = 0; i < order.size() && next.size() < n; ++i)
      next.push_back(pool[static_cast<std::size_t>(front[order[i]])]);
    break;
  }
  assign_rank_crowding(next);
  return next;
}

Population Engine::environmental_nsga3(Population pool) {
  dedup_pool(pool);
  const std::size_t n = static_cast<std::size_t>(cfg_.pop_size);
  auto objs = objectives_of(pool);
  auto fronts = fast_nondominated_sort(objs);
  const int m = task_.dimensions();

  std::vector<int> chosen;
  chosen.reserve(n);
  std::size_t fi = 0;
  while (fi < fronts.size() && chosen.size() + fronts[fi].size() <= n) {
    chosen.insert(chosen.end(), fronts[fi].begin(), fronts[fi].end());
    ++fi;
  }

  if (chosen.size() < n && fi < fronts.size()) {
    const std::vector<int>& last = fronts[fi];
    std::vector<int> considered = chosen;
    considered.insert(considered.end(), last.begin(), last.end());
    std::sort(considered.begin(), considered.end());

    // Ideal point and translation into minimization space.
    std::vector<double> ideal(static_cast<std::size_t>(m), -kInf);
    for (int idx : considered)
      for (int j = 0; j < m; ++j)
        ideal[static_cast<std::size_t>(j)] =
            std::max(ideal[static_cast<std::size_t>(j)], objs[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)]);
    auto translated = [&](int idx, int j) {
      return ideal[static_cast<std::size_t>(j)] - objs[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)];
    };

    // Extreme points per axis via the achievement scalarizing function.
    std::vector<int> extreme(static_cast<std::size_t>(m), considered.front());
    for (int j = 0; j < m; ++j) {
      double best = kInf;
      for (int idx : considered) {
        double asf = -kInf;
        for (int k = 0; k < m; ++k) {
          double w = (k == j) ? 1.0 : 1e-6;
          asf = std::max(asf, translated(idx, k) / w);
        }
        if (asf < best) {
          best = asf;
          extreme[static_cast<std::size_t>(j)] = idx;
        }
      }
    }

    // Intercepts of the hyperplane through the extremes; fall back to the
    // per-objective worst translated value when the system degenerates.
    std::vector<std::vector<double>> emat;
    emat.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      std::vector<double> row(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k)
        row[static_cast<std::size_t>(k)] = translated(extreme[static_cast<std::size_t>(j)], k);
      emat.push_back(std::move(row));
    }
    std::vector<double> u;
    std::vector<double> intercept(static_cast<std::size_t>(m), 1.0);
    bool solved = solve_unit_rhs(emat, u);
    for (int j = 0; j < m; ++j) {
      double a = solved && u[static_cast<std::size_t>(j)] > 1e-9
                     ? 1.0 / u[static_cast<std::size_t>(j)]
                     : -kInf;
      if (!(a > 1e-9) || !std::isfinite(a)) {
        a = 0.0;
        for (int idx : considered) a = std::max(a, translated(idx, j));
      }
      intercept[static_cast<std::size_t>(j)] = a > 1e-9 ? a : 1.0;
    }

    // Associate every considered member with its closest reference direction
    // by perpendicular distance in the normalized space.
    std::vector<std::vector<double>> unit = dirs_;
    for (auto& d : unit) {
      double norm = 0.0;
      for (double v : d) norm += v * v;
      norm = std::sqrt(std::max(norm, 1e-300));
      for (double& v : d) v /= norm;
    }
    std::vector<int> assoc(pool.size(), 0);
    std::vector<double> assoc_dist(pool.size(), 0.0);
    for (int idx : considered) {
      std::vector<double> nv(static_cast<std::size_t>(m));
      double norm2 = 0.0;
      for (int j = 0; j < m; ++j) {
        nv[static_cast<std::size_t>(j)] = translated(idx, j) / intercept[static_cast<std::size_t>(j)];
        norm2 += nv[static_cast<std::size_t>(j)] * nv[static_cast<std::size_t>(j)];
      }
      int best_dir = 0;
      double best_d2 = kInf;
      for (std::size_t d = 0; d < unit.size(); ++d) {
        double proj = 0.0;
        for (int j = 0; j < m; ++j) proj += nv[static_cast<std::size_t>(j)] * unit[d][static_cast<std::size_t>(j)];
        double d2 = norm2 - proj * proj;
        if (d2 < best_d2 - 1e-15) {
          best_d2 = d2;
          best_dir = static_cast<int>(d);
        }
      }
      assoc[static_cast<std::size_t>(idx)] = best_dir;
      assoc_dist[static_cast<std::size_t>(idx)] = std::max(best_d2, 0.0);
    }

    std::vector<int> niche_count(dirs_.size(), 0);
    for (int idx : chosen) ++niche_count[static_cast<std::size_t>(assoc[static_cast<std::size_t>(idx)])];

    std::set<int> pending(last.begin(), last.end());

    // When the splitting front is the non-dominated front itself, keep the
    // per-objective best members so the best attained value of every
    // objective survives truncation.
    if (fi == 0) {
      for (int j = 0; j < m && chosen.size() < n; ++j) {
        int best_idx = -1;
        for (int idx : last) {
          if (!pending.count(idx)) continue;
          if (best_idx < 0 ||
              objs[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)] >
                  objs[static_cast<std::size_t>(best_idx)][static_cast<std::size_t>(j)])
            best_idx = idx;
        }
        bool already_best = false;
        if (best_idx >= 0) {
          for (int idx : chosen)
            if (objs[static_cast<std::size_t>(idx)][static_cast<std::size_t>(j)] >=
                objs[static_cast<std::size_t>(best_idx)][static_cast<std::size_t>(j)]) {
              already_best = true;
              break;
            }
        }
        if (best_idx >= 0 && !already_best) {
          chosen.push_back(best_idx);
          pending.erase(best_idx);
          ++niche_count[static_cast<std::size_t>(assoc[static_cast<std::size_t>(best_idx)])];
        }
      }
    }

    // Candidate lists per direction, ordered by (distance, pool index).
    std::vector<std::vector<int>> cands(dirs_.size());
    for (int idx : last)
      if (pending.count(idx)) cands[static_cast<std::size_t>(assoc[static_cast<std::size_t>(idx)])].push_back(idx);
    for (auto& c : cands)
      std::sort(c.begin(), c.end(), [&](int a, int b) {
        double da = assoc_dist[static_cast<std::size_t>(a)];
        double db = assoc_dist[static_cast<std::size_t>(b)];
        if (da != db) return da < db;
        return a < b;
      });

    while (chosen.size() < n) {
      int best_count = std::numeric_limits<int>::max();
      std::vector<int> tied;
      for (std::size_t d = 0; d < cands.size(); ++d) {
        if (cands[d].empty()) continue;
        int c = niche_count[d];
        if (c < best_count) {
          best_count = c;
          tied.assign(1, static_cast<int>(d));
        } else if (c == best_count) {
          tied.push_back(static_cast<int>(d));
        }
      }
      if (tied.empty()) break;  // cannot happen: |last| >= remaining slots
      int dir = tied[tied.size() == 1 ? 0 : rng_.index(tied.size())];
      auto& list = cands[static_cast<std::size_t>(dir)];
      std::size_t pick = niche_count[static_cast<std::size_t>(dir)] == 0
                             ? 0
                             : rng_.index(list.size());
      chosen.push_back(list[pick]);
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(pick));
      ++niche_count[static_cast<std::size_t>(dir)];
    }
  }

  Population next;
  next.reserve(chosen.size());
  for (int idx : chosen) next.push_back(pool[static_cast<std::size_t>(idx)]);
  assign_rank_crowding(next);
  return next;
}

void Engine::step_nsga2() {
  auto offspring = make_offspring_nsga(cfg_.pop_size);
  Population pool = pop_;
  for (auto& child : offspring) pool.push_back(std::move(child));
  pop_ = environmental_nsga2(std::move(pool));
}

void Engine::step_nsga3() {
  auto offspring = make_offspring_nsga(cfg_.pop_size);
  Population pool = pop_;
  for (auto& child : offspring) pool.push_back(std::move(child));
  pop_ = environmental_nsga3(std::move(pool));
}

void Engine::archive_insert(const Individual& ind) {
  for (const auto& a : archive_)
    if (a.key == ind.key) return;
  for (const auto& a : archive_)
    if (dominates(a.objectives, ind.objectives)) return;
  archive_.erase(std::remove_if(archive_.begin(), archive_.end(),
                                [&](const Individual& a) {
                                  return dominates(ind.objectives, a.objectives);
                                }),
                 archive_.end());
  archive_.push_back(ind);
  const std::size_t n = static_cast<std::size_t>(cfg_.pop_size);
  if (archive_.size() > n) {
    auto cd = crowding_distance(objectives_of(archive_));
    std::vector<std::size_t> order(archive_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    Population kept;
    kept.reserve(n);
    order.resize(n);
    std::sort(order.begin(), order.end());  // preserve insertion order
    for (std::size_t i : order) kept.push_back(std::move(archive_[i]));
    archive_ = std::move(kept);
  }
}

void Engine::step_moead() {
  const int n = cfg_.pop_size;
  for (int i = 0; i < n; ++i) {
    const auto& b = neighbors_[static_cast<std::size_t>(i)];
    const Genome& pa = pop_[static_cast<std::size_t>(b[rng_.index(b.size())])].genome;
    const Genome& pb = pop_[static_cast<std::size_t>(b[rng_.index(b.size())])].genome;
    Individual child = realize(vary(pa, pb));

    for (std::size_t j = 0; j < ideal_.size(); ++j)
      ideal_[j] = std::max(ideal_[j], child.objectives[j]);

    // Similarity gate: the offspring may only enter a neighborhood it does
    // not already crowd.
    const Fingerprint& cf = eval_.gate_fingerprint(child);
    double max_sim = 0.0;
    for (int j : b)
      max_sim = std::max(max_sim,
                         tanimoto(cf, eval_.gate_fingerprint(pop_[static_cast<std::size_t>(j)])));
    if (max_sim <= cfg_.replacement_similarity_threshold) {
      // Replace only the worst-scalarizing neighbor the child improves on.
      int target = -1;
      double worst = -kInf;
      for (int j : b) {
        const auto& lambda = dirs_[static_cast<std::size_t>(j)];
        double gj = tchebycheff(pop_[static_cast<std::size_t>(j)].objectives, lambda, ideal_);
        double gc = tchebycheff(child.objectives, lambda, ideal_);
        if (gc < gj && gj > worst) {
          worst = gj;
          target = j;
        }
      }
      if (target >= 0) pop_[static_cast<std::size_t>(target)] = child;
    }
    archive_insert(child);
  }
}

void Engine::step() {
  switch (cfg_.algorithm) {
    case Algorithm::Nsga2: step_nsga2(); break;
    case Algorithm::Nsga3: step_nsga3(); break;
    case Algorithm::Moead: step_moead(); break;
  }
  ++generation_;
}

void Engine::run() {
  while (generation_ < cfg_.generations) step();
}

Population Engine::pareto_set() const {
  auto fronts = fast_nondominated_sort(objectives_of(pop_));
  Population out;
  if (fronts.empty()) return out;
  std::set<std::string> seen;
  for (int idx : fronts[0]) {
    const auto& ind = pop_[static_cast<std::size_t>(idx)];
    if (seen.insert(ind.key).second) out.push_back(ind);
  }
  return out;
}

}  // namespace mevo
